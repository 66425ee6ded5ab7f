"""Compiled vs pure-Python Dykstra kernels on random effect pairs.

    python benchmarks/bench_oracle.py [--pairs 40] [--dims 2 4 8]
"""
import argparse
import time

import numpy as np

from coexist import _fallback
from coexist.coexistence import MAX_ITER, STALL_SWEEPS, STALL_TOL, TOL_FEAS
from coexist.sampling import random_effect

try:
    from coexist import _kernels
except ImportError:
    _kernels = None


def run(kernel, pairs):
    sweeps = 0
    t0 = time.perf_counter()
    for A, B in pairs:
        sweeps += kernel(A, B, TOL_FEAS, MAX_ITER, STALL_TOL, STALL_SWEEPS)[3]
    return time.perf_counter() - t0, sweeps


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=40)
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 4, 8])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _kernels is None:
        raise SystemExit("compiled kernels not built; run pip install -e . first")

    rng = np.random.default_rng(args.seed)
    print(f"{'dim':>4} {'pairs':>6} {'sweeps':>8} {'python s':>10} {'cython s':>10} "
          f"{'us/sweep':>9} {'speedup':>8}")
    for n in args.dims:
        # 2x2 problems settle in a few sweeps, so use more of them
        count = args.pairs * (50 if n == 2 else 1)
        pairs = [(random_effect(n, rng), random_effect(n, rng)) for _ in range(count)]
        tp, sp = run(_fallback.dykstra, pairs)
        tc, sc = run(_kernels.dykstra, pairs)
        assert sp == sc, "backends took different sweep counts"
        print(f"{n:>4} {count:>6} {sc:>8} {tp:>10.3f} {tc:>10.3f} {1e6 * tc / sc:>9.2f} "
              f"{tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
