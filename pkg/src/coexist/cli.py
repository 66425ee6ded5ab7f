"""``coexist`` command-line tool.

Exit codes: 0 coexistent, 1 not coexistent, 2 borderline, 3 invalid Bloch
parameters, 4 not in the algebra / not a projection, 5 unreadable or invalid
input.
"""
from __future__ import annotations

import argparse
import itertools
import json
import math
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import coexistence as co
from . import families
from . import halmos as hm
from . import matrix_core as mc
from .effects import comparable, commute, ginf_condition, validate_effect
from .errors import CoexistError, NotAnEffect, NotAProjection, NotInAlgebra
from .qubit import BlochEffect, Decision, from_bloch, qubit_verdict

EXIT_BLOCH = 3
EXIT_ALGEBRA = 4
EXIT_INPUT = 5

FAMILIES = ("dim3_sum", "dim4_sandwich", "scaled_rank1", "custom_block")
CSV_COLUMNS = ("s", "t", "decision", "min_c", "ginf", "commute", "comparable")


class InputError(Exception):
    pass


# ------------------------------------------------------------------ matrix I/O

def load_matrix(path) -> np.ndarray:
    """Read a ``{"dim": n, "entries": [[re, im], ...]}`` file (row-major)."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from None
    try:
        n = int(doc["dim"])
        entries = doc["entries"]
    except (KeyError, TypeError, ValueError):
        raise InputError(f"{path}: expected keys 'dim' and 'entries'") from None
    if n < 1 or len(entries) != n * n:
        raise InputError(f"{path}: dim {n} needs {n * n} entries, got {len(entries)}")
    vals = []
    for e in entries:
        if isinstance(e, (int, float)):
            vals.append(complex(e))
        elif isinstance(e, (list, tuple)) and len(e) == 2:
            vals.append(complex(float(e[0]), float(e[1])))
        else:
            raise InputError(f"{path}: bad entry {e!r}")
    M = np.array(vals, dtype=complex).reshape(n, n)
    try:
        return mc.as_hermitian(M)
    except CoexistError as exc:
        raise InputError(f"{path}: {exc}") from None


def matrix_doc(M) -> dict:
    M = np.asarray(M, dtype=complex)
    return {"dim": int(M.shape[0]),
            "entries": [[float(z.real), float(z.imag)] for z in M.ravel()]}


def save_matrix(path, M) -> None:
    with open(path, "w") as fh:
        json.dump(matrix_doc(M), fh)
        fh.write("\n")


# ------------------------------------------------------------------ reporting

def _num(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else str(x)


def _emit(args, report: dict, lines: list[str]) -> None:
    if args.quiet:
        return
    if args.json:
        json.dump(report, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def _verdict_report(v: co.CoexistenceVerdict, joint: bool = True) -> dict:
    out = {
        "method": v.method.value,
        "decision": v.decision.value,
        "min_c": _num(v.min_c),
        "witness_theta": _num(v.witness_theta),
        "c_values": [{"theta": th, "c": c} for th, c in v.c_values],
    }
    if v.note:
        out["note"] = v.note
    if joint and v.joint_observable is not None:
        out["joint_observable"] = [matrix_doc(G) for G in v.joint_observable]
    return out


def _decomposition_report(d: hm.TwoProjectionDecomposition, basis: bool = False) -> dict:
    out = {
        "dim": d.dim,
        "thetas": [{"theta": float(th), "multiplicity": int(m)} for th, m in d.thetas],
        "comm_split": dict(zip(("11", "10", "01", "00"), map(int, d.comm_split))),
        "swapped": bool(d.swapped),
    }
    if basis:
        out["canonical_basis"] = matrix_doc(d.canonical_basis)
    return out


# ------------------------------------------------------------------ commands

def cmd_qubit_check(args) -> int:
    try:
        A = BlochEffect(args.a[0], tuple(args.a[1:]))
        B = BlochEffect(args.b[0], tuple(args.b[1:]))
    except NotAnEffect as exc:
        print(f"invalid Bloch parameters: {exc}", file=sys.stderr)
        return EXIT_BLOCH
    decision, c = qubit_verdict(A, B, args.tol)
    report = {"c": c, "decision": decision.value}
    lines = [f"c = {c:.12g}", f"decision: {decision.value}"]
    if decision is Decision.COEXISTENT:
        Am, Bm = from_bloch(A), from_bloch(B)
        res = co.feasibility_oracle(Am, Bm, args.tol_feas, args.max_iter)
        if res.feasible:
            joint = co.joint_observable_from(res.G, Am, Bm)
            report["joint_observable"] = [matrix_doc(G) for G in joint]
            lines.append("joint observable:")
            for k, G in enumerate(joint, 1):
                lines.append(f"  G{k} = {np.array2string(G, precision=6, suppress_small=True)}")
    _emit(args, report, lines)
    return decision.exit_code


def cmd_check(args) -> int:
    A, B = load_matrix(args.A), load_matrix(args.B)
    if (args.p1 is None) != (args.p2 is None):
        raise InputError("--p1 and --p2 go together")
    P1 = load_matrix(args.p1) if args.p1 else None
    P2 = load_matrix(args.p2) if args.p2 else None
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        v, d = co.check_coexistence(A, B, P1, P2, tol=args.tol, tol_feas=args.tol_feas,
                                    max_iter=args.max_iter)
    for w in caught:
        if not args.quiet:
            print(f"warning: {w.message}", file=sys.stderr)
    report = _verdict_report(v)
    if d is not None:
        report["thetas"] = [{"theta": float(th), "multiplicity": int(m)} for th, m in d.thetas]
    lines = [f"method: {v.method.value}", f"decision: {v.decision.value}"]
    if v.min_c is not None:
        lines.append(f"min c = {v.min_c:.12g} at theta = {v.witness_theta:.12g}")
    for th, c in v.c_values:
        lines.append(f"  theta = {th:.12g}  c = {c:.12g}")
    if args.oracle:
        res = co.feasibility_oracle(A, B, args.tol_feas, args.max_iter)
        report["oracle"] = {"feasible": res.feasible, "residual": res.residual,
                            "iterations": res.iterations, "status": res.status}
        lines.append(f"oracle: feasible={res.feasible} residual={res.residual:.3e} "
                     f"iterations={res.iterations}")
    _emit(args, report, lines)
    return v.decision.exit_code


def cmd_decompose(args) -> int:
    P1, P2 = load_matrix(args.P1), load_matrix(args.P2)
    d = hm.decompose(P1, P2)
    report = _decomposition_report(d, args.basis)
    report["residuals"] = hm.canonical_residuals(P1, P2, d)
    lines = [f"dim {d.dim}, swapped={d.swapped}"]
    lines += [f"theta = {th:.12g}  (multiplicity {m})" for th, m in d.thetas]
    lines.append("commutation split (11, 10, 01, 00): " + " ".join(map(str, d.comm_split)))
    lines.append("residuals: " + ", ".join(f"{k}={v:.2e}" for k, v in report["residuals"].items()))
    _emit(args, report, lines)
    return 0


def cmd_oracle(args) -> int:
    A, B = load_matrix(args.A), load_matrix(args.B)
    A, B = validate_effect(A).matrix, validate_effect(B).matrix
    res = co.feasibility_oracle(A, B, args.tol_feas, args.max_iter)
    report = {"feasible": res.feasible, "iterations": res.iterations,
              "residual": res.residual, "status": res.status}
    if args.emit_g and res.G is not None:
        report["G"] = matrix_doc(res.G)
    lines = [f"feasible: {res.feasible}", f"status: {res.status}",
             f"residual: {res.residual:.3e}", f"iterations: {res.iterations}"]
    _emit(args, report, lines)
    return 0 if res.feasible else 1


def _spectral_projections(M, tol=hm.DEFAULT_TOL) -> list[np.ndarray]:
    sd = mc.eig_hermitian(M)
    out = []
    for idx in sd.clusters(tol):
        V = sd.eigenvectors[:, idx]
        out.append(V @ V.conj().T)
    return out


def cmd_membership(args) -> int:
    mats = [load_matrix(p) for p in args.effects]
    if (args.p1 is None) != (args.p2 is None):
        raise InputError("--p1 and --p2 go together")
    if args.p1:
        candidates = [(load_matrix(args.p1), load_matrix(args.p2))]
    else:
        pools = [_spectral_projections(M) for M in mats]
        if len(pools) == 1:
            candidates = list(itertools.combinations(pools[0], 2))
        else:
            candidates = list(itertools.product(*pools))
    tried = 0
    for P1, P2 in candidates:
        d = hm.decompose(P1, P2)
        tried += 1
        if all(hm.in_algebra(M, d) for M in mats):
            report = {"member": True, "candidates_tried": tried,
                      "P1": matrix_doc(P1), "P2": matrix_doc(P2),
                      "decomposition": _decomposition_report(d)}
            _emit(args, report, [f"member: yes (pair {tried} of {len(candidates)})"])
            return 0
    report = {"member": False, "candidates_tried": tried}
    _emit(args, report, [f"member: no ({tried} candidate pairs tried)"])
    return EXIT_ALGEBRA


# ------------------------------------------------------------------ region

def _linspace(rng_spec) -> np.ndarray:
    lo, hi, steps = float(rng_spec[0]), float(rng_spec[1]), int(rng_spec[2])
    if steps < 2:
        raise InputError("steps must be at least 2")
    return np.linspace(lo, hi, steps)


def _family_setup(args):
    """Returns (P1, P2, A0, B0, power, analytic(s, t) or None, (s_max, t_max)).

    Every family has the form ``A = s**power A0``, ``B = t**power B0``.
    """
    fam = args.family
    if fam == "dim3_sum":
        P1, P2 = families.dim3_projections()
        A0, B0 = families.dim3_effects(1.0, 1.0)
        return (P1, P2, A0, B0, 1, families.dim3_boundary,
                (families.DIM3_S_MAX, families.DIM3_T_MAX))
    if fam == "dim4_sandwich":
        P1, P2 = families.dim4_projections()
        A0, B0 = families.dim4_effects(1.0, 1.0)
        return P1, P2, A0, B0, 1, families.dim4_boundary, (1.0, 1.0)
    if fam == "scaled_rank1":
        n = args.copies
        P1, P2 = families.copies_pair(args.overlap2, n)

        def analytic(s, t):
            return families.copies_boundary(s, t, args.overlap2, n)

        return P1, P2, P1, P2, n, analytic, (1.0, 1.0)
    if args.p1 is None or args.p2 is None or args.a is None or args.b is None:
        raise InputError("custom_block needs --p1, --p2, --a and --b")
    P1, P2 = load_matrix(args.p1), load_matrix(args.p2)
    A0, B0 = load_matrix(args.a), load_matrix(args.b)
    return P1, P2, A0, B0, 1, None, (1.0, 1.0)


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if x is None:
        return ""
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.12g}"


def _region_row(job):
    s_val, t_vals, args = job
    P1, P2, A0, B0, power, analytic, _ = _family_setup(args)
    d = hm.decompose(P1, P2)
    scan = co.scaling_scan(A0, B0, d, [s_val], t_vals, power, args.tol)
    rows = []
    for j, t_val in enumerate(t_vals):
        A, B = s_val**power * A0, t_val**power * B0
        min_c = scan.min_c[0, j]
        row = [s_val, t_val, scan.decisions[0, j].value, None if np.isnan(min_c) else min_c,
               ginf_condition(A, B, args.tol), commute(A, B, args.tol), comparable(A, B, args.tol)]
        if analytic is not None:
            row.append(float(analytic(s_val, t_val)))
        rows.append(",".join(x if isinstance(x, str) else _fmt(x) for x in row))
    return rows


def cmd_region(args) -> int:
    P1, P2, A0, B0, power, analytic, (s_max, t_max) = _family_setup(args)
    s_spec = args.s_range or (0.0, s_max, 101)
    t_spec = args.t_range or (0.0, t_max, 101)
    s_vals, t_vals = _linspace(s_spec), _linspace(t_spec)
    for name, vals, top in (("s", s_vals, s_max), ("t", t_vals, t_max)):
        if vals.min() < 0.0 or vals.max() > top + 1e-12:
            raise InputError(f"{name} range must lie in [0, {top:.12g}] for {args.family}")
    header = list(CSV_COLUMNS) + (["analytic"] if analytic is not None else [])
    jobs = [(float(s), [float(t) for t in t_vals], args) for s in s_vals]
    if args.workers and args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as ex:
            chunks = list(ex.map(_region_row, jobs))
    else:
        chunks = [_region_row(j) for j in jobs]
    text = ",".join(header) + "\n" + "".join(r + "\n" for chunk in chunks for r in chunk)
    if args.output in (None, "-"):
        if not args.quiet:
            sys.stdout.write(text)
    else:
        with open(args.output, "w", newline="\n") as fh:
            fh.write(text)
    if args.emit_fixtures:
        out = Path(args.emit_fixtures)
        out.mkdir(parents=True, exist_ok=True)
        s_mid, t_mid = float(np.median(s_vals)), float(np.median(t_vals))
        A, B = s_mid**power * A0, t_mid**power * B0
        for name, M in (("P1", P1), ("P2", P2), ("A", A), ("B", B)):
            save_matrix(out / f"{name}.json", M)
        if not args.quiet:
            print(f"fixtures (s={s_mid:.12g}, t={t_mid:.12g}) written to {out}", file=sys.stderr)
    return 0


# ------------------------------------------------------------------ parser

def _common(p: argparse.ArgumentParser, top: bool) -> None:
    sup = {} if top else {"default": argparse.SUPPRESS}
    p.add_argument("--tol", type=float, help="decision tolerance (default 1e-9)",
                   **({"default": 1e-9} if top else sup))
    p.add_argument("--tol-feas", type=float, help="oracle feasibility tolerance (default 1e-10)",
                   **({"default": co.TOL_FEAS} if top else sup))
    p.add_argument("--max-iter", type=int, help="oracle sweep limit (default 10000)",
                   **({"default": co.MAX_ITER} if top else sup))
    p.add_argument("--json", action="store_true", help="JSON report on stdout",
                   **({} if top else sup))
    p.add_argument("--quiet", action="store_true", help="no output, exit code only",
                   **({} if top else sup))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="coexist", description=__doc__.splitlines()[0])
    _common(ap, top=True)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qubit-check", help="c-function test for two qubit effects in Bloch form")
    _common(p, top=False)
    p.add_argument("--a", nargs=4, type=float, required=True, metavar=("ALPHA", "AX", "AY", "AZ"))
    p.add_argument("--b", nargs=4, type=float, required=True, metavar=("BETA", "BX", "BY", "BZ"))
    p.set_defaults(func=cmd_qubit_check)

    p = sub.add_parser("check", help="coexistence of two effects (blockwise when possible)")
    _common(p, top=False)
    p.add_argument("A")
    p.add_argument("B")
    p.add_argument("--p1")
    p.add_argument("--p2")
    p.add_argument("--oracle", action="store_true", help="also run the feasibility oracle")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decompose", help="canonical angles of two projections")
    _common(p, top=False)
    p.add_argument("P1")
    p.add_argument("P2")
    p.add_argument("--basis", action="store_true", help="include the canonical basis")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("region", help="scan an (s, t) grid and write CSV")
    _common(p, top=False)
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--s-range", nargs=3, type=float, metavar=("LO", "HI", "STEPS"))
    p.add_argument("--t-range", nargs=3, type=float, metavar=("LO", "HI", "STEPS"))
    p.add_argument("--output", "-o", help="CSV path ('-' for stdout)")
    p.add_argument("--overlap2", type=float, default=0.5, help="|<psi1|psi2>|^2 for scaled_rank1")
    p.add_argument("--copies", type=int, default=1, help="tensor copies for scaled_rank1")
    p.add_argument("--p1")
    p.add_argument("--p2")
    p.add_argument("--a", help="custom_block: A_s = s * A")
    p.add_argument("--b", help="custom_block: B_t = t * B")
    p.add_argument("--workers", type=int, default=0)
    p.add_argument("--emit-fixtures", metavar="DIR")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("oracle", help="convex feasibility test for C(A, B)")
    _common(p, top=False)
    p.add_argument("A")
    p.add_argument("B")
    p.add_argument("--emit-g", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("membership", help="test membership in a two-projection algebra")
    _common(p, top=False)
    p.add_argument("effects", nargs="+", help="one or two matrix files")
    p.add_argument("--p1")
    p.add_argument("--p2")
    p.set_defaults(func=cmd_membership)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "membership" and len(args.effects) > 2:
        print("membership takes one or two matrices", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (NotInAlgebra, NotAProjection) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ALGEBRA
    except (InputError, CoexistError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
