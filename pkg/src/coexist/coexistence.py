"""Coexistence decisions.

Two effects ``A, B`` coexist iff the convex set

    C(A, B) = {G : 0 <= G <= A,  A + B - 1 <= G <= B}

is nonempty; any ``G`` in it yields the joint observable
``(G, A - G, B - G, 1 - A - B + G)``. For effects in a two-projection algebra
the question reduces to the qubit criterion on every 2x2 block
(:func:`coexistent_in_algebra`). :func:`feasibility_oracle` decides membership
in ``C(A, B)`` directly by cyclic Dykstra projections and serves as the
independent check.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from . import _backend
from . import matrix_core as mc
from .effects import _matrix, commute, ginf_condition, is_projection, validate_effect
from .errors import (
    DimensionMismatch,
    InvalidRange,
    NotAnEffect,
    NotAProjection,
    NotInAlgebra,
    RankViolation,
)
from .halmos import (
    DEFAULT_TOL,
    BlockFunction,
    TwoProjectionDecomposition,
    block_of,
    central_element,
    decompose,
    in_algebra,
    reconstruct,
)
from .qubit import BlochEffect, Decision, decide, qubit_verdict, to_bloch

TOL_FEAS = 1e-10
MAX_ITER = 10_000
STALL_TOL = 1e-12
STALL_SWEEPS = 50
RELAX = 1.9
GRID_N = 4097


class Method(str, enum.Enum):
    BLOCKWISE_C = "blockwise_c"
    RANK1_FASTPATH = "rank1_fastpath"
    SCALED_CENTRAL = "scaled_central"
    ORACLE = "oracle"


@dataclass(frozen=True, eq=False)
class FeasibilityResult:
    feasible: bool
    G: np.ndarray | None
    residual: float
    iterations: int
    status: str


@dataclass(frozen=True, eq=False)
class CoexistenceVerdict:
    decision: Decision
    method: Method
    min_c: float | None = None
    witness_theta: float | None = None
    joint_observable: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray] | None = None
    c_values: tuple[tuple[float, float], ...] = ()
    note: str = ""
    oracle: FeasibilityResult | None = field(default=None, repr=False)

    @property
    def coexistent(self) -> bool:
        return self.decision is Decision.COEXISTENT


# ----------------------------------------------------------------- oracle

def constraint_residuals(G, A, B) -> tuple[float, float, float, float]:
    """Violations of ``G >= 0``, ``G <= A``, ``G <= B``, ``G >= A + B - 1`` (>= 0)."""
    G, A, B = (np.asarray(X, dtype=complex) for X in (G, A, B))
    eye = np.eye(A.shape[0])
    return tuple(
        max(0.0, -float(np.linalg.eigvalsh(0.5 * (X + X.conj().T))[0]))
        for X in (G, A - G, B - G, G - A - B + eye)
    )


def feasibility_oracle(
    A,
    B,
    tol_feas: float = TOL_FEAS,
    max_iter: int = MAX_ITER,
    stall_tol: float = STALL_TOL,
    stall_sweeps: int = STALL_SWEEPS,
) -> FeasibilityResult:
    """Decide whether ``C(A, B)`` is nonempty by cyclic Dykstra projections.

    Each projection is a spectral clipping of a shifted matrix. Declares
    infeasible when the sweep-to-sweep displacement stays below ``stall_tol``
    for ``stall_sweeps`` sweeps with residual above ``10 * tol_feas``, or when
    ``max_iter`` sweeps pass without reaching ``tol_feas``.

    When one of ``A, 1 - A, B, 1 - B`` is nearly singular the feasible set is
    a thin sliver and Dykstra can still be creeping towards it after
    ``max_iter`` sweeps. In that case a second pass of over-relaxed cyclic
    projections (no correction terms) restarts from the last iterate; it only
    has to find some point of the set, which it does far faster. A run that
    exhausts both passes reports status ``"max_iter"``, which callers should
    read as inconclusive rather than as a proof of infeasibility.
    """
    a, b = _matrix(A), _matrix(B)
    if a.shape != b.shape:
        raise DimensionMismatch(f"dimensions differ: {a.shape[0]} vs {b.shape[0]}")
    if a.shape[0] == 0:
        return FeasibilityResult(True, a.copy(), 0.0, 0, "feasible")
    G, status, res, iters = _backend.dykstra(a, b, tol_feas, max_iter, stall_tol, stall_sweeps)
    if status == _backend.MAX_ITER:
        G2, status2, res2, iters2 = _backend.dykstra(
            a, b, tol_feas, max_iter, stall_tol, stall_sweeps, x0=G, relax=RELAX)
        iters += iters2
        if status2 == _backend.FEASIBLE:
            G, status, res = G2, status2, res2
    G = 0.5 * (G + G.conj().T)
    feasible = status == _backend.FEASIBLE
    label = {_backend.FEASIBLE: "feasible", _backend.STALLED: "stalled",
             _backend.MAX_ITER: "max_iter"}[status]
    return FeasibilityResult(feasible, G if feasible else None, float(res), int(iters), label)


def joint_observable_from(G, A, B) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Four-outcome observable with margins ``G1 + G2 = A`` and ``G1 + G3 = B``."""
    G, A, B = (np.asarray(X, dtype=complex) for X in (G, A, B))
    eye = np.eye(A.shape[0])
    return G, A - G, B - G, eye - A - B + G


def oracle_verdict(A, B, tol_feas: float = TOL_FEAS, max_iter: int = MAX_ITER) -> CoexistenceVerdict:
    res = feasibility_oracle(A, B, tol_feas, max_iter)
    a, b = _matrix(A), _matrix(B)
    if res.feasible:
        return CoexistenceVerdict(Decision.COEXISTENT, Method.ORACLE,
                                  joint_observable=joint_observable_from(res.G, a, b), oracle=res)
    if res.residual <= 100 * tol_feas:
        return CoexistenceVerdict(Decision.BORDERLINE, Method.ORACLE, oracle=res,
                                  note=f"residual {res.residual:.3e} within the borderline band")
    if res.status == "max_iter":
        return CoexistenceVerdict(Decision.BORDERLINE, Method.ORACLE, oracle=res,
                                  note=f"no convergence in {res.iterations} sweeps "
                                  f"(residual {res.residual:.3e})")
    return CoexistenceVerdict(Decision.NOT_COEXISTENT, Method.ORACLE, oracle=res)


# -------------------------------------------------------- blockwise criterion

def block_verdicts(bf_a: BlockFunction, bf_b: BlockFunction, tol: float | None = None):
    """Per-block ``(decision, c)`` pairs."""
    return [qubit_verdict(to_bloch(Ma), to_bloch(Mb), tol) for Ma, Mb in zip(bf_a.blocks, bf_b.blocks)]


def _combine(decisions) -> Decision:
    if Decision.NOT_COEXISTENT in decisions:
        return Decision.NOT_COEXISTENT
    if Decision.BORDERLINE in decisions:
        return Decision.BORDERLINE
    return Decision.COEXISTENT


def _rank_one_room(X: np.ndarray, u: np.ndarray) -> float:
    """Largest ``g >= 0`` with ``X - g uu* >= 0`` for a 2x2 PSD ``X`` (may be inf).

    For 2x2 matrices positivity is ``tr >= 0`` and ``det >= 0``, and both are
    affine in ``g``: ``det(X - g uu*) = det X - g u* adj(X) u``.
    """
    tr = float(np.trace(X).real)
    det = float(np.linalg.det(X).real)
    adj = np.array([[X[1, 1], -X[0, 1]], [-X[1, 0], X[0, 0]]])
    q = float(np.vdot(u, adj @ u).real)
    hi = tr
    if q > 0.0:
        hi = min(hi, det / q)
    elif det < 0.0:
        return -math.inf
    return hi


def _rank_one_joint(A: np.ndarray, B: np.ndarray) -> np.ndarray | None:
    """Joint ``G`` for 2x2 effects when ``A`` is (numerically) rank one.

    ``G <= A = a uu*`` forces ``G = g uu*``; the remaining constraints cut out
    an interval of ``g`` whose midpoint is returned.
    """
    w, V = np.linalg.eigh(A)
    a, u = float(w[1]), V[:, 1]
    if a <= 0.0:
        return np.zeros((2, 2), complex)
    one = np.eye(2)
    lo = max(0.0, a - _rank_one_room(one - B, u))
    hi = min(a, _rank_one_room(B, u))
    if lo > hi:
        return None
    return 0.5 * (lo + hi) * np.outer(u, u.conj())


def _block_joint(Ma: np.ndarray, Mb: np.ndarray, tol_feas: float, max_iter: int):
    """``(G, residual)`` for one 2x2 block, or ``(None, residual)``.

    Dykstra first; when one of ``A, A^perp, B, B^perp`` is singular the feasible
    set is thin and Dykstra may crawl, so the rank-one reduction takes over.
    """
    res = feasibility_oracle(Ma, Mb, tol_feas, max_iter)
    if res.feasible:
        return res.G, res.residual
    one = np.eye(2)
    sing = mc.TOL.effect
    # (E, F, post) solves C(E, F) and maps its G' back to a G for (A, B)
    routes = (
        (Ma, Mb, lambda G: G),
        (one - Ma, Mb, lambda G: Mb - G),
        (Mb, Ma, lambda G: G),
        (one - Mb, Ma, lambda G: Ma - G),
    )
    best = res.residual
    for E, F, post in routes:
        if np.linalg.eigvalsh(E)[0] > sing:
            continue
        Gp = _rank_one_joint(E, F)
        if Gp is None:
            continue
        G = post(Gp)
        r = max(constraint_residuals(G, Ma, Mb))
        if r <= sing:
            return G, r
        best = min(best, r)
    return None, best


def _scalar_g(a: float, b: float) -> float:
    return max(a + b - 1.0, 0.0)


def coexistent_in_algebra(
    A,
    B,
    d: TwoProjectionDecomposition,
    tol: float | None = None,
    tol_feas: float = TOL_FEAS,
    max_iter: int = MAX_ITER,
    algebra_tol: float = DEFAULT_TOL,
    build_joint: bool = True,
) -> CoexistenceVerdict:
    """Blockwise coexistence test for two effects of the algebra described by ``d``.

    Each angle block gets the three-valued qubit decision (commuting blocks
    are always coexistent); the commutation domain never obstructs.
    When coexistent, a joint observable inside the algebra is assembled from
    per-block solutions of the 2x2 problems.
    """
    a = validate_effect(A).matrix
    b = validate_effect(B).matrix
    if a.shape != (d.dim, d.dim) or b.shape != (d.dim, d.dim):
        raise DimensionMismatch("effects and decomposition have different dimensions")
    bf_a = block_of(a, d, algebra_tol)
    bf_b = block_of(b, d, algebra_tol)
    verdicts = block_verdicts(bf_a, bf_b, tol)
    cs = [c for _, c in verdicts]
    c_values = tuple(zip(d.angles.tolist(), cs))
    if cs:
        j = int(np.argmin(cs))
        min_c, witness = float(cs[j]), float(d.angles[j])
        decision = _combine([dec for dec, _ in verdicts])
    else:
        min_c, witness, decision = None, None, Decision.COEXISTENT

    if decision is not Decision.COEXISTENT or not build_joint:
        return CoexistenceVerdict(decision, Method.BLOCKWISE_C, min_c, witness, None, c_values)

    g_blocks = []
    for Ma, Mb in zip(bf_a.blocks, bf_b.blocks):
        G, residual = _block_joint(Ma, Mb, tol_feas, max_iter)
        if G is None:
            return CoexistenceVerdict(
                Decision.BORDERLINE, Method.BLOCKWISE_C, min_c, witness, None, c_values,
                note=f"per-block joint observable not reached (residual {residual:.3e})",
            )
        g_blocks.append(G)
    g_scalars = tuple(
        None if sa is None else _scalar_g(sa, sb) for sa, sb in zip(bf_a.scalars, bf_b.scalars)
    )
    G = reconstruct(BlockFunction(tuple(g_blocks), g_scalars), d)
    return CoexistenceVerdict(decision, Method.BLOCKWISE_C, min_c, witness,
                              joint_observable_from(G, a, b), c_values)


def check_coexistence(
    A,
    B,
    P1=None,
    P2=None,
    tol: float | None = None,
    tol_feas: float = TOL_FEAS,
    max_iter: int = MAX_ITER,
    algebra_tol: float = DEFAULT_TOL,
) -> tuple[CoexistenceVerdict, TwoProjectionDecomposition | None]:
    """Pick the best available route for a pair of effects.

    With ``P1, P2`` given, ``A`` and ``B`` must lie in their algebra. Without
    them, a pair of projections is decomposed directly; anything else goes to
    the raw oracle.
    """
    a = validate_effect(A).matrix
    b = validate_effect(B).matrix
    if a.shape != b.shape:
        raise DimensionMismatch(f"dimensions differ: {a.shape[0]} vs {b.shape[0]}")
    if (P1 is None) != (P2 is None):
        raise ValueError("give both projections or neither")
    if P1 is None:
        if is_projection(a) and is_projection(b):
            P1, P2 = a, b
        else:
            warnings.warn("no projection pair given and A, B are not projections; "
                          "using the feasibility oracle", stacklevel=2)
            return oracle_verdict(a, b, tol_feas, max_iter), None
    d = decompose(P1, P2, algebra_tol)
    for name, X in (("A", a), ("B", b)):
        if not in_algebra(X, d, algebra_tol):
            try:
                block_of(X, d, algebra_tol)
            except NotInAlgebra as exc:
                raise NotInAlgebra(exc.violation, f"{name}, {exc.where}") from None
    return coexistent_in_algebra(a, b, d, tol, tol_feas, max_iter, algebra_tol), d


class ScanResult(NamedTuple):
    s: np.ndarray
    t: np.ndarray
    decisions: np.ndarray  # object array of Decision, shape (len(s), len(t))
    min_c: np.ndarray  # nan where there are no angle blocks


def _raw_bloch(M: np.ndarray) -> tuple[float, tuple[float, float, float]]:
    # Bloch parameters without the effect check: A0 itself need not be an effect
    a00, a11, a01 = M[0, 0].real, M[1, 1].real, M[0, 1]
    return float(a00 + a11), (float(2.0 * a01.real), float(-2.0 * a01.imag), float(a00 - a11))


def _scaled_bloch(p, k: float) -> BlochEffect:
    alpha, a = p
    return BlochEffect(k * alpha, (k * a[0], k * a[1], k * a[2]))


def scaling_scan(
    A0,
    B0,
    d: TwoProjectionDecomposition,
    s_vals,
    t_vals,
    power: int = 1,
    tol: float | None = None,
    algebra_tol: float = DEFAULT_TOL,
) -> ScanResult:
    """Blockwise verdicts for ``A = s**power A0`` and ``B = t**power B0`` on a grid.

    Same decisions as :func:`coexistent_in_algebra` (without the joint
    observable) at every point, but the block functions of ``A0`` and ``B0``
    are extracted once and only rescaled, so a grid point costs a handful of
    2x2 evaluations.
    """
    s_vals = np.asarray(s_vals, dtype=float)
    t_vals = np.asarray(t_vals, dtype=float)
    a0, b0 = mc.as_hermitian(A0), mc.as_hermitian(B0)
    etol = mc.TOL.effect
    for X, ks in ((a0, s_vals**power), (b0, t_vals**power)):
        if ks.size and X.size:
            span = np.outer(ks, np.linalg.eigvalsh(X)[[0, -1]])
            if span.min() < -etol:
                raise NotAnEffect(float(span.min()))
            if span.max() > 1.0 + etol:
                raise NotAnEffect(float(span.max()))
    bl_a = [_raw_bloch(M) for M in block_of(a0, d, algebra_tol).blocks]
    bl_b = [_raw_bloch(M) for M in block_of(b0, d, algebra_tol).blocks]
    decisions = np.empty((s_vals.size, t_vals.size), dtype=object)
    min_c = np.full((s_vals.size, t_vals.size), np.nan)
    for i, s in enumerate(s_vals):
        ka = s**power
        sa = [_scaled_bloch(b, ka) for b in bl_a]
        for j, t in enumerate(t_vals):
            kb = t**power
            verdicts = [qubit_verdict(x, _scaled_bloch(y, kb), tol) for x, y in zip(sa, bl_b)]
            if verdicts:
                decisions[i, j] = _combine([dec for dec, _ in verdicts])
                min_c[i, j] = min(c for _, c in verdicts)
            else:
                decisions[i, j] = Decision.COEXISTENT
    return ScanResult(s_vals, t_vals, decisions, min_c)


# ------------------------------------------------------ analytic special cases

def _unit_scalar(x: float, name: str) -> float:
    x = float(x)
    if not (0.0 <= x <= 1.0):
        raise InvalidRange(f"{name} = {x!r} must lie in [0, 1]")
    return x


def rank1_scaled_check(s: float, P1, t: float, P2, tol: float | None = None) -> bool:
    """``sP1`` and ``tP2`` with ``rank P1 = 1`` coexist iff they commute or ``sP1 + tP2 <= 1``."""
    s, t = _unit_scalar(s, "s"), _unit_scalar(t, "t")
    p1, p2 = mc.as_hermitian(P1), mc.as_hermitian(P2)
    if p1.shape != p2.shape:
        raise DimensionMismatch("P1 and P2 have different dimensions")
    for name, P in (("P1", p1), ("P2", p2)):
        if not is_projection(P):
            raise NotAProjection(f"{name} is not a projection")
    rank = int(round(np.trace(p1).real))
    if rank != 1:
        raise RankViolation(f"P1 must have rank 1, got {rank}")
    if commute(s * p1, t * p2, tol):
        return True
    return mc.is_psd(np.eye(p1.shape[0]) - s * p1 - t * p2, tol)


class Interval(NamedTuple):
    """Closed interval ``[lo, hi]`` standing in for a continuous spectrum."""

    lo: float
    hi: float


def _ratio(f: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(f > 0.0, (1.0 - f) / np.where(f > 0.0, f, 1.0), np.inf)


def _vectorized(f, h: np.ndarray) -> np.ndarray | None:
    # one call on the whole array when f supports it; a few spot checks guard
    # against functions that accept arrays but reduce them (e.g. max(h))
    try:
        with np.errstate(all="ignore"):
            vals = np.broadcast_to(np.asarray(f(h), dtype=float), h.shape)
    except (TypeError, ValueError):
        return None
    probe = {0, h.size // 2, h.size - 1}
    if all(float(f(float(h[k]))) == vals[k] for k in probe):
        return np.array(vals)
    return None


def _eval_f(f: Callable[[float], float], h: np.ndarray, name: str) -> np.ndarray:
    vals = _vectorized(f, h) if h.size > 8 else None
    if vals is None:
        vals = np.array([float(f(float(x))) for x in h])
    eps = 1e-12
    if np.any(vals < -eps) or np.any(vals > 1.0 + eps):
        bad = vals[(vals < -eps) | (vals > 1.0 + eps)][0]
        raise InvalidRange(f"{name} takes value {bad!r} outside [0, 1]")
    return np.clip(vals, 0.0, 1.0)


def _scaled_expr(f1, f2, h: np.ndarray) -> np.ndarray:
    r1, r2 = _ratio(_eval_f(f1, h, "f1")), _ratio(_eval_f(f2, h, "f2"))
    with np.errstate(invalid="ignore"):
        out = r1 * r2 - h
    # a vanishing scaling makes that block zero: no constraint
    return np.where(np.isinf(r1) | np.isinf(r2), np.inf, out)


def scaled_central_margin(
    f1: Callable[[float], float],
    f2: Callable[[float], float],
    spec_h: Sequence[float] | Interval,
    grid_n: int = GRID_N,
) -> float:
    """Infimum over ``h`` of ``(1 - f1)/f1 * (1 - f2)/f2 - h``.

    ``spec_h`` is either a finite list of spectral points or an
    :class:`Interval`; an interval is scanned on a uniform grid of ``grid_n``
    points and the best grid cell is refined with a bounded scalar search.
    Points where some ``f_i`` vanishes impose no constraint (+inf).
    """
    if isinstance(spec_h, Interval):
        lo, hi = float(spec_h.lo), float(spec_h.hi)
        if not (0.0 <= lo <= hi <= 1.0):
            raise InvalidRange(f"interval [{lo}, {hi}] not inside [0, 1]")
        if grid_n < 2:
            raise InvalidRange("grid_n must be at least 2")
        grid = np.linspace(lo, hi, grid_n)
        vals = _scaled_expr(f1, f2, grid)
        i = int(np.argmin(vals))
        best = float(vals[i])
        if not np.isfinite(best) or hi == lo:
            return best
        a, b = grid[max(i - 1, 0)], grid[min(i + 1, grid_n - 1)]

        def g(x):
            v = float(_scaled_expr(f1, f2, np.array([x]))[0])
            return v if np.isfinite(v) else 1e300

        opt = minimize_scalar(g, bounds=(a, b), method="bounded", options={"xatol": 1e-12})
        return min(best, float(opt.fun))
    h = np.atleast_1d(np.asarray(spec_h, dtype=float))
    if h.size == 0:
        raise InvalidRange("spectrum of H is empty")
    if np.any(h < -1e-12) or np.any(h > 1.0 + 1e-12):
        raise InvalidRange("spectral points must lie in [0, 1]")
    return float(np.min(_scaled_expr(f1, f2, np.clip(h, 0.0, 1.0))))


def scaled_central_check(
    f1: Callable[[float], float],
    f2: Callable[[float], float],
    spec_h: Sequence[float] | Interval,
    tol: float | None = None,
    grid_n: int = GRID_N,
) -> bool:
    """Coexistence of ``f1(C) P1`` and ``f2(C) P2`` from the spectrum of ``H``."""
    tol = mc.TOL.decision if tol is None else tol
    return scaled_central_margin(f1, f2, spec_h, grid_n) >= -tol


def scaled_central_verdict(f1, f2, spec_h, tol: float | None = None,
                           grid_n: int = GRID_N) -> CoexistenceVerdict:
    margin = scaled_central_margin(f1, f2, spec_h, grid_n)
    return CoexistenceVerdict(decide(margin, tol), Method.SCALED_CENTRAL, note=f"margin {margin:.6g}")


def rank1_verdict(s: float, P1, t: float, P2, tol: float | None = None) -> CoexistenceVerdict:
    """Three-valued form of :func:`rank1_scaled_check` (margin = lambda_min(1 - sP1 - tP2))."""
    rank1_scaled_check(s, P1, t, P2, tol)  # validates inputs
    p1, p2 = mc.as_hermitian(P1), mc.as_hermitian(P2)
    if commute(s * p1, t * p2, tol):
        return CoexistenceVerdict(Decision.COEXISTENT, Method.RANK1_FASTPATH, note="commuting")
    margin = mc.lambda_min(np.eye(p1.shape[0]) - s * p1 - t * p2)
    return CoexistenceVerdict(decide(margin, tol), Method.RANK1_FASTPATH, note=f"margin {margin:.6g}")


def copies_bound(overlap: float, n: int) -> float:
    """Largest equal scaling ``s = t`` for which n-fold tensor powers of
    ``s|psi1><psi1|`` and ``t|psi2><psi2|`` coexist, given ``overlap = |<psi1|psi2>|``."""
    overlap = _unit_scalar(overlap, "overlap")
    if int(n) != n or n < 1:
        raise InvalidRange(f"n must be a positive integer, got {n!r}")
    return (1.0 / (1.0 + overlap**n)) ** (1.0 / n)


def scaled_central_effects(f1, f2, P1, P2) -> tuple[np.ndarray, np.ndarray]:
    """The pair ``f1(C) P1``, ``f2(C) P2``."""
    C = central_element(P1, P2)
    p1, p2 = mc.as_hermitian(P1), mc.as_hermitian(P2)

    def clipped(f):
        return lambda x: f(min(1.0, max(0.0, x)))

    A = mc.apply_spectral(C, clipped(f1)) @ p1
    B = mc.apply_spectral(C, clipped(f2)) @ p2
    return 0.5 * (A + A.conj().T), 0.5 * (B + B.conj().T)


def ginf_equals_coexistence_check(
    f1, f2, P1, P2, d: TwoProjectionDecomposition | None = None, tol: float | None = None
) -> tuple[bool, bool]:
    """GINF on the full matrices vs. the spectral criterion on ``spec(H)``."""
    if d is None:
        d = decompose(P1, P2)
    A, B = scaled_central_effects(f1, f2, P1, P2)
    ginf = ginf_condition(A, B, tol)
    h = d.h_values
    coex = True if h.size == 0 else scaled_central_check(f1, f2, h, tol)
    return ginf, coex


def distance_to_sum_bound(s: float, t: float, h_max: float) -> float:
    """``(1-s)/s * (1-t)/t - ||H||`` for constant scalings (+inf if s or t is 0)."""
    if s == 0.0 or t == 0.0:
        return math.inf
    return (1.0 - s) / s * (1.0 - t) / t - h_max
