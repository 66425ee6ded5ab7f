"""Effects, complements, the generalized infimum and the classical sufficient
conditions for coexistence (commutativity, comparability, GINF)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matrix_core as mc
from .errors import DimensionMismatch, NotAnEffect


@dataclass(frozen=True, eq=False)
class Effect:
    """A Hermitian matrix with spectrum in [0, 1].

    Build one with :func:`validate_effect`; the stored matrix has its
    eigenvalues clamped into [0, 1].
    """

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    def complement(self) -> "Effect":
        return complement(self)


def _matrix(E) -> np.ndarray:
    if isinstance(E, Effect):
        return E.matrix
    return mc.as_hermitian(E)


def validate_effect(M, tol: float | None = None) -> Effect:
    """Check ``-tol <= M <= 1 + tol`` and return the clamped :class:`Effect`."""
    if isinstance(M, Effect):
        return M
    tol = mc.TOL.effect if tol is None else tol
    H = mc.as_hermitian(M)
    w = np.linalg.eigvalsh(H)
    if w.size:
        if w[0] < -tol:
            raise NotAnEffect(w[0])
        if w[-1] > 1.0 + tol:
            raise NotAnEffect(w[-1])
    if w.size and (w[0] < 0.0 or w[-1] > 1.0):
        sd = mc.eig_hermitian(H)
        H = sd.reconstruct(np.clip(sd.eigenvalues, 0.0, 1.0))
    return Effect(H)


def is_effect(M, tol: float | None = None) -> bool:
    try:
        validate_effect(M, tol)
    except (NotAnEffect, ValueError):
        return False
    return True


def complement(A) -> Effect:
    M = _matrix(A)
    return Effect(np.eye(M.shape[0]) - M)


def _pair(A, B) -> tuple[np.ndarray, np.ndarray]:
    a, b = _matrix(A), _matrix(B)
    if a.shape != b.shape:
        raise DimensionMismatch(f"dimensions differ: {a.shape[0]} vs {b.shape[0]}")
    return a, b


def gen_inf(A, B) -> np.ndarray:
    """Generalized infimum ``(A + B - |A - B|) / 2``.

    Not necessarily positive; that failure is what the GINF condition tests.
    """
    a, b = _pair(A, B)
    # |a - b| and |b - a| differ by rounding; averaging both keeps the result
    # bitwise symmetric in (A, B)
    d = 0.5 * (mc.abs_op(a - b) + mc.abs_op(b - a))
    return 0.5 * (a + b - d)


def ginf_condition(A, B, tol: float | None = None) -> bool:
    """The GINF sufficient condition for coexistence."""
    a, b = _pair(A, B)
    eye = np.eye(a.shape[0])
    ap, bp = eye - a, eye - b

    def psd(X, Y):
        return mc.is_psd(gen_inf(X, Y), tol)

    return (psd(a, b) and psd(ap, bp)) or (psd(a, bp) and psd(ap, b))


def commute(A, B, tol: float | None = None) -> bool:
    """``||AB - BA|| <= tol * ||A|| * ||B||``."""
    tol = mc.TOL.recon if tol is None else tol
    a, b = _pair(A, B)
    return mc.opnorm(mc.commutator(a, b)) <= tol * max(mc.opnorm(a) * mc.opnorm(b), 1e-300)


def leq(A, B, tol: float | None = None) -> bool:
    """PSD order ``A <= B``."""
    a, b = _pair(A, B)
    return mc.is_psd(b - a, tol)


def comparable(A, B, tol: float | None = None) -> bool:
    """A <= B, B <= A, A <= B^perp or B^perp <= A."""
    a, b = _pair(A, B)
    bp = np.eye(a.shape[0]) - b
    return leq(a, b, tol) or leq(b, a, tol) or leq(a, bp, tol) or leq(bp, a, tol)


def is_projection(P, tol: float | None = None) -> bool:
    tol = mc.TOL.effect if tol is None else tol
    try:
        M = mc.as_hermitian(P)
    except ValueError:
        return False
    return mc.opnorm(M @ M - M) <= tol * max(1.0, mc.opnorm(M))
