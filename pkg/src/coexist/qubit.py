"""Qubit effects in Bloch form and the coexistence function.

A qubit effect is ``A = (alpha I + a . sigma) / 2`` with
``|a| <= alpha <= 2 - |a|``. Two qubit effects coexist iff
:func:`c_function` is nonnegative.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import matrix_core as mc
from .errors import NegativeRadicand, NotAnEffect, PreconditionViolated

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)


class Decision(str, enum.Enum):
    COEXISTENT = "coexistent"
    NOT_COEXISTENT = "not_coexistent"
    BORDERLINE = "borderline"

    @property
    def exit_code(self) -> int:
        return {"coexistent": 0, "not_coexistent": 1, "borderline": 2}[self.value]


def decide(value: float, tol: float | None = None) -> Decision:
    """Three-valued sign test: ``|value| <= tol`` is borderline."""
    tol = mc.TOL.decision if tol is None else tol
    if value > tol:
        return Decision.COEXISTENT
    if value < -tol:
        return Decision.NOT_COEXISTENT
    return Decision.BORDERLINE


@dataclass(frozen=True)
class BlochEffect:
    alpha: float
    a: tuple[float, float, float]

    def __post_init__(self):
        a = tuple(float(x) for x in self.a)
        if len(a) != 3:
            raise ValueError("Bloch vector must have three components")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "alpha", float(self.alpha))
        tol = mc.TOL.effect
        n = self.norm
        if self.alpha < n - tol:
            raise NotAnEffect(0.5 * (self.alpha - n))
        if self.alpha > 2.0 - n + tol:
            raise NotAnEffect(0.5 * (self.alpha + n))

    @property
    def norm(self) -> float:
        return math.sqrt(self.a[0] ** 2 + self.a[1] ** 2 + self.a[2] ** 2)

    @property
    def unbiased(self) -> bool:
        return abs(self.alpha - 1.0) <= mc.TOL.effect

    def complement(self) -> "BlochEffect":
        return BlochEffect(2.0 - self.alpha, (-self.a[0], -self.a[1], -self.a[2]))

    def matrix(self) -> np.ndarray:
        return from_bloch(self)


def to_bloch(A) -> BlochEffect:
    """Bloch parameters of a 2x2 effect: ``alpha = tr A``, ``a_k = tr(A sigma_k)``."""
    M = mc.as_hermitian(A)
    if M.shape != (2, 2):
        raise ValueError(f"to_bloch needs a 2x2 matrix, got {M.shape}")
    a00, a11, a01 = M[0, 0].real, M[1, 1].real, M[0, 1]
    # tr(M sigma_k) written out for the 2x2 Hermitian case
    return BlochEffect(float(a00 + a11), (float(2.0 * a01.real), float(-2.0 * a01.imag), float(a00 - a11)))


def from_bloch(b: BlochEffect) -> np.ndarray:
    return 0.5 * (b.alpha * np.eye(2) + b.a[0] * SIGMA_X + b.a[1] * SIGMA_Y + b.a[2] * SIGMA_Z)


def _as_bloch(x) -> BlochEffect:
    return x if isinstance(x, BlochEffect) else to_bloch(x)


def bracket(A: BlochEffect, B: BlochEffect) -> float:
    """``<A|B> = alpha beta - a . b``."""
    return A.alpha * B.alpha - (A.a[0] * B.a[0] + A.a[1] * B.a[1] + A.a[2] * B.a[2])


def _raw_complement(E: BlochEffect) -> BlochEffect:
    # no re-validation: an input that slipped past validation must reach the
    # radicand check instead of failing here
    out = object.__new__(BlochEffect)
    object.__setattr__(out, "alpha", 2.0 - E.alpha)
    object.__setattr__(out, "a", (-E.a[0], -E.a[1], -E.a[2]))
    return out


def _brackets(A: BlochEffect, B: BlochEffect):
    Ac, Bc = _raw_complement(A), _raw_complement(B)
    return Ac, Bc, (
        bracket(A, Ac) * bracket(B, Bc),
        bracket(A, Bc) * bracket(Ac, B),
        bracket(A, B) * bracket(Ac, Bc),
    )


def _radicand(A, B, Ac, Bc) -> float:
    fa = bracket(A, A) * bracket(Ac, Ac)
    fb = bracket(B, B) * bracket(Bc, Bc)
    rad = fa * fb
    if rad >= -mc.TOL.radicand:
        return max(rad, 0.0)
    # effects valid only up to tolerance: self-brackets may be slightly negative
    slack = 4.0 * mc.TOL.effect
    selfs = (bracket(A, A), bracket(Ac, Ac), bracket(B, B), bracket(Bc, Bc))
    if min(selfs) >= -slack:
        return 0.0
    raise NegativeRadicand(rad)


def c_function(A, B) -> float:
    """Coexistence function; ``A`` and ``B`` coexist iff the value is >= 0.

    Arguments may be :class:`BlochEffect` instances or 2x2 matrices. The
    expression is evaluated so that swapping the arguments gives a bitwise
    identical result.
    """
    A, B = _as_bloch(A), _as_bloch(B)
    Ac, Bc, (t_perp, t_cross, t_same) = _brackets(A, B)
    rad = _radicand(A, B, Ac, Bc)
    return math.sqrt(rad) - t_perp + t_cross + t_same


def c_function_rank1(A, B, tol: float | None = None) -> float:
    """Simplified form valid when one of A, A^perp, B, B^perp has rank one."""
    tol = mc.TOL.effect if tol is None else tol
    A, B = _as_bloch(A), _as_bloch(B)
    Ac, Bc, (t_perp, t_cross, t_same) = _brackets(A, B)
    # <E|E> = 4 det E, so it vanishes exactly for singular E
    if min(abs(bracket(E, E)) for E in (A, Ac, B, Bc)) > tol:
        raise PreconditionViolated("none of A, A^perp, B, B^perp is rank one")
    return -t_perp + t_cross + t_same


def c_function_unbiased(A, B, tol: float | None = None) -> float:
    """Simplified form for unbiased effects (alpha = beta = 1)."""
    tol = mc.TOL.effect if tol is None else tol
    A, B = _as_bloch(A), _as_bloch(B)
    if abs(A.alpha - 1.0) > tol or abs(B.alpha - 1.0) > tol:
        raise PreconditionViolated("effects are not unbiased")
    Ac, Bc = _raw_complement(A), _raw_complement(B)
    return (
        bracket(A, A) * bracket(B, B)
        - bracket(A, Ac) * bracket(B, Bc)
        + bracket(A, Bc) ** 2
        + bracket(A, B) ** 2
    )


def bloch_commute(A, B, tol: float | None = None) -> bool:
    """``[A, B] = (i/2) (a x b) . sigma``, so commuting means ``a x b = 0``."""
    tol = mc.TOL.decision if tol is None else tol
    A, B = _as_bloch(A), _as_bloch(B)
    (a1, a2, a3), (b1, b2, b3) = A.a, B.a
    return 0.5 * math.hypot(a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1) <= tol


def qubit_verdict(A, B, tol: float | None = None) -> tuple[Decision, float]:
    """Three-valued decision plus the c-value.

    Commuting pairs always coexist, so they are never reported borderline even
    when c vanishes (e.g. against the zero effect).
    """
    A, B = _as_bloch(A), _as_bloch(B)
    c = c_function(A, B)
    if bloch_commute(A, B, tol):
        return Decision.COEXISTENT, c
    return decide(c, tol), c


def qubit_coexistent(A, B, tol: float | None = None) -> bool:
    return qubit_verdict(A, B, tol)[0] is not Decision.NOT_COEXISTENT


def c_function_grid(alpha, a, beta, b) -> np.ndarray:
    """Vectorized :func:`c_function` over arrays of Bloch parameters.

    ``alpha``/``beta`` have shape ``(...)`` and ``a``/``b`` shape ``(..., 3)``.
    Intended for parameter scans; the radicand is clamped at zero.
    """
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)

    def br(x, u, y, v):
        return x * y - np.sum(u * v, axis=-1)

    ac, bc = 2.0 - alpha, 2.0 - beta
    rad = br(alpha, a, alpha, a) * br(ac, -a, ac, -a) * (br(beta, b, beta, b) * br(bc, -b, bc, -b))
    return (
        np.sqrt(np.clip(rad, 0.0, None))
        - br(alpha, a, ac, -a) * br(beta, b, bc, -b)
        + br(alpha, a, bc, -b) * br(ac, -a, beta, b)
        + br(alpha, a, beta, b) * br(ac, -a, bc, -b)
    )
