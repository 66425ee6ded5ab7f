"""Dense Hermitian spectral calculus for small matrices.

All routines work on plain ``numpy`` arrays and are pure: inputs are never
modified. Tolerances are relative to ``max(1, ||M||)`` and live in the
module-level :data:`TOL` object, which can be overridden globally with
:func:`set_tolerances` or temporarily with :func:`tolerances`.
"""
from __future__ import annotations

import contextlib
from dataclasses import dataclass, fields, replace
from typing import Callable, Iterator

import numpy as np

from .errors import NonHermitian


@dataclass(frozen=True)
class Tolerances:
    herm: float = 1e-10
    orth: float = 1e-10
    recon: float = 1e-10
    effect: float = 1e-9
    decision: float = 1e-9
    radicand: float = 1e-12
    cluster: float = 1e-8


TOL = Tolerances()


def set_tolerances(**kwargs: float) -> Tolerances:
    """Replace global tolerances; returns the previous set."""
    global TOL
    names = {f.name for f in fields(Tolerances)}
    unknown = set(kwargs) - names
    if unknown:
        raise TypeError(f"unknown tolerance(s): {sorted(unknown)}")
    previous = TOL
    TOL = replace(TOL, **kwargs)
    return previous


@contextlib.contextmanager
def tolerances(**kwargs: float) -> Iterator[Tolerances]:
    previous = set_tolerances(**kwargs)
    try:
        yield TOL
    finally:
        set_tolerances(**{f.name: getattr(previous, f.name) for f in fields(Tolerances)})


def opnorm(M: np.ndarray) -> float:
    """Spectral norm (largest singular value)."""
    M = np.asarray(M)
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))


def _scale(M: np.ndarray) -> float:
    return max(1.0, opnorm(M))


def as_hermitian(M, tol: float | None = None) -> np.ndarray:
    """Return ``M`` as a complex array, symmetrized, after checking Hermiticity.

    Raises :class:`NonHermitian` if ``||M - M*|| > tol * max(1, ||M||)``.
    """
    tol = TOL.herm if tol is None else tol
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    D = M - M.conj().T
    # Frobenius norm bounds the spectral one and the scale is at least 1
    if D.any() and np.linalg.norm(D) > tol:
        dev = opnorm(D)
        if dev > tol * _scale(M):
            raise NonHermitian(dev)
    return 0.5 * (M + M.conj().T)


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self, values: np.ndarray | None = None) -> np.ndarray:
        w = self.eigenvalues if values is None else np.asarray(values)
        V = self.eigenvectors
        return (V * w) @ V.conj().T

    def clusters(self, rel_gap: float | None = None) -> list[np.ndarray]:
        """Group indices of numerically equal eigenvalues.

        Consecutive (sorted) eigenvalues closer than ``rel_gap * max(1, max|w|)``
        land in the same cluster; any orthonormal basis of a cluster is as good
        as another.
        """
        rel_gap = TOL.cluster if rel_gap is None else rel_gap
        w = self.eigenvalues
        if len(w) == 0:
            return []
        gap = rel_gap * max(1.0, float(np.max(np.abs(w))))
        groups = [[0]]
        for i in range(1, len(w)):
            if w[i] - w[i - 1] < gap:
                groups[-1].append(i)
            else:
                groups.append([i])
        return [np.array(g) for g in groups]


def eig_hermitian(M) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    H = as_hermitian(M)
    w, V = np.linalg.eigh(H)
    return SpectralDecomposition(w, V)


def lambda_min(M) -> float:
    H = as_hermitian(M)
    if H.shape[0] == 0:
        return np.inf
    return float(np.linalg.eigvalsh(H)[0])


def is_psd(M, tol: float | None = None) -> bool:
    """True iff ``lambda_min(M) >= -tol * max(1, ||M||)``."""
    tol = TOL.recon if tol is None else tol
    H = as_hermitian(M)
    if H.shape[0] == 0:
        return True
    return lambda_min(H) >= -tol * _scale(H)


def apply_spectral(M, f: Callable[[float], float]) -> np.ndarray:
    """Functional calculus ``sum_j f(lambda_j) v_j v_j*``."""
    sd = eig_hermitian(M)
    values = np.array([float(f(float(x))) for x in sd.eigenvalues])
    return sd.reconstruct(values)


def abs_op(M) -> np.ndarray:
    """Operator absolute value ``|M|``."""
    sd = eig_hermitian(M)
    return sd.reconstruct(np.abs(sd.eigenvalues))


def sqrt_psd(M) -> np.ndarray:
    """Square root of a positive semidefinite matrix (negative noise clipped)."""
    sd = eig_hermitian(M)
    return sd.reconstruct(np.sqrt(np.clip(sd.eigenvalues, 0.0, None)))


def positive_part(M) -> np.ndarray:
    sd = eig_hermitian(M)
    return sd.reconstruct(np.clip(sd.eigenvalues, 0.0, None))


def commutator(A, B) -> np.ndarray:
    A = np.asarray(A)
    B = np.asarray(B)
    return A @ B - B @ A
