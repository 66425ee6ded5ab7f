"""Worked example families with closed-form coexistence boundaries."""
from __future__ import annotations

import math

import numpy as np

from .qubit import SIGMA_X, SIGMA_Y, SIGMA_Z

I2 = np.eye(2, dtype=complex)

# dim-3 sum family: A_s = s(P1 + P2), B_t = t(P1 + 1 - P2)
DIM3_S_MAX = (3.0 - math.sqrt(3.0)) / 2.0
DIM3_T_MAX = 3.0 - math.sqrt(6.0)
DIM3_THETA = math.acos(-1.0 / 3.0)

# dim-4 sandwich family: A_s = s P1P2P1, B_t = t P2P1P2
DIM4_Q = (2.0 + math.sqrt(2.0)) / 4.0
DIM4_T_AT_S1 = 8.0 * (3.0 - 2.0 * math.sqrt(2.0)) / 7.0
DIM4_THETAS = (math.pi / 4.0, 3.0 * math.pi / 4.0)

QUBIT_XY_THRESHOLD = 2.0 - math.sqrt(2.0)


def _ket_projection(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


# ---------------------------------------------------------------- qubit

def pauli_projections() -> tuple[np.ndarray, np.ndarray]:
    """``P_x = (1 + sigma_x)/2`` and ``P_y = (1 + sigma_y)/2``."""
    return 0.5 * (I2 + SIGMA_X), 0.5 * (I2 + SIGMA_Y)


def tensor_example() -> dict[str, np.ndarray]:
    """Qubit factors ``A1 = (1 + sz)/(2 sqrt 2)``, ``B1 = (1 + sx)/(2 sqrt 2)`` and
    their tensor squares."""
    k = 1.0 / (2.0 * math.sqrt(2.0))
    A1 = k * (I2 + SIGMA_Z)
    B1 = k * (I2 + SIGMA_X)
    return {"A1": A1, "B1": B1, "A": np.kron(A1, A1), "B": np.kron(B1, B1)}


# ---------------------------------------------------------------- dim 3

def dim3_projections() -> tuple[np.ndarray, np.ndarray]:
    """``P1 = |psi1><psi1|`` and ``P2 = |phi><phi|`` with ``phi`` the uniform superposition."""
    return _ket_projection([1, 0, 0]), _ket_projection([1, 1, 1])


def dim3_effects(s: float, t: float) -> tuple[np.ndarray, np.ndarray]:
    P1, P2 = dim3_projections()
    return s * (P1 + P2), t * (P1 + np.eye(3) - P2)


def dim3_boundary(s, t):
    """Quartic whose sign decides coexistence of the dim-3 family (>= 0 coexistent)."""
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    rad = 2.0 * (2.0 * s**2 - 6.0 * s + 3.0) * (t**2 - 6.0 * t + 3.0)
    return np.sqrt(np.maximum(rad, 0.0)) + 16.0 * s * t - 12.0 * s - 15.0 * t + 9.0


def dim3_blocks(s: float, t: float, theta: float = DIM3_THETA) -> tuple[np.ndarray, np.ndarray]:
    st, ct = math.sin(theta), math.cos(theta)
    Ma = 0.5 * (2 * s * I2 + s * st * SIGMA_X + s * (1 + ct) * SIGMA_Z)
    Mb = 0.5 * (2 * t * I2 - t * st * SIGMA_X + t * (1 - ct) * SIGMA_Z)
    return Ma, Mb


# ---------------------------------------------------------------- dim 4

def fourier_matrix(n: int) -> np.ndarray:
    j = np.arange(n)
    return np.exp(2j * np.pi * np.outer(j, j) / n) / math.sqrt(n)


def dim4_projections() -> tuple[np.ndarray, np.ndarray]:
    """``P1`` onto the first two basis vectors, ``P2 = F P1 F*`` with ``F`` the 4-point DFT."""
    P1 = np.diag([1, 1, 0, 0]).astype(complex)
    F = fourier_matrix(4)
    return P1, F @ P1 @ F.conj().T


def dim4_effects(s: float, t: float) -> tuple[np.ndarray, np.ndarray]:
    P1, P2 = dim4_projections()
    return s * P1 @ P2 @ P1, t * P2 @ P1 @ P2


def dim4_boundary(s, t):
    """``(1 - qs)/(qs) * (1 - qt)/(qt) - q`` with ``q = cos^2(pi/8)`` (>= 0 coexistent)."""
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    q = DIM4_Q
    with np.errstate(divide="ignore", invalid="ignore"):
        val = (1 - q * s) / (q * s) * (1 - q * t) / (q * t) - q
    return np.where((s == 0) | (t == 0), np.inf, val)


# ------------------------------------------------------------ rank one

def overlap_pair(overlap2: float, dim: int = 2) -> tuple[np.ndarray, np.ndarray]:
    """Rank-one projections onto unit vectors with ``|<psi1|psi2>|^2 = overlap2``."""
    if not 0.0 <= overlap2 <= 1.0:
        raise ValueError("overlap2 must lie in [0, 1]")
    if dim < 2:
        raise ValueError("need dim >= 2")
    psi1 = np.zeros(dim, complex)
    psi2 = np.zeros(dim, complex)
    psi1[0] = 1.0
    psi2[0] = math.sqrt(overlap2)
    psi2[1] = math.sqrt(1.0 - overlap2)
    return np.outer(psi1, psi1.conj()), np.outer(psi2, psi2.conj())


def copies_pair(overlap2: float, n: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """n-fold tensor powers of :func:`overlap_pair` (dimension ``2**n``)."""
    P1, P2 = overlap_pair(overlap2)
    Q1, Q2 = P1, P2
    for _ in range(n - 1):
        Q1, Q2 = np.kron(Q1, P1), np.kron(Q2, P2)
    return Q1, Q2


def copies_boundary(s, t, overlap2: float, n: int = 1):
    """``(1 - s^n)/s^n * (1 - t^n)/t^n - overlap2^n`` (>= 0 coexistent)."""
    sn = np.asarray(s, dtype=float) ** n
    tn = np.asarray(t, dtype=float) ** n
    with np.errstate(divide="ignore", invalid="ignore"):
        val = (1 - sn) / sn * (1 - tn) / tn - overlap2**n
    return np.where((sn == 0) | (tn == 0), np.inf, val)
