"""Random instances for property tests and benchmarks."""
from __future__ import annotations

import numpy as np
from scipy.stats import unitary_group

from .qubit import BlochEffect


def random_qubit_effect(rng: np.random.Generator) -> BlochEffect:
    """Bloch vector uniform in the unit ball, then alpha uniform in [|a|, 2 - |a|]."""
    v = rng.normal(size=3)
    v *= rng.uniform() ** (1.0 / 3.0) / np.linalg.norm(v)
    r = float(np.linalg.norm(v))
    return BlochEffect(rng.uniform(r, 2.0 - r), tuple(v))


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    return unitary_group.rvs(n, random_state=rng) if n > 1 else np.ones((1, 1), complex)


def random_projection(n: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    U = random_unitary(n, rng)[:, :rank]
    return U @ U.conj().T


def random_effect(n: int, rng: np.random.Generator) -> np.ndarray:
    U = random_unitary(n, rng)
    return (U * rng.uniform(0.0, 1.0, size=n)) @ U.conj().T


def random_hermitian(n: int, rng: np.random.Generator) -> np.ndarray:
    X = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (X + X.conj().T)


def random_projection_pair(rng: np.random.Generator, dims=(2, 10)) -> tuple[np.ndarray, np.ndarray]:
    """Two projections of random rank in a random dimension from ``dims`` (inclusive).

    With probability 1/4 a shared commuting part is glued on so that the
    commutation domain is nontrivial in all four ways.
    """
    n = int(rng.integers(dims[0], dims[1] + 1))
    if n >= 4 and rng.uniform() < 0.25:
        extra = int(rng.integers(1, min(4, n - 1) + 1))
        core = n - extra
        p1 = random_projection(core, int(rng.integers(0, core + 1)), rng)
        p2 = random_projection(core, int(rng.integers(0, core + 1)), rng)
        d1 = rng.integers(0, 2, size=extra).astype(float)
        d2 = rng.integers(0, 2, size=extra).astype(float)
        P1 = np.zeros((n, n), complex)
        P2 = np.zeros((n, n), complex)
        P1[:core, :core], P2[:core, :core] = p1, p2
        P1[core:, core:], P2[core:, core:] = np.diag(d1), np.diag(d2)
        U = random_unitary(n, rng)
        return U @ P1 @ U.conj().T, U @ P2 @ U.conj().T
    P1 = random_projection(n, int(rng.integers(0, n + 1)), rng)
    P2 = random_projection(n, int(rng.integers(0, n + 1)), rng)
    return P1, P2


def bernstein_polynomial(coeffs) -> "callable":
    """Polynomial on [0, 1] in Bernstein form; coefficients in [0, 1] keep it in [0, 1]."""
    from math import comb

    c = [float(x) for x in coeffs]
    deg = len(c) - 1

    def f(h: float) -> float:
        return sum(ck * comb(deg, k) * h**k * (1.0 - h) ** (deg - k) for k, ck in enumerate(c))

    f.coeffs = tuple(c)
    return f


def random_unit_polynomial(rng: np.random.Generator, max_degree: int = 3):
    deg = int(rng.integers(0, max_degree + 1))
    return bernstein_polynomial(rng.uniform(0.0, 1.0, size=deg + 1))
