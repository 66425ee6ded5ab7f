"""Pure-Python kernels (used when the compiled ``_kernels`` module is absent).

Contract shared with ``_kernels.pyx``::

    dykstra(A, B, tol, max_iter, stall_tol, stall_sweeps, x0=None, relax=0.0)
        -> (G, status, residual, iterations)

Cyclic Dykstra projections onto {G >= 0}, {G <= A}, {G <= B},
{G >= A + B - 1} in the Frobenius geometry, started from x0 (default
(A + B) / 4).  With ``relax > 0`` the correction terms are dropped and each
step moves ``relax`` times the way to the projection (over-relaxed cyclic
projections); that finds *some* feasible point, not the nearest one.
``status`` is 0 (residual <= tol), 1 (stalled with residual > 10 tol)
or 2 (max_iter exhausted).
"""
from __future__ import annotations

import math

import numpy as np

FEASIBLE, STALLED, MAX_ITER = 0, 1, 2


# 2x2 Hermitian matrices as tuples (a, d, re b, im b) for [[a, b], [conj b, d]]

def _eig2(a, d, br, bi):
    m = 0.5 * (a + d)
    r = math.hypot(0.5 * (a - d), math.hypot(br, bi))
    return m - r, m + r, r


def _psd2(a, d, br, bi):
    lo, hi, r = _eig2(a, d, br, bi)
    if lo >= 0.0:
        return a, d, br, bi
    if hi <= 0.0:
        return 0.0, 0.0, 0.0, 0.0
    # hi * (X - lo I) / (hi - lo) is the positive spectral part
    k = hi / (2.0 * r)
    return k * (a - lo), k * (d - lo), k * br, k * bi


def _lmin2(a, d, br, bi):
    return _eig2(a, d, br, bi)[0]


def _pack(M):
    return (float(M[0, 0].real), float(M[1, 1].real), float(M[0, 1].real), float(M[0, 1].imag))


def _unpack(x):
    a, d, br, bi = x
    return np.array([[a, complex(br, bi)], [complex(br, -bi), d]], dtype=complex)


def _dykstra2(A, B, tol, max_iter, stall_tol, stall_sweeps, x0, relax):
    A4, B4 = _pack(A), _pack(B)
    L4 = (A4[0] + B4[0] - 1.0, A4[1] + B4[1] - 1.0, A4[2] + B4[2], A4[3] + B4[3])
    x = _pack(x0)
    incs = [(0.0, 0.0, 0.0, 0.0)] * 4
    prev = x
    stall = 0
    res = math.inf

    def sub(u, v):
        return (u[0] - v[0], u[1] - v[1], u[2] - v[2], u[3] - v[3])

    def add(u, v):
        return (u[0] + v[0], u[1] + v[1], u[2] + v[2], u[3] + v[3])

    for it in range(1, max_iter + 1):
        for i in range(4):
            z = add(x, incs[i])
            if i == 0:
                y = _psd2(*z)
            elif i == 1:
                y = sub(A4, _psd2(*sub(A4, z)))
            elif i == 2:
                y = sub(B4, _psd2(*sub(B4, z)))
            else:
                y = add(L4, _psd2(*sub(z, L4)))
            if relax > 0.0:
                x = tuple(u + relax * (v - u) for u, v in zip(x, y))
            else:
                incs[i] = sub(z, y)
                x = y
        res = max(0.0, -_lmin2(*x), -_lmin2(*sub(A4, x)), -_lmin2(*sub(B4, x)),
                  -_lmin2(*sub(x, L4)))
        if res <= tol:
            return _unpack(x), FEASIBLE, res, it
        dx = sub(x, prev)
        disp = math.sqrt(dx[0] ** 2 + dx[1] ** 2 + 2.0 * (dx[2] ** 2 + dx[3] ** 2))
        prev = x
        stall = stall + 1 if disp < stall_tol else 0
        if stall >= stall_sweeps and res > 10.0 * tol:
            return _unpack(x), STALLED, res, it
    return _unpack(x), MAX_ITER, res, max_iter


def _psd(X):
    w, V = np.linalg.eigh(X)
    return (V * np.clip(w, 0.0, None)) @ V.conj().T


def _lmin(X):
    return np.linalg.eigvalsh(X)[0]


def _dykstran(A, B, tol, max_iter, stall_tol, stall_sweeps, x0, relax):
    n = A.shape[0]
    L = A + B - np.eye(n)
    zero = np.zeros_like(A)
    x = x0.copy()
    incs = [zero.copy() for _ in range(4)]
    prev = x
    stall = 0
    res = math.inf
    for it in range(1, max_iter + 1):
        for i in range(4):
            z = x + incs[i]
            if i == 0:
                y = _psd(z)
            elif i == 1:
                y = A - _psd(A - z)
            elif i == 2:
                y = B - _psd(B - z)
            else:
                y = L + _psd(z - L)
            if relax > 0.0:
                x = x + relax * (y - x)
            else:
                incs[i] = z - y
                x = y
        res = max(0.0, -_lmin(x), -_lmin(A - x), -_lmin(B - x), -_lmin(x - L))
        if res <= tol:
            return x, FEASIBLE, res, it
        disp = np.linalg.norm(x - prev)
        prev = x
        stall = stall + 1 if disp < stall_tol else 0
        if stall >= stall_sweeps and res > 10.0 * tol:
            return x, STALLED, res, it
    return x, MAX_ITER, res, max_iter


def dykstra(A, B, tol, max_iter, stall_tol, stall_sweeps, x0=None, relax=0.0):
    A = np.ascontiguousarray(A, dtype=complex)
    B = np.ascontiguousarray(B, dtype=complex)
    x0 = 0.25 * (A + B) if x0 is None else np.ascontiguousarray(x0, dtype=complex)
    if A.shape[0] == 2:
        return _dykstra2(A, B, tol, max_iter, stall_tol, stall_sweeps, x0, relax)
    return _dykstran(A, B, tol, max_iter, stall_tol, stall_sweeps, x0, relax)
