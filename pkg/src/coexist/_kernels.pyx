# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Dykstra kernels; same contract as ``_fallback.dykstra``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, hypot, INFINITY
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy
from scipy.linalg.cython_lapack cimport zheev

cnp.import_array()

cdef enum:
    FEASIBLE = 0
    STALLED = 1
    MAX_ITER = 2


# ---------------------------------------------------------------- 2x2 path
# Hermitian [[a, b], [conj b, d]] stored as double[4] = (a, d, re b, im b)

cdef inline double lmin2(const double* x) nogil:
    return 0.5 * (x[0] + x[1]) - hypot(0.5 * (x[0] - x[1]), hypot(x[2], x[3]))


cdef inline void psd2(const double* x, double* out) nogil:
    cdef double m = 0.5 * (x[0] + x[1])
    cdef double r = hypot(0.5 * (x[0] - x[1]), hypot(x[2], x[3]))
    cdef double lo = m - r, hi = m + r, k
    if lo >= 0.0:
        out[0] = x[0]; out[1] = x[1]; out[2] = x[2]; out[3] = x[3]
    elif hi <= 0.0:
        out[0] = 0.0; out[1] = 0.0; out[2] = 0.0; out[3] = 0.0
    else:
        k = hi / (2.0 * r)
        out[0] = k * (x[0] - lo); out[1] = k * (x[1] - lo)
        out[2] = k * x[2]; out[3] = k * x[3]


cdef tuple _dykstra2(double complex[:, ::1] A, double complex[:, ::1] B,
                     double complex[:, ::1] X0, double tol, long max_iter,
                     double stall_tol, long stall_sweeps, double relax):
    cdef double a4[4]
    cdef double b4[4]
    cdef double l4[4]
    cdef double x[4]
    cdef double prev[4]
    cdef double inc[4][4]
    cdef double z[4]
    cdef double t[4]
    cdef double y[4]
    cdef double res = INFINITY, disp, r0
    cdef long it, stall = 0, status = MAX_ITER, iters = max_iter
    cdef int i, j

    a4[0] = A[0, 0].real; a4[1] = A[1, 1].real; a4[2] = A[0, 1].real; a4[3] = A[0, 1].imag
    b4[0] = B[0, 0].real; b4[1] = B[1, 1].real; b4[2] = B[0, 1].real; b4[3] = B[0, 1].imag
    l4[0] = a4[0] + b4[0] - 1.0; l4[1] = a4[1] + b4[1] - 1.0
    l4[2] = a4[2] + b4[2]; l4[3] = a4[3] + b4[3]
    x[0] = X0[0, 0].real; x[1] = X0[1, 1].real; x[2] = X0[0, 1].real; x[3] = X0[0, 1].imag
    for j in range(4):
        prev[j] = x[j]
        for i in range(4):
            inc[i][j] = 0.0

    with nogil:
        for it in range(1, max_iter + 1):
            for i in range(4):
                for j in range(4):
                    z[j] = x[j] + inc[i][j]
                if i == 0:
                    psd2(z, y)
                elif i == 1:
                    for j in range(4):
                        t[j] = a4[j] - z[j]
                    psd2(t, y)
                    for j in range(4):
                        y[j] = a4[j] - y[j]
                elif i == 2:
                    for j in range(4):
                        t[j] = b4[j] - z[j]
                    psd2(t, y)
                    for j in range(4):
                        y[j] = b4[j] - y[j]
                else:
                    for j in range(4):
                        t[j] = z[j] - l4[j]
                    psd2(t, y)
                    for j in range(4):
                        y[j] = l4[j] + y[j]
                if relax > 0.0:
                    for j in range(4):
                        x[j] = x[j] + relax * (y[j] - x[j])
                else:
                    for j in range(4):
                        inc[i][j] = z[j] - y[j]
                        x[j] = y[j]
            res = -lmin2(x)
            for j in range(4):
                t[j] = a4[j] - x[j]
            r0 = -lmin2(t)
            if r0 > res: res = r0
            for j in range(4):
                t[j] = b4[j] - x[j]
            r0 = -lmin2(t)
            if r0 > res: res = r0
            for j in range(4):
                t[j] = x[j] - l4[j]
            r0 = -lmin2(t)
            if r0 > res: res = r0
            if res < 0.0: res = 0.0
            if res <= tol:
                status = FEASIBLE; iters = it
                break
            disp = sqrt((x[0] - prev[0]) ** 2 + (x[1] - prev[1]) ** 2
                        + 2.0 * ((x[2] - prev[2]) ** 2 + (x[3] - prev[3]) ** 2))
            for j in range(4):
                prev[j] = x[j]
            if disp < stall_tol:
                stall += 1
            else:
                stall = 0
            if stall >= stall_sweeps and res > 10.0 * tol:
                status = STALLED; iters = it
                break

    G = np.empty((2, 2), dtype=complex)
    G[0, 0] = x[0]
    G[1, 1] = x[1]
    G[0, 1] = complex(x[2], x[3])
    G[1, 0] = complex(x[2], -x[3])
    return G, status, res, iters


# ---------------------------------------------------------------- n x n path
# Row-major Hermitian buffers handed to column-major LAPACK are seen as their
# complex conjugate; eigenvalues agree and eigenvectors come back conjugated.

cdef struct Workspace:
    int n
    int lwork
    double complex* a
    double complex* work
    double* w
    double* rwork


cdef int ws_init(Workspace* ws, int n) nogil:
    ws.n = n
    ws.lwork = 64 * n if n > 1 else 1
    ws.a = <double complex*> malloc(n * n * sizeof(double complex))
    ws.work = <double complex*> malloc(ws.lwork * sizeof(double complex))
    ws.w = <double*> malloc(n * sizeof(double))
    ws.rwork = <double*> malloc((3 * n if n > 0 else 1) * sizeof(double))
    if ws.a == NULL or ws.work == NULL or ws.w == NULL or ws.rwork == NULL:
        return -1
    return 0


cdef void ws_free(Workspace* ws) nogil:
    free(ws.a); free(ws.work); free(ws.w); free(ws.rwork)


cdef int heev(Workspace* ws, const double complex* X, bint vectors) nogil:
    cdef char jobz = b'V' if vectors else b'N'
    cdef char uplo = b'L'
    cdef int n = ws.n, info = 0
    memcpy(ws.a, X, n * n * sizeof(double complex))
    zheev(&jobz, &uplo, &n, ws.a, &n, ws.w, ws.work, &ws.lwork, ws.rwork, &info)
    return info


cdef int psdn(Workspace* ws, const double complex* X, double complex* out) nogil:
    """out = positive spectral part of X (both row-major)."""
    cdef int n = ws.n, p, q, j, info
    cdef double lam
    cdef double complex up
    info = heev(ws, X, True)
    if info != 0:
        return info
    for p in range(n * n):
        out[p] = 0.0
    for j in range(n):
        lam = ws.w[j]
        if lam <= 0.0:
            continue
        for p in range(n):
            up = ws.a[j * n + p].conjugate() * lam
            for q in range(n):
                out[p * n + q] = out[p * n + q] + up * ws.a[j * n + q]
    return 0


cdef double lminn(Workspace* ws, const double complex* X) nogil:
    if heev(ws, X, False) != 0:
        return -INFINITY
    return ws.w[0]


cdef tuple _dykstran(double complex[:, ::1] A, double complex[:, ::1] B,
                     double complex[:, ::1] X0, double tol, long max_iter,
                     double stall_tol, long stall_sweeps, double relax):
    cdef int n = A.shape[0], nn = n * n, i, j, info = 0
    cdef long it, stall = 0, status = MAX_ITER, iters = max_iter
    cdef double res = INFINITY, r0, disp
    cdef Workspace ws
    cdef double complex[:, ::1] L = np.ascontiguousarray(A) + np.ascontiguousarray(B) - np.eye(n)
    cdef double complex[:, ::1] x = np.array(X0, dtype=complex, order="C")
    cdef double complex[:, ::1] prev = x.copy()
    cdef double complex[:, :, ::1] inc = np.zeros((4, n, n), dtype=complex)
    cdef double complex[:, ::1] z = np.empty((n, n), dtype=complex)
    cdef double complex[:, ::1] t = np.empty((n, n), dtype=complex)
    cdef double complex[:, ::1] y = np.empty((n, n), dtype=complex)
    cdef double complex* pa = &A[0, 0]
    cdef double complex* pb = &B[0, 0]
    cdef double complex* pl = &L[0, 0]
    cdef double complex* px = &x[0, 0]
    cdef double complex* pz = &z[0, 0]
    cdef double complex* pt = &t[0, 0]
    cdef double complex* py = &y[0, 0]
    cdef double complex* pp = &prev[0, 0]
    cdef double complex* pinc
    cdef double complex d

    if ws_init(&ws, n) != 0:
        ws_free(&ws)
        raise MemoryError()
    try:
        with nogil:
            for it in range(1, max_iter + 1):
                for i in range(4):
                    pinc = &inc[i, 0, 0]
                    for j in range(nn):
                        pz[j] = px[j] + pinc[j]
                    if i == 0:
                        info = psdn(&ws, pz, py)
                    elif i == 1:
                        for j in range(nn):
                            pt[j] = pa[j] - pz[j]
                        info = psdn(&ws, pt, py)
                        for j in range(nn):
                            py[j] = pa[j] - py[j]
                    elif i == 2:
                        for j in range(nn):
                            pt[j] = pb[j] - pz[j]
                        info = psdn(&ws, pt, py)
                        for j in range(nn):
                            py[j] = pb[j] - py[j]
                    else:
                        for j in range(nn):
                            pt[j] = pz[j] - pl[j]
                        info = psdn(&ws, pt, py)
                        for j in range(nn):
                            py[j] = pl[j] + py[j]
                    if info != 0:
                        break
                    if relax > 0.0:
                        for j in range(nn):
                            px[j] = px[j] + relax * (py[j] - px[j])
                    else:
                        for j in range(nn):
                            pinc[j] = pz[j] - py[j]
                            px[j] = py[j]
                if info != 0:
                    break
                res = -lminn(&ws, px)
                for j in range(nn):
                    pt[j] = pa[j] - px[j]
                r0 = -lminn(&ws, pt)
                if r0 > res: res = r0
                for j in range(nn):
                    pt[j] = pb[j] - px[j]
                r0 = -lminn(&ws, pt)
                if r0 > res: res = r0
                for j in range(nn):
                    pt[j] = px[j] - pl[j]
                r0 = -lminn(&ws, pt)
                if r0 > res: res = r0
                if res < 0.0: res = 0.0
                if res <= tol:
                    status = FEASIBLE; iters = it
                    break
                disp = 0.0
                for j in range(nn):
                    d = px[j] - pp[j]
                    disp = disp + d.real * d.real + d.imag * d.imag
                    pp[j] = px[j]
                disp = sqrt(disp)
                if disp < stall_tol:
                    stall += 1
                else:
                    stall = 0
                if stall >= stall_sweeps and res > 10.0 * tol:
                    status = STALLED; iters = it
                    break
    finally:
        ws_free(&ws)
    if info != 0:
        raise np.linalg.LinAlgError(f"zheev failed with info={info}")
    return np.asarray(x).copy(), status, res, iters


def dykstra(A, B, double tol, long max_iter, double stall_tol, long stall_sweeps,
            x0=None, double relax=0.0):
    cdef double complex[:, ::1] a = np.ascontiguousarray(A, dtype=complex)
    cdef double complex[:, ::1] b = np.ascontiguousarray(B, dtype=complex)
    cdef double complex[:, ::1] x
    if x0 is None:
        x = 0.25 * (np.asarray(a) + np.asarray(b))
    else:
        x = np.ascontiguousarray(x0, dtype=complex)
    if a.shape[0] == 2:
        return _dykstra2(a, b, x, tol, max_iter, stall_tol, stall_sweeps, relax)
    return _dykstran(a, b, x, tol, max_iter, stall_tol, stall_sweeps, relax)
