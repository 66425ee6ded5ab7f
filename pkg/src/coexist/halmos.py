"""Canonical decomposition of the algebra generated by two projections.

For projections ``P1, P2`` the space splits as ``K (+) K^perp`` where
``K^perp = ker [P1, P2]`` is the commutation domain. On ``K`` there is an
orthonormal basis of pairs ``(e, f)`` in which

    P1 = (1 + sigma_z) / 2,    P2 = (1 + sin(theta) sigma_x + cos(theta) sigma_z) / 2

for angles ``theta`` in ``(0, pi)``: the eigenvalues of
``arccos(2H - 1)`` with ``H = P1 P2 P1`` restricted to ``K0 = K cap ran P1``.
On ``K^perp`` both projections are diagonal and every algebra element is a
scalar on each of the four joint eigenspaces. Every algebra element is
therefore a :class:`BlockFunction`: one 2x2 block per distinct angle plus
four scalars.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from . import matrix_core as mc
from .effects import is_projection
from .errors import DegenerateAngle, DimensionMismatch, NotAProjection, NotInAlgebra, ShapeMismatch
from .qubit import SIGMA_X, SIGMA_Z

#: labels of the commutation-domain subspaces, as values of (P1, P2)
COMM_LABELS = ((1, 1), (1, 0), (0, 1), (0, 0))

DEFAULT_TOL = 1e-8


def canonical_p1_block() -> np.ndarray:
    return 0.5 * (np.eye(2) + SIGMA_Z)


def canonical_p2_block(theta: float) -> np.ndarray:
    return 0.5 * (np.eye(2) + math.sin(theta) * SIGMA_X + math.cos(theta) * SIGMA_Z)


@dataclass(frozen=True, eq=False)
class TwoProjectionDecomposition:
    """Result of :func:`decompose`.

    ``canonical_basis`` columns are ordered as ``(e, f)`` pairs grouped by
    angle (ascending, each repeated ``multiplicity`` times), followed by the
    four commutation-domain groups in :data:`COMM_LABELS` order.
    """

    dim: int
    thetas: tuple[tuple[float, int], ...]
    canonical_basis: np.ndarray
    comm_split: tuple[int, int, int, int]
    swapped: bool = False

    @property
    def angles(self) -> np.ndarray:
        return np.array([th for th, _ in self.thetas])

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.thetas)

    @property
    def h_values(self) -> np.ndarray:
        """Spectrum of ``H``: ``cos^2(theta / 2)`` for each angle."""
        return np.cos(0.5 * self.angles) ** 2

    @property
    def k_dim(self) -> int:
        return 2 * sum(self.multiplicities)

    def pair_slices(self) -> list[list[slice]]:
        """Column slices of each (e, f) pair, grouped per angle."""
        return self._slices[0]

    def comm_slices(self) -> list[slice]:
        return self._slices[1]

    @functools.cached_property
    def _slices(self):
        out, pos = [], 0
        for _, m in self.thetas:
            group = []
            for _ in range(m):
                group.append(slice(pos, pos + 2))
                pos += 2
            out.append(group)
        comm = []
        for d in self.comm_split:
            comm.append(slice(pos, pos + d))
            pos += d
        return out, comm

    def to_canonical(self, A) -> np.ndarray:
        U = self.canonical_basis
        return U.conj().T @ np.asarray(A) @ U

    def from_canonical(self, M) -> np.ndarray:
        U = self.canonical_basis
        return U @ np.asarray(M) @ U.conj().T


@dataclass(frozen=True, eq=False)
class BlockFunction:
    """Image of an algebra element: 2x2 blocks per angle, four scalars.

    ``scalars[k]`` is ``None`` when the k-th commutation-domain subspace is
    zero-dimensional.
    """

    blocks: tuple[np.ndarray, ...]
    scalars: tuple[float | None, float | None, float | None, float | None]

    def map(self, f) -> "BlockFunction":
        """Apply a scalar function through the functional calculus on every piece."""
        blocks = tuple(mc.apply_spectral(M, f) for M in self.blocks)
        scalars = tuple(None if s is None else float(f(s)) for s in self.scalars)
        return BlockFunction(blocks, scalars)


def _check_projection(P, name: str, tol: float) -> np.ndarray:
    try:
        M = mc.as_hermitian(P)
    except ValueError as exc:
        raise NotAProjection(f"{name}: {exc}") from exc
    if not is_projection(M, max(tol, mc.TOL.effect)):
        raise NotAProjection(f"{name} is not a projection (|P^2 - P| = {mc.opnorm(M @ M - M):.3e})")
    return M


def central_element(P1, P2, tol: float = DEFAULT_TOL) -> np.ndarray:
    """``C = 1 - (P1 - P2)^2``; checked against both product factorizations."""
    p1 = _check_projection(P1, "P1", tol)
    p2 = _check_projection(P2, "P2", tol)
    if p1.shape != p2.shape:
        raise DimensionMismatch("P1 and P2 have different dimensions")
    eye = np.eye(p1.shape[0])
    D = p1 - p2
    C = eye - D @ D
    q1, q2 = eye - p1, eye - p2
    scale = mc.TOL.recon * 10 * max(1.0, p1.shape[0])
    for alt in (p1 @ p2 @ p1 + q1 @ q2 @ q1, p2 @ p1 @ p2 + q2 @ q1 @ q2):
        dev = mc.opnorm(C - alt)
        if dev > max(scale, 10 * tol):
            raise NotAProjection(f"central element factorizations disagree ({dev:.3e})")
    return 0.5 * (C + C.conj().T)


def _kernel_split(p1: np.ndarray, p2: np.ndarray, tol: float):
    """Orthonormal bases (columns) of K and of K^perp = ker [P1, P2]."""
    # i[P1, P2] is Hermitian with eigenvalues +-sqrt(h (1 - h)) on K
    sd = mc.eig_hermitian(1j * mc.commutator(p1, p2))
    small = np.abs(sd.eigenvalues) <= tol
    return sd.eigenvectors[:, ~small], sd.eigenvectors[:, small]


def commutation_kernel(P1, P2, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the commutation domain ``ker [P1, P2]``."""
    p1 = _check_projection(P1, "P1", tol)
    p2 = _check_projection(P2, "P2", tol)
    if p1.shape != p2.shape:
        raise DimensionMismatch("P1 and P2 have different dimensions")
    return _kernel_split(p1, p2, tol)[1]


def _eigenspace_split(M: np.ndarray, basis: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split span(basis) into the 1- and 0-eigenspaces of the projection M there."""
    if basis.shape[1] == 0:
        return basis, basis
    sd = mc.eig_hermitian(basis.conj().T @ M @ basis)
    ones = sd.eigenvalues > 0.5
    V = basis @ sd.eigenvectors
    return V[:, ones], V[:, ~ones]


def _rank(P: np.ndarray) -> int:
    return int(round(np.trace(P).real))


def decompose(P1, P2, tol: float = DEFAULT_TOL, swap: bool | None = None) -> TwoProjectionDecomposition:
    """Canonical two-projection decomposition.

    The construction starts from the projection of smaller rank (ties go to
    ``P1``); ``swap`` forces the choice. When swapped, ``P2``
    takes the ``(1 + sigma_z) / 2`` role in the canonical blocks.
    """
    p1 = _check_projection(P1, "P1", tol)
    p2 = _check_projection(P2, "P2", tol)
    if p1.shape != p2.shape:
        raise DimensionMismatch("P1 and P2 have different dimensions")
    n = p1.shape[0]
    Kb, Nb = _kernel_split(p1, p2, tol)

    if swap is None:
        # on K both ranks equal dim(K) / 2, so compare on the whole space
        swap = _rank(p1) > _rank(p2)
    first, second = (p2, p1) if swap else (p1, p2)

    # K0 = K cap ran(first)
    K0, _ = _eigenspace_split(first, Kb)
    m = K0.shape[1]
    if 2 * m != Kb.shape[1]:
        raise DegenerateAngle(
            f"K has dimension {Kb.shape[1]} but its intersection with the range has {m}"
        )

    pairs_by_angle: list[tuple[float, list[tuple[np.ndarray, np.ndarray]]]] = []
    if m:
        H = K0.conj().T @ first @ second @ first @ K0
        sd = mc.eig_hermitian(H)
        E = K0 @ sd.eigenvectors
        q = np.eye(n) - first
        for idx in sd.clusters(mc.TOL.cluster):
            h = float(np.mean(sd.eigenvalues[idx]))
            if math.sqrt(max(h * (1.0 - h), 0.0)) <= 0.5 * tol:
                raise DegenerateAngle(f"H eigenvalue {h!r} sits at the boundary of [0, 1]")
            theta = math.acos(min(1.0, max(-1.0, 2.0 * h - 1.0)))
            group = []
            for j in idx:
                e = E[:, j]
                f = q @ second @ e
                f = f / np.linalg.norm(f)
                group.append((e, f))
            pairs_by_angle.append((theta, group))
    # ascending angle means descending h
    pairs_by_angle.sort(key=lambda item: item[0])

    # four joint eigenspaces on the commutation domain, labeled by (P1, P2)
    on1, on0 = _eigenspace_split(p1, Nb)
    s11, s10 = _eigenspace_split(p2, on1)
    s01, s00 = _eigenspace_split(p2, on0)
    comm = (s11, s10, s01, s00)

    cols = []
    for _, group in pairs_by_angle:
        for e, f in group:
            cols.extend([e, f])
    U = np.column_stack(cols + [c for S in comm for c in S.T]) if n else np.zeros((0, 0), complex)
    U = U.astype(complex)
    return TwoProjectionDecomposition(
        dim=n,
        thetas=tuple((th, len(g)) for th, g in pairs_by_angle),
        canonical_basis=U,
        comm_split=tuple(S.shape[1] for S in comm),
        swapped=bool(swap),
    )


def canonical_residuals(P1, P2, d: TwoProjectionDecomposition) -> dict[str, float]:
    """Max deviations of the decomposition from its defining properties."""
    U = d.canonical_basis
    n = d.dim
    first, second = (P2, P1) if d.swapped else (P1, P2)
    expected_first = np.zeros((n, n), complex)
    expected_second = np.zeros((n, n), complex)
    for (theta, _), group in zip(d.thetas, d.pair_slices()):
        for sl in group:
            expected_first[sl, sl] = canonical_p1_block()
            expected_second[sl, sl] = canonical_p2_block(theta)
    p1_diag, p2_diag = [], []
    for (v1, v2), sl in zip(COMM_LABELS, d.comm_slices()):
        p1_diag += [v1] * (sl.stop - sl.start)
        p2_diag += [v2] * (sl.stop - sl.start)
    k = d.k_dim
    P1c = d.to_canonical(P1)
    P2c = d.to_canonical(P2)
    if d.swapped:
        expected_p1, expected_p2 = expected_second, expected_first
    else:
        expected_p1, expected_p2 = expected_first, expected_second
    expected_p1[k:, k:] = np.diag(p1_diag)
    expected_p2[k:, k:] = np.diag(p2_diag)
    return {
        "unitarity": mc.opnorm(U.conj().T @ U - np.eye(n)),
        "p1": mc.opnorm(P1c - expected_p1),
        "p2": mc.opnorm(P2c - expected_p2),
    }


def _extract(A, d: TwoProjectionDecomposition):
    M = np.asarray(d.to_canonical(mc.as_hermitian(A)))
    n = d.dim
    template = np.zeros((n, n), complex)
    blocks = []
    for group in d.pair_slices():
        if len(group) == 1:
            blk = M[group[0], group[0]]
        else:
            blk = sum(M[sl, sl] for sl in group) / len(group)
        blk = 0.5 * (blk + blk.conj().T)
        blocks.append(blk)
        for sl in group:
            template[sl, sl] = blk
    scalars = []
    for sl in d.comm_slices():
        size = sl.stop - sl.start
        if size == 0:
            scalars.append(None)
            continue
        val = float(np.trace(M[sl, sl]).real) / size
        scalars.append(val)
        template[sl, sl] = val * np.eye(size)
    return M, template, BlockFunction(tuple(blocks), tuple(scalars))


def _violation(M: np.ndarray, template: np.ndarray) -> tuple[float, str]:
    diff = np.abs(M - template)
    if diff.size == 0:
        return 0.0, ""
    i, j = np.unravel_index(int(np.argmax(diff)), diff.shape)
    return float(diff[i, j]), f"canonical entry ({i}, {j})"


def in_algebra(A, d: TwoProjectionDecomposition, tol: float = DEFAULT_TOL) -> bool:
    """Membership in the algebra generated by the decomposition's projections.

    In canonical coordinates ``A`` must be block diagonal with equal 2x2
    blocks across each angle's multiplicity and scalar on each
    commutation-domain subspace.
    """
    M = np.asarray(A)
    if M.shape != (d.dim, d.dim):
        raise DimensionMismatch(f"operator has shape {M.shape}, decomposition has dim {d.dim}")
    M, template, _ = _extract(A, d)
    viol, _ = _violation(M, template)
    return viol <= tol or viol <= tol * mc.opnorm(M)


def block_of(A, d: TwoProjectionDecomposition, tol: float = DEFAULT_TOL) -> BlockFunction:
    """Block function of an algebra element; raises :class:`NotInAlgebra` otherwise.

    Blocks of one angle are averaged over its multiplicity (they agree within
    ``tol`` for members), so no particular basis vector is singled out.
    """
    M = np.asarray(A)
    if M.shape != (d.dim, d.dim):
        raise DimensionMismatch(f"operator has shape {M.shape}, decomposition has dim {d.dim}")
    M, template, bf = _extract(A, d)
    viol, where = _violation(M, template)
    if viol > tol and viol > tol * mc.opnorm(M):
        raise NotInAlgebra(viol, where)
    return bf


def reconstruct(bf: BlockFunction, d: TwoProjectionDecomposition) -> np.ndarray:
    """Inverse of :func:`block_of`."""
    if len(bf.blocks) != len(d.thetas):
        raise ShapeMismatch(f"{len(bf.blocks)} blocks for {len(d.thetas)} angles")
    if len(bf.scalars) != 4:
        raise ShapeMismatch("need exactly four commutation-domain scalars")
    n = d.dim
    M = np.zeros((n, n), complex)
    for blk, group in zip(bf.blocks, d.pair_slices()):
        blk = np.asarray(blk, dtype=complex)
        if blk.shape != (2, 2):
            raise ShapeMismatch(f"block has shape {blk.shape}")
        for sl in group:
            M[sl, sl] = blk
    for val, sl, size in zip(bf.scalars, d.comm_slices(), d.comm_split):
        if size == 0:
            continue
        if val is None:
            raise ShapeMismatch("missing scalar for a non-empty commutation-domain subspace")
        M[sl, sl] = val * np.eye(size)
    A = d.from_canonical(M)
    return 0.5 * (A + A.conj().T)


def random_block_function(d: TwoProjectionDecomposition, rng, effect: bool = True) -> BlockFunction:
    """Random block function; with ``effect`` every piece lies in [0, 1]."""
    from .sampling import random_qubit_effect

    blocks = []
    for _ in d.thetas:
        if effect:
            blocks.append(random_qubit_effect(rng).matrix())
        else:
            X = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            blocks.append(0.5 * (X + X.conj().T))
    scalars = tuple(
        None if size == 0 else float(rng.uniform(0, 1) if effect else rng.normal())
        for size in d.comm_split
    )
    return BlockFunction(tuple(blocks), scalars)
