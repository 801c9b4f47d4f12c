"""Complete eigenstructure of a pencil from unitary staircase deflation.

:func:`extract_structure` follows the classical staircase reduction: the
right minimal indices and infinite elementary divisors fall out of repeated
column compressions of the leading coefficient, the left minimal indices
out of the same reduction applied to the transposed remainder, and the
finite elementary divisors out of generalized eigenvalues of the regular
core followed by a staircase on the shifted reversal at each eigenvalue
cluster.

:func:`toeplitz_rank_counts` recovers the same Weyr characteristics from
ranks of block-Toeplitz matrices without any deflation; the two are used
to cross-check each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.cluster.hierarchy import linkage, to_tree
from scipy.spatial.distance import squareform

from .canonical import (
    JordanFinite,
    JordanInfinite,
    LeftMinimal,
    MinimalPair,
    RightMinimal,
    StructureDescriptor,
    build_L,
    descriptor_to_pencil,
)
from .partitions import IntegerPartition
from .pencil import INF, Pencil, SymmetricPencil, as_complex_matrix, evaluate
from .rank import (
    DEFAULT_TOLERANCES,
    IndeterminateStructureError,
    Tolerances,
    decide_rank,
    numerical_rank,
)

__all__ = [
    "normal_rank",
    "extract_structure",
    "toeplitz_rank_counts",
    "AntiTriangularForm",
    "InvalidWitnessError",
    "antitriangular_middle",
    "antitriangular_witness",
    "anti_triangular",
]

# fixed so that extraction is a deterministic function of its input
_EVAL_POINTS = tuple(
    complex(np.sqrt(u) * np.exp(2j * np.pi * v))
    for u, v in np.random.default_rng(20190417).uniform(size=(3, 2))
)
_MERGE_RADIUS = 1e-2


def _scale(p: Pencil) -> float:
    return max(p.norm(), np.finfo(float).tiny)


def normal_rank(p: Pencil, tol: Tolerances = DEFAULT_TOLERANCES) -> int:
    """Rank of ``lambda*A + B`` over the field of rational functions.

    Maximum numerical rank of the pencil evaluated at three fixed points of
    the unit disc and at infinity.  Points whose rank decision has no clear
    gap are ignored; if every point is ambiguous the pencil is too
    ill-conditioned to decide.
    """
    m, n = p.shape
    if m == 0 or n == 0:
        return 0
    scale = _scale(p)
    decisions = [decide_rank(evaluate(p, z), scale, tol) for z in (*_EVAL_POINTS, INF)]
    clear = [d for d in decisions if d.clear]
    if not clear:
        worst = min(decisions, key=lambda d: d.ratio)
        raise IndeterminateStructureError("normal rank is ill-conditioned at every sample point", worst)
    return max(d.rank for d in clear)


# staircase machinery ---------------------------------------------------------


def _null_first(M: np.ndarray, scale: float, tol: Tolerances, what: str) -> tuple[int, np.ndarray]:
    """Unitary ``V`` whose leading columns span the numerical null space of ``M``."""
    m, n = M.shape
    if m == 0 or n == 0:
        return 0, np.eye(n, dtype=np.complex128)
    r = numerical_rank(M, scale, tol, what)
    _, _, Vh = np.linalg.svd(M)
    V = Vh.conj().T
    return r, np.hstack([V[:, r:], V[:, :r]])


def _range_first(M: np.ndarray, scale: float, tol: Tolerances, what: str) -> tuple[int, np.ndarray]:
    """Unitary ``U`` whose leading columns span the numerical range of ``M``."""
    m, n = M.shape
    if m == 0 or n == 0:
        return 0, np.eye(m, dtype=np.complex128)
    r = numerical_rank(M, scale, tol, what)
    U, _, _ = np.linalg.svd(M)
    return r, U


def _staircase(A: np.ndarray, B: np.ndarray, scale: float, tol: Tolerances):
    """Deflate the null space of the leading coefficient of ``lambda*A + B``.

    Returns the staircase widths ``[(n_1, m_1), (n_2, m_2), ...]`` and the
    remaining pencil, whose leading coefficient has full column rank.
    """
    steps = []
    while A.shape[1] > 0:
        ra, V = _null_first(A, scale, tol, "leading coefficient")
        nk = A.shape[1] - ra
        if nk == 0:
            break
        AV, BV = A @ V, B @ V
        mk, U = _range_first(BV[:, :nk], scale, tol, "constant coefficient on the null space")
        Uh = U.conj().T
        A, B = (Uh @ AV)[mk:, nk:], (Uh @ BV)[mk:, nk:]
        steps.append((nk, mk))
    return steps, A, B


def _read_staircase(steps) -> tuple[list[int], list[int]]:
    """Right minimal indices and infinite block sizes from staircase widths."""
    widths = [nk for nk, _ in steps] + [0]
    indices, sizes = [], []
    for k, (nk, mk) in enumerate(steps, start=1):
        n_minimal = nk - mk
        n_blocks = mk - widths[k]
        if n_minimal < 0 or n_blocks < 0:
            raise IndeterminateStructureError(
                f"inconsistent staircase widths {steps}; rank decisions are unreliable"
            )
        indices += [k - 1] * n_minimal
        sizes += [k] * n_blocks
    return indices, sizes


def _jordan_sizes_at(Ac: np.ndarray, Bc: np.ndarray, mu: complex, tol: Tolerances) -> list[int]:
    """Jordan block sizes of the regular pencil ``lambda*Ac + Bc`` at ``mu``.

    The eigenvalue ``mu`` becomes the infinite eigenvalue of the reversed
    shifted pencil ``nu*(Bc + mu*Ac) + Ac``, whose staircase reads it off.
    """
    shifted = Bc + mu * Ac
    scale = max(math.hypot(np.linalg.norm(shifted), np.linalg.norm(Ac)), np.finfo(float).tiny)
    steps, _, _ = _staircase(shifted, Ac, scale, tol)
    indices, sizes = _read_staircase(steps)
    if indices:
        raise IndeterminateStructureError("regular core reported a minimal index")
    return sizes


def _relative_distance(z: complex, w: complex) -> float:
    return abs(z - w) / max(1.0, abs(z), abs(w))


def _cluster(eigs: np.ndarray, Ac: np.ndarray, Bc: np.ndarray, tol: Tolerances) -> list[tuple[complex, list[int]]]:
    """Group eigenvalues into clusters, each with its Jordan block sizes.

    Walks the single-linkage dendrogram top down.  A group whose relative
    diameter is within ``tol.cluster`` is always one cluster.  A wider group
    (up to a coarse radius) is accepted only when the staircase at its
    centroid confirms a multiplicity equal to its size; this is how the
    eigenvalue spread of a perturbed nontrivial Jordan block is recognized.
    Every final cluster must have a confirmed multiplicity.
    """
    eigs = [complex(z) for z in eigs]
    if len(eigs) == 1:
        groups = [eigs]
    else:
        dist = np.array([[_relative_distance(z, w) for w in eigs] for z in eigs])
        root = to_tree(linkage(squareform(dist, checks=False), method="single"))
        groups = []

        def visit(node):
            members = [eigs[i] for i in node.pre_order()]
            diam = max(_relative_distance(z, w) for z in members for w in members)
            if node.is_leaf() or diam <= tol.cluster:
                groups.append(members)
            elif diam <= _MERGE_RADIUS and _multiplicity_matches(members, Ac, Bc, tol):
                groups.append(members)
            else:
                visit(node.get_left())
                visit(node.get_right())

        visit(root)

    out = []
    for members in groups:
        center = complex(np.mean(members))
        sizes = _jordan_sizes_at(Ac, Bc, center, tol)
        if sum(sizes) != len(members):
            raise IndeterminateStructureError(
                f"cluster of {len(members)} eigenvalues near {center:.6g} has "
                f"multiplicity {sum(sizes)} at its centroid"
            )
        out.append((center, sizes))
    return out


def _multiplicity_matches(members, Ac, Bc, tol) -> bool:
    try:
        sizes = _jordan_sizes_at(Ac, Bc, complex(np.mean(members)), tol)
    except IndeterminateStructureError:
        return False
    return sum(sizes) == len(members)


def _is_symmetric(p: Pencil) -> bool:
    if isinstance(p, SymmetricPencil):
        return True
    if not p.is_square:
        return False
    skew = math.hypot(np.linalg.norm(p.A - p.A.T), np.linalg.norm(p.B - p.B.T))
    return skew <= 1e-14 * max(p.norm(), 1.0)


def extract_structure(
    p: Pencil, tol: Tolerances = DEFAULT_TOLERANCES, *, symmetric: bool | None = None
) -> StructureDescriptor:
    """Complete eigenstructure of ``lambda*A + B`` as an orbit-level descriptor.

    Equal left and right minimal indices are paired into ``M_d`` blocks;
    leftovers (only possible for general pencils) become ``L_d``/``L_d^T``.
    For symmetric input the two lists must coincide, otherwise the rank
    decisions were inconsistent and an error is raised.

    Raises
    ------
    IndeterminateStructureError
        Some rank decision had no singular-value gap of at least ``tol.gap``.
    """
    if symmetric is None:
        symmetric = _is_symmetric(p)
    scale = _scale(p)
    A, B = np.array(p.A), np.array(p.B)

    steps, A, B = _staircase(A, B, scale, tol)
    right, infinite = _read_staircase(steps)

    steps_t, At, Bt = _staircase(A.T, B.T, scale, tol)
    left, infinite_t = _read_staircase(steps_t)
    if infinite_t:
        raise IndeterminateStructureError("infinite eigenvalues survived the first staircase pass")
    Ac, Bc = At.T, Bt.T
    if Ac.shape[0] != Ac.shape[1]:
        raise IndeterminateStructureError(f"regular core is not square: {Ac.shape}")

    blocks: list = [JordanInfinite(k) for k in infinite]
    if Ac.shape[0]:
        eigs = scipy.linalg.eigvals(-Bc, Ac)
        if not np.all(np.isfinite(eigs)):
            raise IndeterminateStructureError("regular core has a numerically singular leading coefficient")
        for mu, sizes in _cluster(eigs, Ac, Bc, tol):
            blocks += [JordanFinite(sz, mu) for sz in sizes]

    right, left = sorted(right, reverse=True), sorted(left, reverse=True)
    if symmetric and right != left:
        raise IndeterminateStructureError(
            f"symmetric pencil produced unequal minimal indices: right {right}, left {left}"
        )
    unpaired_left = list(left)
    for d in right:
        if d in unpaired_left:
            unpaired_left.remove(d)
            blocks.append(MinimalPair(d))
        else:
            blocks.append(RightMinimal(d))
    blocks += [LeftMinimal(d) for d in unpaired_left]
    return StructureDescriptor(tuple(blocks))


# block-Toeplitz oracle -------------------------------------------------------


def _stacked(diag: np.ndarray, sub: np.ndarray, k: int, extra_row: bool) -> np.ndarray:
    """Block bidiagonal matrix with `k` copies of `diag` and `sub` just below each."""
    m, n = diag.shape
    nrows = k + 1 if extra_row else k
    T = np.zeros((nrows * m, k * n), dtype=np.complex128)
    for i in range(k):
        T[i * m : (i + 1) * m, i * n : (i + 1) * n] = diag
        if i + 1 < nrows:
            T[(i + 1) * m : (i + 2) * m, i * n : (i + 1) * n] = sub
    return T


def _nullity(T: np.ndarray, scale: float, tol: Tolerances, what: str) -> int:
    return T.shape[1] - numerical_rank(T, scale, tol, what)


def toeplitz_rank_counts(
    p: Pencil, mu=None, kmax: int | None = None, tol: Tolerances = DEFAULT_TOLERANCES
) -> IntegerPartition:
    """Weyr characteristics from ranks of block-Toeplitz expansions.

    Without `mu`, returns the right minimal-index partition ``(r_0, r_1, ...)``:
    the null space of the ``(k+1)m x kn`` matrix with ``B`` on the block
    diagonal and ``A`` below it holds the polynomial null vectors of degree
    below ``k``, so its nullity is ``sum(max(0, k - d_i))``.

    With `mu` (``INF`` allowed), returns ``(h_1, h_2, ...)``: the nullity of
    the ``km x kn`` lower block-bidiagonal matrix with ``B + mu*A`` on the
    diagonal and ``A`` below counts Jordan chains of length ``<= k`` at
    `mu`, plus ``k`` per right minimal index.
    """
    if kmax is not None and kmax < 1:
        raise ValueError("kmax must be >= 1")
    m, n = p.shape
    kmax = n + 1 if kmax is None else kmax
    n_right = n - normal_rank(p, tol)

    if mu is None:
        if n_right == 0:
            return IntegerPartition()
        counts = [n_right]
        prev = 0
        for k in range(1, kmax + 1):
            T = _stacked(np.asarray(p.B), np.asarray(p.A), k, extra_row=True)
            N = _nullity(T, _scale(p) * math.sqrt(k), tol, f"block-Toeplitz T_{k}")
            low = N - prev  # indices d <= k-1
            prev = N
            if low > n_right or low < 0:
                raise IndeterminateStructureError(f"block-Toeplitz nullities are not monotone at k={k}")
            if low == n_right:
                break
            counts.append(n_right - low)
        return IntegerPartition(counts)

    if isinstance(mu, float) and math.isinf(mu):
        diag, sub = np.asarray(p.A), np.asarray(p.B)
    else:
        diag, sub = np.asarray(p.B) + complex(mu) * np.asarray(p.A), np.asarray(p.A)
    base = max(math.hypot(np.linalg.norm(diag), np.linalg.norm(sub)), np.finfo(float).tiny)
    counts, prev = [], 0
    for k in range(1, kmax + 1):
        T = _stacked(diag, sub, k, extra_row=False)
        N = _nullity(T, base * math.sqrt(k), tol, f"shifted block-Toeplitz T_{k}")
        h = N - prev - n_right
        prev = N
        if h < 0:
            raise IndeterminateStructureError(f"negative Jordan count at k={k}")
        if counts and h > counts[-1]:
            raise IndeterminateStructureError(f"Jordan counts increase at k={k}")
        if h == 0:
            break
        counts.append(h)
    return IntegerPartition(counts)


# block anti-triangular form ---------------------------------------------------


class InvalidWitnessError(ValueError):
    """The supplied congruence witness does not reproduce the pencil."""


def antitriangular_middle(structure: StructureDescriptor) -> tuple[SymmetricPencil, np.ndarray, tuple[int, int, int]]:
    """The middle pencil ``[[0, 0, L], [0, J, 0], [L^T, 0, 0]]`` for a symmetric structure.

    ``L`` places ``L_{d_t}, ..., L_{d_1}`` on its block anti-diagonal (top
    right to bottom left), where ``d_1 >= ... >= d_t`` are the minimal
    indices in canonical order; ``L_0`` contributes a zero column.  ``J`` is
    the direct sum of the Jordan-like blocks in canonical order.

    Returns the middle pencil ``K``, a permutation matrix ``P`` with
    ``descriptor_to_pencil(structure) == P.T @ K @ P``, and the block sizes
    ``(c, rho, c + p)``.
    """
    if structure.level != "orbit" or not structure.is_symmetric:
        raise ValueError("need an orbit-level symmetric structure")
    ds = [b.d for b in structure.blocks if isinstance(b, MinimalPair)]
    jordan = [b for b in structure.blocks if not isinstance(b, MinimalPair)]
    c = sum(ds)
    rho = sum(b.size for b in jordan)
    cols = c + len(ds)
    n = c + rho + cols

    A = np.zeros((n, n), dtype=np.complex128)
    B = np.zeros_like(A)
    perm = np.empty(n, dtype=int)  # canonical index -> middle index
    pos = 0
    row_off = [sum(ds[i + 1 :]) for i in range(len(ds))]
    col_off = [c + rho + sum(d + 1 for d in ds[:i]) for i in range(len(ds))]
    for d, r0, c0 in zip(ds, row_off, col_off):
        L = build_L(d)
        A[r0 : r0 + d, c0 : c0 + d + 1] = L.A
        B[r0 : r0 + d, c0 : c0 + d + 1] = L.B
        A[c0 : c0 + d + 1, r0 : r0 + d] = L.A.T
        B[c0 : c0 + d + 1, r0 : r0 + d] = L.B.T
        perm[pos : pos + d + 1] = np.arange(c0, c0 + d + 1)
        perm[pos + d + 1 : pos + 2 * d + 1] = np.arange(r0, r0 + d)
        pos += 2 * d + 1
    if jordan:
        J = descriptor_to_pencil(StructureDescriptor(tuple(jordan)))
        A[c : c + rho, c : c + rho] = J.A
        B[c : c + rho, c : c + rho] = J.B
    perm[pos:] = np.arange(c, c + rho)
    P = np.zeros((n, n))
    P[perm, np.arange(n)] = 1.0
    return SymmetricPencil(A, B), P, (c, rho, cols)


def antitriangular_witness(structure: StructureDescriptor, W0) -> np.ndarray:
    """Witness ``W`` for ``s = W0^T C W0`` with ``C = descriptor_to_pencil(structure)``."""
    _, P, _ = antitriangular_middle(structure)
    return P @ as_complex_matrix(W0)


@dataclass(frozen=True, eq=False)
class AntiTriangularForm:
    """``s = Q^T [[A, B, S_right], [B^T, S_reg, 0], [S_right^T, 0, 0]] Q`` with ``Q`` unitary."""

    Q: np.ndarray
    A: SymmetricPencil
    B: Pencil
    S_reg: SymmetricPencil
    S_right: Pencil | None
    sizes: tuple[int, int, int]
    residual: float

    def assembled(self) -> SymmetricPencil:
        c, rho, w = self.sizes
        n = c + rho + w
        S_right = self.S_right if self.S_right is not None else Pencil.zeros(0, w)
        out = []
        for coeff in ("A", "B"):
            Z = np.zeros((n, n), dtype=np.complex128)
            Z[:c, :c] = getattr(self.A, coeff)
            Z[:c, c : c + rho] = getattr(self.B, coeff)
            Z[c : c + rho, :c] = getattr(self.B, coeff).T
            Z[c : c + rho, c : c + rho] = getattr(self.S_reg, coeff)
            Z[:c, c + rho :] = getattr(S_right, coeff)
            Z[c + rho :, :c] = getattr(S_right, coeff).T
            out.append(Z)
        return SymmetricPencil(*out)

    def reconstruct(self) -> SymmetricPencil:
        Z = self.assembled()
        Q = self.Q
        return SymmetricPencil.from_pencil(
            Pencil(Q.T @ Z.A @ Q, Q.T @ Z.B @ Q), symmetrize=True, tol=1e-8
        )


def anti_triangular(
    s: SymmetricPencil, W, structure: StructureDescriptor, *, tol: float = 1e-10
) -> AntiTriangularForm:
    """Block anti-triangular form of `s` given a congruence witness.

    `W` must satisfy ``s = W^T K W`` where ``K`` is
    ``antitriangular_middle(structure)[0]``.  With ``W^T = Q^T R`` (``R``
    upper triangular with positive diagonal), the blocks are read off
    ``R K R^T`` with the structural zeros placed exactly.
    """
    K, _, (c, rho, w) = antitriangular_middle(structure)
    W = as_complex_matrix(W)
    n = s.n
    if K.shape != (n, n) or W.shape != (n, n):
        raise InvalidWitnessError(f"structure realizes size {K.shape[0]}, pencil has size {n}")
    ref = max(s.norm(), 1.0)
    mismatch = math.hypot(np.linalg.norm(W.T @ K.A @ W - s.A), np.linalg.norm(W.T @ K.B @ W - s.B))
    if mismatch > tol * ref * max(1.0, np.linalg.norm(W) ** 2):
        raise InvalidWitnessError(f"W^T K W differs from the pencil by {mismatch:.3e}")

    Qt, R = np.linalg.qr(W.T)
    phase = np.diag(R) / np.where(np.abs(np.diag(R)) > 0, np.abs(np.diag(R)), 1.0)
    Qt = Qt * phase
    R = phase.conj()[:, None] * R
    Q = Qt.T

    i1, i2 = slice(0, c), slice(c, c + rho)
    i3 = slice(c + rho, n)
    R11, R12, R13 = R[i1, i1], R[i1, i2], R[i1, i3]
    R22, R23, R33 = R[i2, i2], R[i2, i3], R[i3, i3]

    def parts(X):
        L = X[i1, i3]
        J = X[i2, i2]
        a = R13 @ L.T @ R11.T + R12 @ J @ R12.T + R11 @ L @ R13.T
        b = R12 @ J @ R22.T + R11 @ L @ R23.T
        return (a + a.T) / 2, b, R11 @ L @ R33.T, R22 @ J @ R22.T

    aA, bA, rA, gA = parts(K.A)
    aB, bB, rB, gB = parts(K.B)
    S_reg_B = (gB + gB.T) / 2
    S_reg_A = (gA + gA.T) / 2
    form = AntiTriangularForm(
        Q=Q,
        A=SymmetricPencil(aA, aB),
        B=Pencil(bA, bB),
        S_reg=SymmetricPencil(S_reg_A, S_reg_B),
        S_right=Pencil(rA, rB) if c > 0 else None,
        sizes=(c, rho, w),
        residual=0.0,
    )
    rec = form.reconstruct()
    residual = (rec - s).norm() / ref
    object.__setattr__(form, "residual", float(residual))
    return form
