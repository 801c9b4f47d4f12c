"""Canonical blocks for congruence of symmetric pencils and structure descriptors.

Block conventions (``lambda*A + B``):

* ``MinimalPair(d)``: ``M_d = [[0, L_d^T], [L_d, 0]]``, size ``2d+1``; ``M_0`` is the 1x1 zero.
* ``JordanFinite(l, mu)``: anti-diagonal ``lambda - mu`` with ones on the anti-diagonal above it.
* ``JordanInfinite(k)``: anti-diagonal ones with ``lambda`` on the anti-diagonal above it.

``RightMinimal``/``LeftMinimal`` describe the unpaired ``L_d``/``L_d^T`` blocks that
appear when extracting the structure of a general (non-symmetric or non-square)
pencil, and ``AnonymousJordan`` is the bundle-level stand-in for a Jordan block
whose eigenvalue has been forgotten.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence, Union

import numpy as np

from .partitions import IntegerPartition
from .pencil import INF, Pencil, SymmetricPencil, block_diag, pencil_direct_sum

__all__ = [
    "MinimalPair",
    "JordanFinite",
    "JordanInfinite",
    "RightMinimal",
    "LeftMinimal",
    "AnonymousJordan",
    "CanonicalBlock",
    "StructureDescriptor",
    "GenericComponent",
    "build_L",
    "build_block",
    "direct_sum",
    "generic_kcf",
    "descriptor_to_pencil",
    "weyr_minimal",
    "weyr_eigenvalue",
    "sample_eigenvalues",
]


@dataclass(frozen=True)
class MinimalPair:
    d: int

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("minimal index must be >= 0")

    @property
    def shape(self) -> tuple[int, int]:
        return (2 * self.d + 1, 2 * self.d + 1)


@dataclass(frozen=True)
class JordanFinite:
    size: int
    mu: complex

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("Jordan block size must be >= 1")
        object.__setattr__(self, "mu", complex(self.mu))
        if not np.isfinite(self.mu):
            raise ValueError("finite eigenvalue expected; use JordanInfinite for infinity")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.size, self.size)


@dataclass(frozen=True)
class JordanInfinite:
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("Jordan block size must be >= 1")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.size, self.size)


@dataclass(frozen=True)
class RightMinimal:
    """``L_d``, a ``d x (d+1)`` block carrying one right minimal index."""

    d: int

    @property
    def shape(self) -> tuple[int, int]:
        return (self.d, self.d + 1)


@dataclass(frozen=True)
class LeftMinimal:
    """``L_d^T``, a ``(d+1) x d`` block carrying one left minimal index."""

    d: int

    @property
    def shape(self) -> tuple[int, int]:
        return (self.d + 1, self.d)


@dataclass(frozen=True)
class AnonymousJordan:
    """Bundle-level Jordan block; blocks sharing `group` share one (unknown) eigenvalue."""

    size: int
    group: int

    @property
    def shape(self) -> tuple[int, int]:
        return (self.size, self.size)


CanonicalBlock = Union[MinimalPair, JordanFinite, JordanInfinite, RightMinimal, LeftMinimal, AnonymousJordan]
_JORDAN = (JordanFinite, JordanInfinite, AnonymousJordan)


def _block_sort_key(b) -> tuple:
    if isinstance(b, MinimalPair):
        return (0, -b.d)
    if isinstance(b, RightMinimal):
        return (1, -b.d)
    if isinstance(b, LeftMinimal):
        return (2, -b.d)
    if isinstance(b, JordanFinite):
        return (3, b.mu.real, b.mu.imag, -b.size)
    if isinstance(b, JordanInfinite):
        return (4, -b.size)
    return (5, b.group, -b.size)


@dataclass(frozen=True)
class StructureDescriptor:
    """A multiset of canonical blocks, at orbit level (eigenvalues known) or bundle level.

    Blocks are stored in canonical order, so two descriptors built from the
    same multiset compare equal.
    """

    blocks: tuple
    level: Literal["orbit", "bundle"] = "orbit"

    def __post_init__(self):
        if self.level not in ("orbit", "bundle"):
            raise ValueError(f"unknown level {self.level!r}")
        blocks = tuple(sorted(self.blocks, key=_block_sort_key))
        for b in blocks:
            if self.level == "orbit" and isinstance(b, AnonymousJordan):
                raise ValueError("anonymous Jordan blocks only exist at bundle level")
            if self.level == "bundle" and isinstance(b, (JordanFinite, JordanInfinite)):
                raise ValueError("bundle-level descriptors carry anonymous eigenvalues only")
        object.__setattr__(self, "blocks", blocks)

    # sizes and ranks -------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (sum(b.shape[0] for b in self.blocks), sum(b.shape[1] for b in self.blocks))

    @property
    def n(self) -> int:
        rows, cols = self.shape
        if rows != cols:
            raise ValueError(f"descriptor realizes a non-square {rows}x{cols} pencil")
        return rows

    @property
    def is_symmetric(self) -> bool:
        return not any(isinstance(b, (RightMinimal, LeftMinimal)) for b in self.blocks)

    def right_minimal_indices(self) -> list[int]:
        return sorted(
            (b.d for b in self.blocks if isinstance(b, (MinimalPair, RightMinimal))), reverse=True
        )

    def left_minimal_indices(self) -> list[int]:
        return sorted(
            (b.d for b in self.blocks if isinstance(b, (MinimalPair, LeftMinimal))), reverse=True
        )

    @property
    def rank(self) -> int:
        """Normal rank: columns minus the number of right minimal indices."""
        return self.shape[1] - len(self.right_minimal_indices())

    @property
    def degree_sum(self) -> int:
        """Sum of the right minimal indices."""
        return sum(self.right_minimal_indices())

    # eigenvalues -----------------------------------------------------------

    def jordan_blocks(self) -> list:
        return [b for b in self.blocks if isinstance(b, _JORDAN)]

    def eigenvalue_groups(self) -> dict:
        """Map eigenvalue label to the descending tuple of its Jordan block sizes.

        Labels are complex numbers, ``INF``, or integer group ids at bundle level.
        """
        groups: dict = defaultdict(list)
        for b in self.jordan_blocks():
            if isinstance(b, JordanFinite):
                groups[b.mu].append(b.size)
            elif isinstance(b, JordanInfinite):
                groups[INF].append(b.size)
            else:
                groups[b.group].append(b.size)
        return {k: tuple(sorted(v, reverse=True)) for k, v in groups.items()}

    @property
    def num_distinct_eigenvalues(self) -> int:
        return len(self.eigenvalue_groups())

    def simple_eigenvalue_count(self) -> int:
        return sum(1 for sizes in self.eigenvalue_groups().values() if sizes == (1,))

    @property
    def regular_size(self) -> int:
        return sum(b.size for b in self.jordan_blocks())

    # level changes and comparisons -----------------------------------------

    def to_bundle(self) -> "StructureDescriptor":
        if self.level == "bundle":
            return self
        groups = sorted(self.eigenvalue_groups().values(), reverse=True)
        blocks = [b for b in self.blocks if not isinstance(b, _JORDAN)]
        for g, sizes in enumerate(groups):
            blocks.extend(AnonymousJordan(s, g) for s in sizes)
        return StructureDescriptor(tuple(blocks), "bundle")

    def bundle_key(self) -> tuple:
        singular = tuple(
            sorted(
                ((type(b).__name__, b.d) for b in self.blocks if not isinstance(b, _JORDAN)),
                key=lambda t: (t[0], -t[1]),
            )
        )
        return singular, tuple(sorted(self.eigenvalue_groups().values(), reverse=True))

    def same_bundle(self, other: "StructureDescriptor") -> bool:
        return self.bundle_key() == other.bundle_key()

    def same_orbit(self, other: "StructureDescriptor", tol: float = 1e-6) -> bool:
        """Structural equality with eigenvalues matched within ``tol * max(1, |mu|)``."""
        if self.level != "orbit" or other.level != "orbit":
            raise ValueError("orbit comparison needs orbit-level descriptors")
        if self.bundle_key()[0] != other.bundle_key()[0]:
            return False
        mine, theirs = self.eigenvalue_groups(), other.eigenvalue_groups()
        if len(mine) != len(theirs):
            return False
        unmatched = dict(theirs)
        for mu, sizes in mine.items():
            hit = None
            for nu, other_sizes in unmatched.items():
                if other_sizes == sizes and _same_eigenvalue(mu, nu, tol):
                    hit = nu
                    break
            if hit is None:
                return False
            del unmatched[hit]
        return True

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def summary(self) -> str:
        """Human-readable block list, e.g. ``M_1 + M_0 + J_1(2) + J_2(inf)``."""
        parts = []
        for b in self.blocks:
            if isinstance(b, MinimalPair):
                parts.append(f"M_{b.d}")
            elif isinstance(b, RightMinimal):
                parts.append(f"L_{b.d}")
            elif isinstance(b, LeftMinimal):
                parts.append(f"L_{b.d}^T")
            elif isinstance(b, JordanFinite):
                parts.append(f"J_{b.size}({_fmt_complex(b.mu)})")
            elif isinstance(b, JordanInfinite):
                parts.append(f"J_{b.size}(inf)")
            else:
                parts.append(f"J_{b.size}(mu{b.group})")
        return " + ".join(parts) if parts else "(empty)"


def _same_eigenvalue(mu, nu, tol: float) -> bool:
    mu_inf = isinstance(mu, float) and math.isinf(mu)
    nu_inf = isinstance(nu, float) and math.isinf(nu)
    if mu_inf or nu_inf:
        return mu_inf and nu_inf
    return abs(mu - nu) <= tol * max(1.0, abs(mu), abs(nu))


def _fmt_complex(z: complex) -> str:
    if z.imag == 0:
        return f"{z.real:.6g}"
    return f"{z.real:.6g}{z.imag:+.6g}j"


@dataclass(frozen=True)
class GenericComponent:
    """One of the ``floor(r/2) + 1`` generic structures of ``n x n`` symmetric pencils of rank <= r."""

    n: int
    r: int
    a: int

    def __post_init__(self):
        if not (self.n >= 2 and 1 <= self.r <= self.n - 1):
            raise ValueError(f"need n >= 2 and 1 <= r <= n-1, got n={self.n}, r={self.r}")
        if not 0 <= self.a <= self.r // 2:
            raise ValueError(f"need 0 <= a <= floor(r/2) = {self.r // 2}, got a={self.a}")

    @property
    def alpha(self) -> int:
        return self.a // (self.n - self.r)

    @property
    def s(self) -> int:
        return self.a % (self.n - self.r)

    @property
    def num_eigenvalues(self) -> int:
        return self.r - 2 * self.a

    @classmethod
    def all_for(cls, n: int, r: int) -> list["GenericComponent"]:
        return [cls(n, r, a) for a in range(r // 2 + 1)]

    def bundle_descriptor(self) -> StructureDescriptor:
        blocks = [MinimalPair(self.alpha + 1)] * self.s
        blocks += [MinimalPair(self.alpha)] * (self.n - self.r - self.s)
        blocks += [AnonymousJordan(1, g) for g in range(self.num_eigenvalues)]
        return StructureDescriptor(tuple(blocks), "bundle")


# block constructors ---------------------------------------------------------


def build_L(d: int) -> Pencil:
    """``L_d = lambda*G_d + F_d``: ``G_d = [I_d | 0]``, ``F_d = [0 | I_d]``."""
    if d < 0:
        raise ValueError("d must be >= 0")
    G = np.eye(d, d + 1, dtype=np.complex128)
    F = np.eye(d, d + 1, k=1, dtype=np.complex128)
    return Pencil(G, F)


def _anti_eye(n: int, offset: int = 0) -> np.ndarray:
    """Ones where ``i + j == n - 1 - offset``."""
    return np.fliplr(np.eye(n, k=offset, dtype=np.complex128)) if n else np.zeros((0, 0), complex)


def build_block(b) -> Pencil:
    """The explicit pencil realizing a canonical block."""
    if isinstance(b, MinimalPair):
        L = build_L(b.d)
        k = b.d + 1
        A = np.zeros((2 * b.d + 1,) * 2, dtype=np.complex128)
        B = np.zeros_like(A)
        A[:k, k:] = L.A.T
        A[k:, :k] = L.A
        B[:k, k:] = L.B.T
        B[k:, :k] = L.B
        return SymmetricPencil(A, B)
    if isinstance(b, JordanFinite):
        A = _anti_eye(b.size)
        return SymmetricPencil(A, -b.mu * A + _anti_eye(b.size, 1))
    if isinstance(b, JordanInfinite):
        return SymmetricPencil(_anti_eye(b.size, 1), _anti_eye(b.size))
    if isinstance(b, RightMinimal):
        return build_L(b.d)
    if isinstance(b, LeftMinimal):
        return build_L(b.d).transpose()
    raise TypeError(f"cannot realize {b!r}; bundle-level blocks carry no eigenvalue")


def direct_sum(blocks: Sequence[SymmetricPencil]) -> SymmetricPencil:
    """Block-diagonal direct sum of symmetric pencils."""
    if not blocks:
        return SymmetricPencil.zeros(0)
    return SymmetricPencil(block_diag(*(p.A for p in blocks)), block_diag(*(p.B for p in blocks)))


def descriptor_to_pencil(d: StructureDescriptor) -> Pencil:
    """Realize an orbit-level descriptor as a direct sum in canonical block order.

    Symmetric descriptors give a :class:`SymmetricPencil`; descriptors with
    unpaired ``L_d``/``L_d^T`` blocks give a plain :class:`Pencil`.
    """
    if d.level != "orbit":
        raise ValueError("descriptor_to_pencil needs concrete eigenvalues (orbit level)")
    parts = [build_block(b) for b in d.blocks]
    if d.is_symmetric:
        return direct_sum(parts)
    return pencil_direct_sum(parts)


# generic structures ---------------------------------------------------------


def sample_eigenvalues(
    count: int, rng: np.random.Generator | None = None, min_gap: float = 1e-6
) -> list[complex]:
    """`count` points uniform in the unit disc, pairwise at least `min_gap` apart."""
    rng = np.random.default_rng() if rng is None else rng
    out: list[complex] = []
    while len(out) < count:
        z = complex(np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform()))
        if all(abs(z - w) >= min_gap for w in out):
            out.append(z)
    return out


def generic_kcf(
    c: GenericComponent,
    eigenvalues: Iterable[complex] | None = None,
    rng: np.random.Generator | None = None,
) -> StructureDescriptor:
    """Orbit-level descriptor of the generic form ``K_a``.

    ``s`` copies of ``M_{alpha+1}``, ``n-r-s`` copies of ``M_alpha`` and
    ``r-2a`` simple finite eigenvalues, where ``a = (n-r)*alpha + s``.
    """
    k = c.num_eigenvalues
    if eigenvalues is None:
        mus = sample_eigenvalues(k, rng)
    else:
        mus = [complex(z) for z in eigenvalues]
        if len(mus) != k:
            raise ValueError(f"K_{c.a} needs {k} eigenvalues, got {len(mus)}")
        if len(set(mus)) != len(mus):
            raise ValueError("eigenvalues of K_a must be pairwise distinct")
    blocks = [MinimalPair(c.alpha + 1)] * c.s + [MinimalPair(c.alpha)] * (c.n - c.r - c.s)
    blocks += [JordanFinite(1, mu) for mu in mus]
    return StructureDescriptor(tuple(blocks))


# Weyr characteristics -------------------------------------------------------


def weyr_minimal(d: StructureDescriptor) -> IntegerPartition:
    """``(r_0, r_1, ...)`` with ``r_k`` the number of right minimal indices ``>= k``."""
    return IntegerPartition.from_counts(d.right_minimal_indices(), start=0)


def weyr_eigenvalue(d: StructureDescriptor, mu, tol: float = 0.0) -> IntegerPartition:
    """``(h_1, h_2, ...)`` with ``h_k`` the number of Jordan blocks at `mu` of size ``>= k``.

    At bundle level `mu` is an integer group id.  Finite eigenvalues match
    within ``tol * max(1, |mu|)``.
    """
    groups = d.eigenvalue_groups()
    if d.level == "bundle":
        return IntegerPartition.from_counts(groups.get(mu, ()))
    mu = mu if _isinf(mu) else complex(mu)
    for label, sizes in groups.items():
        if _same_eigenvalue(label, mu, tol):
            return IntegerPartition.from_counts(sizes)
    return IntegerPartition()


def _isinf(x) -> bool:
    return isinstance(x, float) and math.isinf(x)

