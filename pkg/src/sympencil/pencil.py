"""Dense complex pencils ``lambda*A + B`` and the transformations acting on them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

__all__ = [
    "INF",
    "as_complex_matrix",
    "Pencil",
    "SymmetricPencil",
    "evaluate",
    "frobenius_inner",
    "congruence",
    "strict_equivalence",
    "SingularTransformError",
]

#: Sentinel for the point at infinity; ``evaluate(p, INF)`` returns the leading coefficient.
INF = math.inf

Point = Union[complex, float]


class SingularTransformError(ValueError):
    """A transformation matrix that must be invertible is (numerically) singular."""


def as_complex_matrix(data, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Return a read-only ``complex128`` 2-D copy of `data`.

    Empty inputs need explicit `rows`/`cols` since their shape cannot be inferred.
    """
    arr = np.array(data, dtype=np.complex128)
    if arr.size == 0:
        r = rows if rows is not None else (arr.shape[0] if arr.ndim == 2 else 0)
        c = cols if cols is not None else (arr.shape[1] if arr.ndim == 2 else 0)
        arr = np.zeros((r, c), dtype=np.complex128)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {arr.shape}")
    if rows is not None and arr.shape[0] != rows or cols is not None and arr.shape[1] != cols:
        raise ValueError(f"expected shape ({rows}, {cols}), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    arr.setflags(write=False)
    return arr


def _is_infinite(point) -> bool:
    return isinstance(point, (float, int)) and math.isinf(point)


@dataclass(frozen=True, eq=False)
class Pencil:
    """The pencil ``lambda*A + B`` with ``A`` the leading coefficient."""

    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        A = as_complex_matrix(self.A)
        B = as_complex_matrix(self.B)
        if A.shape != B.shape:
            raise ValueError(f"coefficient shapes differ: {A.shape} vs {B.shape}")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @classmethod
    def zeros(cls, m: int, n: int | None = None):
        n = m if n is None else n
        z = np.zeros((m, n), dtype=np.complex128)
        return cls(z, z)

    @property
    def shape(self) -> tuple[int, int]:
        return self.A.shape

    @property
    def is_square(self) -> bool:
        return self.A.shape[0] == self.A.shape[1]

    def norm(self) -> float:
        """``sqrt(||A||_F^2 + ||B||_F^2)``, the scale used for every relative tolerance."""
        return float(math.hypot(np.linalg.norm(self.A), np.linalg.norm(self.B)))

    def transpose(self) -> "Pencil":
        return Pencil(self.A.T, self.B.T)

    def reversal(self) -> "Pencil":
        """The pencil ``lambda*B + A``; eigenvalue ``mu`` maps to ``1/mu``."""
        return Pencil(self.B, self.A)

    def shifted(self, mu: complex) -> "Pencil":
        """``nu*A + (B + mu*A)``, i.e. the same pencil in the variable ``nu = lambda - mu``."""
        return Pencil(self.A, self.B + mu * self.A)

    def __add__(self, other: "Pencil") -> "Pencil":
        if not isinstance(other, Pencil):
            return NotImplemented
        return Pencil(self.A + other.A, self.B + other.B)

    def __sub__(self, other: "Pencil") -> "Pencil":
        if not isinstance(other, Pencil):
            return NotImplemented
        return Pencil(self.A - other.A, self.B - other.B)

    def __mul__(self, scalar: complex) -> "Pencil":
        return Pencil(scalar * self.A, scalar * self.B)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Pencil):
            return NotImplemented
        return (
            self.shape == other.shape
            and np.array_equal(self.A, other.A)
            and np.array_equal(self.B, other.B)
        )

    __hash__ = None

    def allclose(self, other: "Pencil", rtol: float = 1e-12) -> bool:
        """Equality up to ``rtol`` relative to the larger pencil norm."""
        if self.shape != other.shape:
            return False
        scale = max(self.norm(), other.norm(), 1.0)
        return (self - other).norm() <= rtol * scale

    def __repr__(self) -> str:
        m, n = self.shape
        return f"{type(self).__name__}({m}x{n})"


class SymmetricPencil(Pencil):
    """A square pencil with ``A == A.T`` and ``B == B.T``.

    Exact data must already be symmetric; pass ``symmetrize=True`` to project
    measured data onto the symmetric subspace, which is only accepted when the
    skew part is below ``tol`` relative to the pencil norm.
    """

    def __init__(self, A, B, *, symmetrize: bool = False, tol: float = 1e-10):
        A = as_complex_matrix(A)
        B = as_complex_matrix(B)
        if A.shape[0] != A.shape[1]:
            raise ValueError(f"symmetric pencil must be square, got {A.shape}")
        if symmetrize:
            skew = math.hypot(np.linalg.norm(A - A.T), np.linalg.norm(B - B.T)) / 2
            scale = max(math.hypot(np.linalg.norm(A), np.linalg.norm(B)), 1.0)
            if skew > tol * scale:
                raise ValueError(f"pencil is not symmetric (skew part {skew:.3e})")
            A = (A + A.T) / 2
            B = (B + B.T) / 2
        elif not (np.array_equal(A, A.T) and np.array_equal(B, B.T)):
            raise ValueError("pencil coefficients are not symmetric")
        super().__init__(A, B)

    @classmethod
    def from_pencil(cls, p: Pencil, *, symmetrize: bool = False, tol: float = 1e-10):
        return cls(p.A, p.B, symmetrize=symmetrize, tol=tol)

    @classmethod
    def zeros(cls, n: int, _n: int | None = None):
        z = np.zeros((n, n), dtype=np.complex128)
        return cls(z, z)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    def transpose(self) -> "SymmetricPencil":
        return self

    def __add__(self, other):
        out = Pencil.__add__(self, other)
        if isinstance(other, SymmetricPencil):
            return SymmetricPencil(out.A, out.B)
        return out

    def __mul__(self, scalar: complex) -> "SymmetricPencil":
        return SymmetricPencil(scalar * self.A, scalar * self.B)

    __rmul__ = __mul__


def evaluate(p: Pencil, point: Point) -> np.ndarray:
    """Return ``point*A + B``, or ``A`` when `point` is infinite."""
    if _is_infinite(point):
        return p.A
    out = complex(point) * p.A + p.B
    out.setflags(write=False)
    return out


def frobenius_inner(p: Pencil, q: Pencil) -> complex:
    """``tr(A C^*) + tr(B D^*)`` for ``p = lambda*A + B`` and ``q = lambda*C + D``."""
    if p.shape != q.shape:
        raise ValueError(f"dimension mismatch: {p.shape} vs {q.shape}")
    return complex(np.vdot(q.A, p.A) + np.vdot(q.B, p.B))


def _check_invertible(M: np.ndarray, name: str, cond_max: float) -> None:
    if M.shape[0] != M.shape[1]:
        raise ValueError(f"{name} must be square, got {M.shape}")
    if M.shape[0] and np.linalg.cond(M) > cond_max:
        raise SingularTransformError(f"{name} is singular to working precision")


def congruence(
    s: SymmetricPencil, W, *, strict: bool = False, cond_max: float = 1e12
) -> SymmetricPencil:
    """``W^T (lambda*A + B) W``, re-symmetrized to remove rounding drift.

    With ``strict=True`` a `W` whose condition number exceeds `cond_max`
    raises :class:`SingularTransformError`.
    """
    W = as_complex_matrix(W)
    if W.shape != (s.n, s.n):
        raise ValueError(f"W must be {s.n}x{s.n}, got {W.shape}")
    if strict:
        _check_invertible(W, "W", cond_max)
    A = W.T @ s.A @ W
    B = W.T @ s.B @ W
    return SymmetricPencil((A + A.T) / 2, (B + B.T) / 2)


def strict_equivalence(p: Pencil, U, V, *, cond_max: float = 1e12) -> Pencil:
    """``U^{-1} (lambda*A + B) V``."""
    U = as_complex_matrix(U)
    V = as_complex_matrix(V)
    m, n = p.shape
    if U.shape != (m, m) or V.shape != (n, n):
        raise ValueError(f"expected U {m}x{m} and V {n}x{n}, got {U.shape}, {V.shape}")
    _check_invertible(U, "U", cond_max)
    _check_invertible(V, "V", cond_max)
    if m == 0:
        return Pencil(p.A @ V, p.B @ V)
    return Pencil(np.linalg.solve(U, p.A @ V), np.linalg.solve(U, p.B @ V))


def block_diag(*mats: np.ndarray) -> np.ndarray:
    """Block-diagonal assembly that tolerates 0-row or 0-column blocks."""
    rows = sum(m.shape[0] for m in mats)
    cols = sum(m.shape[1] for m in mats)
    out = np.zeros((rows, cols), dtype=np.complex128)
    i = j = 0
    for m in mats:
        out[i : i + m.shape[0], j : j + m.shape[1]] = m
        i += m.shape[0]
        j += m.shape[1]
    return out


def pencil_direct_sum(pencils: Sequence[Pencil]) -> Pencil:
    """Block-diagonal direct sum of arbitrary (possibly non-square) pencils."""
    if not pencils:
        return Pencil.zeros(0, 0)
    return Pencil(block_diag(*(p.A for p in pencils)), block_diag(*(p.B for p in pencils)))
