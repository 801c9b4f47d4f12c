"""Tangent spaces and codimensions of congruence orbits and bundles."""

from __future__ import annotations

import numpy as np

from .canonical import GenericComponent
from .extract import extract_structure
from .pencil import SymmetricPencil
from .rank import DEFAULT_TOLERANCES, Tolerances, numerical_rank

__all__ = [
    "tangent_map_matrix",
    "codim_orbit_numeric",
    "codim_bundle_numeric",
    "codim_orbit_generic",
    "codim_bundle_generic",
]


def tangent_map_matrix(s: SymmetricPencil) -> np.ndarray:
    """Matrix of ``X -> (X^T A + A X, X^T B + B X)`` in upper-triangle coordinates.

    Columns run over the ``n^2`` entries of ``X`` (row-major); rows over the
    upper triangles of the two symmetric images, ``A`` part first, giving
    ``n(n+1)`` rows.
    """
    n = s.n
    iu = np.triu_indices(n)
    T = np.zeros((n * (n + 1), n * n), dtype=np.complex128)
    half = n * (n + 1) // 2
    for col in range(n * n):
        i, j = divmod(col, n)
        # X = E_ij, so X^T M + M X = E_ji M + M E_ij
        for k, M in enumerate((s.A, s.B)):
            img = np.zeros((n, n), dtype=np.complex128)
            img[j, :] += M[i, :]
            img[:, j] += M[:, i]
            T[k * half : (k + 1) * half, col] = img[iu]
    return T


def codim_orbit_numeric(s: SymmetricPencil, tol: Tolerances = DEFAULT_TOLERANCES) -> int:
    """``n(n+1)`` minus the numerical rank of the tangent map."""
    n = s.n
    if n == 0:
        return 0
    T = tangent_map_matrix(s)
    scale = max(np.linalg.norm(T), s.norm())
    return n * (n + 1) - numerical_rank(T, scale, tol, "congruence tangent map")


def codim_bundle_numeric(s: SymmetricPencil, tol: Tolerances = DEFAULT_TOLERANCES) -> int:
    """Orbit codimension minus the number of distinct eigenvalues (infinity included)."""
    structure = extract_structure(s, tol, symmetric=True)
    return codim_orbit_numeric(s, tol) - structure.num_distinct_eigenvalues


def codim_orbit_generic(c: GenericComponent) -> int:
    """Closed form ``(n - a)(n - r + 1)`` for the orbit of ``K_a``."""
    return (c.n - c.a) * (c.n - c.r + 1)


def codim_bundle_generic(c: GenericComponent) -> int:
    """Closed form ``(n + 1)(n - r) - a(n - r - 1)`` for the bundle of ``K_a``."""
    return (c.n + 1) * (c.n - c.r) - c.a * (c.n - c.r - 1)
