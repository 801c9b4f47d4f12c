"""Necessary conditions for closure inclusion among congruence bundles.

Two conditions are implemented, both lower semicontinuity arguments:

* minimal indices: the nullity of the block-Toeplitz matrix that counts
  polynomial null vectors of degree ``< k`` cannot drop in a limit, which for
  pencils of equal rank is dominance of the Weyr partitions ``eps``;
* simple eigenvalues: a limit of rank-``r`` pencils from the bundle of
  ``K_a`` that keeps rank ``r`` has at most ``r - 2a`` simple eigenvalues,
  since any extra eigenvalue is forced to be multiple.

Neither is claimed to be sufficient.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from .canonical import GenericComponent, StructureDescriptor, weyr_minimal
from .partitions import IntegerPartition, dominated_by, partition_add

__all__ = [
    "Obstruction",
    "closure_obstruction",
    "obstruction_table",
    "minimal_index_condition",
    "candidate_components",
]

ObstructionKind = Literal["minimal-index-majorization", "simple-eigenvalue-multiplicity", "none"]


@dataclass(frozen=True)
class Obstruction:
    kind: ObstructionKind
    evidence: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.kind != "none"


def _epsilon(c: GenericComponent) -> IntegerPartition:
    return weyr_minimal(c.bundle_descriptor())


def closure_obstruction(c: GenericComponent, c_prime: GenericComponent) -> Obstruction:
    """Why the bundle of ``K_{a'}`` (`c_prime`) is not inside the closure of the bundle of ``K_a`` (`c`).

    ``a' > a`` fails dominance of the minimal-index partitions; ``a' < a``
    would need ``r - 2a'`` simple eigenvalues where at most ``r - 2a`` can
    survive in the limit.
    """
    if (c.n, c.r) != (c_prime.n, c_prime.r):
        raise ValueError("components must share n and r")
    if c.a == c_prime.a:
        raise ValueError("closure_obstruction needs a != a'")
    eps, eps_prime = _epsilon(c), _epsilon(c_prime)
    if not dominated_by(eps_prime, eps):
        return Obstruction(
            "minimal-index-majorization",
            {"eps_contained": tuple(eps_prime), "eps_container": tuple(eps)},
        )
    needed, available = c_prime.num_eigenvalues, c.num_eigenvalues
    if needed > available:
        return Obstruction(
            "simple-eigenvalue-multiplicity",
            {"simple_needed": needed, "simple_available": available},
        )
    return Obstruction("none")


def obstruction_table(n: int, r: int) -> dict[tuple[int, int], Obstruction]:
    """All ordered pairs ``(a, a')`` with ``a != a'`` for the given ``n, r``."""
    comps = GenericComponent.all_for(n, r)
    return {
        (c.a, cp.a): closure_obstruction(c, cp) for c in comps for cp in comps if c.a != cp.a
    }


def minimal_index_condition(d: StructureDescriptor, c: GenericComponent) -> bool:
    """Minimal-index test for `d` lying in the closure of the bundle of ``K_a``.

    With ``p`` right minimal indices, the number of independent polynomial
    null vectors of degree below ``k`` is ``k*p - (r_1 + ... + r_k)`` and may
    only grow in a limit.  Equivalently the tail ``(r_1, r_2, ...)`` of `d`
    is dominated by the tail of ``K_a`` raised by the difference in the
    number of minimal indices.
    """
    eps_d = list(weyr_minimal(d)) or [0]
    eps_k = list(_epsilon(c)) or [0]
    extra = eps_d[0] - eps_k[0]
    if extra < 0:
        return False
    tail_d, tail_k = eps_d[1:], eps_k[1:]
    length = max(len(tail_d), len(tail_k))
    return dominated_by(tail_d, partition_add(tail_k, extra, length))


def candidate_components(d: StructureDescriptor, n: int, r: int) -> frozenset[GenericComponent]:
    """Generic components whose bundle closure may contain `d`.

    Necessary conditions only: rank bound, the minimal-index test and, for
    ``rank(d) == r``, the simple-eigenvalue count.  Works at orbit or bundle
    level.
    """
    if d.n != n:
        raise ValueError(f"descriptor has size {d.n}, expected {n}")
    if d.rank > r:
        return frozenset()
    simple = d.simple_eigenvalue_count()
    out = set()
    for c in GenericComponent.all_for(n, r):
        if not minimal_index_condition(d, c):
            continue
        if d.rank == r and simple > c.num_eigenvalues:
            continue
        out.add(c)
    return frozenset(out)

