"""Integer partitions under the dominance (majorization) order."""

from __future__ import annotations

from itertools import accumulate, zip_longest
from typing import Iterable

__all__ = ["IntegerPartition", "dominated_by", "strictly_dominated_by", "partition_add"]


class IntegerPartition(tuple):
    """A weakly decreasing tuple of nonnegative integers with trailing zeros trimmed.

    >>> IntegerPartition([3, 1, 0, 0])
    IntegerPartition(3, 1)
    """

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(p) for p in parts]
        if any(p < 0 for p in parts):
            raise ValueError(f"partition parts must be nonnegative: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        while parts and parts[-1] == 0:
            parts.pop()
        return super().__new__(cls, parts)

    @classmethod
    def from_counts(cls, sizes: Iterable[int], start: int = 1) -> "IntegerPartition":
        """Weyr-type counts: entry ``k`` is the number of sizes ``>= start + k``."""
        sizes = list(sizes)
        if not sizes:
            return cls()
        top = max(sizes)
        return cls(sum(1 for s in sizes if s >= k) for k in range(start, top + 1))

    @property
    def total(self) -> int:
        return sum(self)

    def conjugate(self) -> "IntegerPartition":
        return IntegerPartition(sum(1 for p in self if p > k) for k in range(self[0] if self else 0))

    def prefix_sums(self, length: int | None = None) -> list[int]:
        parts = list(self) + [0] * max(0, (length or 0) - len(self))
        return list(accumulate(parts))

    def __repr__(self) -> str:
        return f"IntegerPartition({', '.join(map(str, self))})"


def dominated_by(eta: Iterable[int], nu: Iterable[int]) -> bool:
    """True iff every prefix sum of `eta` is at most the matching prefix sum of `nu`.

    Shorter sequences are padded with zeros on the right.
    """
    s = t = 0
    for x, y in zip_longest(eta, nu, fillvalue=0):
        s += x
        t += y
        if s > t:
            return False
    return True


def strictly_dominated_by(eta: Iterable[int], nu: Iterable[int]) -> bool:
    eta, nu = IntegerPartition(eta), IntegerPartition(nu)
    return eta != nu and dominated_by(eta, nu)


def partition_add(eta: Iterable[int], a: int, length: int | None = None) -> IntegerPartition:
    """Add `a` to each of the first `length` parts of `eta` (zero-padded).

    The length must be given whenever ``a > 0``: adding to the implicit
    trailing zeros would otherwise be ill-defined.
    """
    parts = list(IntegerPartition(eta))
    if a < 0:
        raise ValueError("a must be nonnegative")
    if length is None:
        if a > 0:
            raise ValueError("partition_add needs an explicit length when a > 0")
        length = len(parts)
    if length < len(parts):
        raise ValueError(f"length {length} is shorter than the partition {tuple(parts)}")
    parts += [0] * (length - len(parts))
    return IntegerPartition(p + a for p in parts)
