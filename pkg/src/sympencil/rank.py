"""Numerical rank decisions with an explicit singular-value gap requirement."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "RankDecision",
    "IndeterminateStructureError",
    "decide_rank",
    "numerical_rank",
]


@dataclass(frozen=True)
class Tolerances:
    """Thresholds shared by every rank-revealing computation.

    rank
        Singular values below ``rank * scale`` are treated as zero, where
        ``scale`` is the norm of the pencil under study.
    gap
        Minimum ratio between the smallest retained and the largest
        discarded singular value.
    cluster
        Eigenvalues closer than ``cluster * max(1, |mu|)`` are merged.
    """

    rank: float = 1e-8
    gap: float = 10.0
    cluster: float = 1e-6

    def __post_init__(self):
        if not (self.rank > 0 and self.gap >= 1 and self.cluster > 0):
            raise ValueError(f"invalid tolerances {self}")


DEFAULT_TOLERANCES = Tolerances()


class IndeterminateStructureError(ArithmeticError):
    """A rank decision had no clear singular-value gap.

    Attributes
    ----------
    decision : RankDecision or None
        The offending decision, carrying the two singular values at the gap.
    """

    def __init__(self, message: str, decision: "RankDecision | None" = None):
        super().__init__(message)
        self.decision = decision

    @property
    def gap(self) -> tuple[float, float] | None:
        if self.decision is None:
            return None
        return (self.decision.retained, self.decision.discarded)


@dataclass(frozen=True)
class RankDecision:
    rank: int
    tolerance: float
    retained: float  # smallest singular value kept (inf if rank == 0)
    discarded: float  # largest singular value dropped (0 if full rank)
    threshold: float
    gap: float

    @property
    def ratio(self) -> float:
        if self.discarded == 0.0:
            return np.inf
        return self.retained / self.discarded

    @property
    def clear(self) -> bool:
        return self.ratio >= self.gap


def decide_rank(
    M: np.ndarray, scale: float, tol: Tolerances = DEFAULT_TOLERANCES
) -> RankDecision:
    """Rank of `M` with singular values below ``tol.rank * scale`` dropped."""
    threshold = tol.rank * max(scale, np.finfo(float).tiny)
    if M.size == 0:
        return RankDecision(0, tol.rank, np.inf, 0.0, threshold, tol.gap)
    sv = np.linalg.svd(M, compute_uv=False)
    r = int(np.count_nonzero(sv > threshold))
    retained = float(sv[r - 1]) if r > 0 else np.inf
    discarded = float(sv[r]) if r < sv.size else 0.0
    return RankDecision(r, tol.rank, retained, discarded, threshold, tol.gap)


def numerical_rank(
    M: np.ndarray, scale: float, tol: Tolerances = DEFAULT_TOLERANCES, what: str = "matrix"
) -> int:
    """Like :func:`decide_rank` but raise when the gap is ambiguous."""
    d = decide_rank(M, scale, tol)
    if not d.clear:
        raise IndeterminateStructureError(
            f"no singular-value gap in rank decision for {what}: "
            f"retained {d.retained:.3e}, discarded {d.discarded:.3e} "
            f"(ratio {d.ratio:.2f} < {d.gap:g})",
            d,
        )
    return d.rank
