"""Lower bound on CP rank from the maximally square unfolding, and rank detection.

If a tensor is a sum of ``R`` rank-one terms, every unfolding has rank at most
``R``. The bound is strongest on the unfolding whose smaller side is as large
as possible. When that unfolding is rank deficient, its rank *is* the tensor
rank for generic factors, so the rank is detected outright; otherwise its rank
(= the smaller side) is only a floor for a search.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidSplitError
from .numrank import RankResult, matrix_rank
from .splitter import ModeSplit, balanced_split
from .tensor_core import DenseTensor, permute_modes, unfold


@dataclass(frozen=True, eq=False)
class RankReport:
    lower_bound: int
    detected: bool
    detected_rank: int | None
    r_max: int
    split: ModeSplit | None  # None only for order-1 tensors
    unfolding_shape: tuple[int, int]
    singular_values: np.ndarray
    tolerance_used: float

    def to_dict(self):
        return {
            "lower_bound": self.lower_bound,
            "detected": self.detected,
            "detected_rank": self.detected_rank,
            "r_max": self.r_max,
            "split": None if self.split is None else self.split.to_dict(),
            "unfolding_shape": list(self.unfolding_shape),
            "singular_values": [float(s) for s in self.singular_values],
            "tolerance_used": self.tolerance_used,
        }


@lru_cache(maxsize=4096)
def _exact_split(dims: tuple[int, ...]) -> ModeSplit:
    return balanced_split(dims, "exact")


def max_detectable_rank(dims) -> tuple[int, ModeSplit]:
    """Largest rank that a rank-deficient maximal unfolding can reveal."""
    split = _exact_split(tuple(int(d) for d in dims))
    return split.min_product - 1, split


def maximal_unfolding(t: DenseTensor) -> tuple[np.ndarray, ModeSplit]:
    split = _exact_split(t.dims)
    return unfold(permute_modes(t, split.permutation), split.split_point), split


def rank_lower_bound(t: DenseTensor, tol: float | None = None) -> RankReport:
    """Rank bound from the maximally square unfolding, with the detection verdict.

    ``detected`` is true exactly when the unfolding is rank deficient
    (rank strictly below ``min(rows, cols)``); ``detected_rank`` then equals
    the bound. A full-rank unfolding gives ``detected=False`` and the bound is
    a starting point for a rank search.

    An order-1 tensor is its own CP model: its rank is 1 if it is nonzero and
    0 otherwise, always reported as detected.
    """
    if t.order == 1:
        column = t.data.reshape(-1, 1)
        res = matrix_rank(column, tol)
        return RankReport(
            lower_bound=res.rank,
            detected=True,
            detected_rank=res.rank,
            r_max=1,
            split=None,
            unfolding_shape=column.shape,
            singular_values=res.singular_values,
            tolerance_used=res.tolerance_used,
        )

    mat, split = maximal_unfolding(t)
    res = matrix_rank(mat, tol)
    full = min(mat.shape)
    detected = res.rank < full
    return RankReport(
        lower_bound=res.rank,
        detected=detected,
        detected_rank=res.rank if detected else None,
        r_max=full - 1,
        split=split,
        unfolding_shape=mat.shape,
        singular_values=res.singular_values,
        tolerance_used=res.tolerance_used,
    )


def all_n_ranks(t: DenseTensor, tol: float | None = None) -> list[tuple[int, RankResult]]:
    """Rank of every contiguous unfolding of ``t`` as stored (no permutation).

    Each entry is a valid lower bound on the CP rank; the maximum is usually
    weaker than :func:`rank_lower_bound`.
    """
    if t.order < 2:
        raise InvalidSplitError("an order-1 tensor has no unfoldings")
    return [(n, matrix_rank(unfold(t, n), tol)) for n in range(1, t.order)]
