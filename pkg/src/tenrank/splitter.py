"""Mode bipartitions whose unfolding is as square as possible.

The unfolding of a tensor that keeps modes ``s1`` on the rows and ``s2`` on
the columns has ``min(rows, cols)`` as its largest attainable rank, so the
split that maximizes this minimum gives the strongest rank bound. Two
strategies are offered:

``exact``
    enumerates every proper bipartition (default, optimal).
``sum_dp``
    balances the *sums* of the dimensions with a subset-sum dynamic program.
    Balancing sums is not the same as balancing products, so this strategy
    can return a worse split; it is kept for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from . import kernels
from .errors import InvalidSplitError, ParameterError, SizeGuardError

EXACT_MAX_ORDER = 32
STRATEGIES = ("exact", "sum_dp")
# cap on the subset-sum table (cells); pseudo-polynomial in the dimensions
DP_MAX_CELLS = 200_000_000


def _modes(mask: int, order: int) -> tuple[int, ...]:
    return tuple(n for n in range(order) if (mask >> n) & 1)


@dataclass(frozen=True)
class ModeSplit:
    """Ordered bipartition of modes, canonically with ``rows <= cols``."""

    s1: tuple[int, ...]
    s2: tuple[int, ...]
    rows: int
    cols: int

    @classmethod
    def from_sides(cls, s1, s2, dims) -> ModeSplit:
        """Validate a bipartition and put it in canonical orientation.

        The side with the smaller product becomes ``s1``; on equal products
        the lexicographically smaller sorted mode list does.
        """
        s1 = tuple(sorted(int(n) for n in s1))
        s2 = tuple(sorted(int(n) for n in s2))
        order = len(dims)
        if not s1 or not s2:
            raise InvalidSplitError("both sides of a split must be non-empty")
        if sorted(s1 + s2) != list(range(order)):
            raise InvalidSplitError(
                f"{s1} and {s2} do not partition the modes 0..{order - 1}"
            )
        p = prod(dims[n] for n in s1)
        q = prod(dims[n] for n in s2)
        if q < p or (p == q and s2 < s1):
            s1, s2, p, q = s2, s1, q, p
        return cls(s1, s2, p, q)

    @classmethod
    def from_mask(cls, mask: int, dims) -> ModeSplit:
        order = len(dims)
        full = (1 << order) - 1
        return cls.from_sides(_modes(mask, order), _modes(full ^ mask, order), dims)

    @property
    def min_product(self) -> int:
        return min(self.rows, self.cols)

    @property
    def permutation(self) -> tuple[int, ...]:
        return self.s1 + self.s2

    @property
    def split_point(self) -> int:
        return len(self.s1)

    def to_dict(self):
        return {"s1": list(self.s1), "s2": list(self.s2), "rows": self.rows, "cols": self.cols}


def _check(dims) -> list[int]:
    dims = [int(d) for d in dims]
    if len(dims) < 2:
        raise InvalidSplitError(f"an order-{len(dims)} tensor has no valid split")
    if any(d < 1 for d in dims):
        raise ParameterError(f"dimensions must be positive, got {dims}")
    return dims


def exact_split_mask(dims) -> int:
    dims = _check(dims)
    if len(dims) > EXACT_MAX_ORDER:
        raise SizeGuardError(
            f"exact split enumerates 2**(N-1) bipartitions; N={len(dims)} exceeds {EXACT_MAX_ORDER}"
        )
    if prod(dims) >= kernels.INT64_SAFE:
        return kernels.best_split_bigint(dims)
    return int(kernels.best_split(np.array(dims, dtype=np.int64)))


def sum_dp_mask(dims) -> int:
    dims = _check(dims)
    cells = (len(dims) + 1) * (sum(dims) // 2 + 1)
    if cells > DP_MAX_CELLS:
        raise SizeGuardError(f"subset-sum table of {cells} cells is too large")
    return int(kernels.sum_partition(np.array(dims, dtype=np.int64)))


def balanced_split(dims, strategy: str = "exact") -> ModeSplit:
    """Bipartition of the modes maximizing ``min(rows, cols)``.

    >>> balanced_split([2, 3, 5])
    ModeSplit(s1=(2,), s2=(0, 1), rows=5, cols=6)
    """
    if strategy == "exact":
        mask = exact_split_mask(dims)
    elif strategy == "sum_dp":
        mask = sum_dp_mask(dims)
    else:
        raise ParameterError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    return ModeSplit.from_mask(mask, [int(d) for d in dims])


def split_to_permutation(sp: ModeSplit) -> tuple[tuple[int, ...], int]:
    """Mode permutation ``s1 + s2`` and split point ``len(s1)`` realizing the split."""
    return sp.permutation, sp.split_point
