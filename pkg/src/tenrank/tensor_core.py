"""Dense tensors, unfoldings, mode permutations and CP models.

Storage convention: a tensor of dims ``(I_0, ..., I_{N-1})`` is kept as a flat
float64 array in which the first index varies fastest (Fortran order). Under
this convention the split-point-``n`` unfolding is a reshape of the flat data
and never copies. Mode indices and multi-indices are 0-based throughout.

Matrices are plain 2-D numpy arrays; their flat, column-major view is
``M.ravel(order="F")``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

import numpy as np

from . import kernels
from .errors import (
    ArityError,
    IndexRangeError,
    InvalidSplitError,
    ParameterError,
    ShapeError,
)


def _check_dims(dims) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if not dims:
        raise ParameterError("a tensor needs at least one mode")
    if any(d < 1 for d in dims):
        raise ParameterError(f"dimensions must be positive, got {dims}")
    return dims


@dataclass(frozen=True, eq=False)
class DenseTensor:
    """Real N-way array stored flat, first index fastest.

    ``data`` is copied on construction and made read-only, so instances can be
    shared freely.
    """

    dims: tuple[int, ...]
    data: np.ndarray

    def __post_init__(self):
        dims = _check_dims(self.dims)
        data = np.array(self.data, dtype=np.float64)
        if data.ndim != 1:
            raise ShapeError(f"data must be flat, got shape {data.shape}")
        if data.size != prod(dims):
            raise ShapeError(
                f"data has {data.size} entries but dims {dims} need {prod(dims)}"
            )
        data.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "data", data)

    @classmethod
    def from_array(cls, array) -> DenseTensor:
        array = np.asarray(array, dtype=np.float64)
        if array.ndim == 0:
            raise ParameterError("a tensor needs at least one mode")
        return cls(array.shape, array.ravel(order="F"))

    @classmethod
    def zeros(cls, dims) -> DenseTensor:
        dims = _check_dims(dims)
        return cls(dims, np.zeros(prod(dims)))

    @property
    def order(self) -> int:
        return len(self.dims)

    @property
    def size(self) -> int:
        return self.data.size

    @property
    def array(self) -> np.ndarray:
        """N-d read-only view with ``array[i_0, ..., i_{N-1}]`` indexing."""
        return self.data.reshape(self.dims, order="F")

    def __getitem__(self, index):
        return self.data[linearize(index, self.dims)]

    def __eq__(self, other):
        if not isinstance(other, DenseTensor):
            return NotImplemented
        return self.dims == other.dims and np.array_equal(self.data, other.data)

    __hash__ = None

    def __mul__(self, scalar):
        return DenseTensor(self.dims, self.data * float(scalar))

    __rmul__ = __mul__

    def __repr__(self):
        return f"DenseTensor(dims={self.dims})"


@dataclass(frozen=True, eq=False)
class CpdModel:
    """Weights and factor matrices of a CP model; the diagonal core stays implicit."""

    weights: np.ndarray
    factors: tuple[np.ndarray, ...]

    def __post_init__(self):
        weights = np.array(self.weights, dtype=np.float64).reshape(-1)
        factors = tuple(np.array(a, dtype=np.float64) for a in self.factors)
        if not factors:
            raise ParameterError("a CP model needs at least one factor matrix")
        rank = weights.size
        if rank < 1:
            raise ParameterError("CP rank must be at least 1")
        for n, a in enumerate(factors):
            if a.ndim != 2 or a.shape[0] < 1:
                raise ShapeError(f"factor {n} must be a non-empty matrix, got {a.shape}")
            if a.shape[1] != rank:
                raise ShapeError(
                    f"factor {n} has {a.shape[1]} columns, expected {rank}"
                )
        for arr in (weights, *factors):
            arr.setflags(write=False)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "factors", factors)

    @classmethod
    def unweighted(cls, factors) -> CpdModel:
        factors = list(factors)
        return cls(np.ones(np.shape(factors[0])[1]), factors)

    @property
    def rank(self) -> int:
        """Number of rank-one terms (an upper bound on the tensor rank)."""
        return self.weights.size

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(a.shape[0] for a in self.factors)

    @property
    def order(self) -> int:
        return len(self.factors)

    def permuted(self, perm) -> CpdModel:
        perm = _check_permutation(perm, self.order)
        return CpdModel(self.weights, [self.factors[p] for p in perm])


def linearize(index: Sequence[int], dims: Sequence[int]) -> int:
    """Flat offset of a 0-based multi-index, first index fastest.

    >>> linearize((0, 1, 2), (2, 3, 4))
    14
    """
    if len(index) != len(dims):
        raise ArityError(f"index has {len(index)} components, tensor has {len(dims)} modes")
    offset = 0
    stride = 1
    for mode, (i, d) in enumerate(zip(index, dims)):
        i = int(i)
        if not 0 <= i < d:
            raise IndexRangeError(mode, i, d)
        offset += i * stride
        stride *= d
    return offset


def delinearize(offset: int, dims: Sequence[int]) -> tuple[int, ...]:
    total = prod(dims)
    if not 0 <= offset < total:
        raise IndexRangeError("flat", offset, total)
    index = []
    for d in dims:
        offset, i = divmod(offset, d)
        index.append(i)
    return tuple(index)


def unfold(t: DenseTensor, n: int) -> np.ndarray:
    """Matrix with modes ``0..n-1`` along the rows and the rest along the columns.

    Rows are indexed by the linearized ``(i_0, ..., i_{n-1})`` and columns by
    the linearized ``(i_n, ..., i_{N-1})``. The result is a read-only view.
    """
    if not 1 <= n <= t.order - 1:
        raise InvalidSplitError(
            f"split point {n} invalid for an order-{t.order} tensor (need 1 <= n <= {t.order - 1})"
        )
    rows = prod(t.dims[:n])
    return t.data.reshape((rows, t.size // rows), order="F")


def _check_permutation(perm, order: int) -> tuple[int, ...]:
    perm = tuple(int(p) for p in perm)
    if len(perm) != order:
        raise ArityError(f"permutation of length {len(perm)} for an order-{order} tensor")
    if sorted(perm) != list(range(order)):
        raise ParameterError(f"{perm} is not a permutation of 0..{order - 1}")
    return perm


def inverse_permutation(perm) -> tuple[int, ...]:
    perm = _check_permutation(perm, len(perm))
    inv = [0] * len(perm)
    for j, p in enumerate(perm):
        inv[p] = j
    return tuple(inv)


def permute_modes(t: DenseTensor, perm) -> DenseTensor:
    """Reorder modes: mode ``j`` of the result is mode ``perm[j]`` of ``t``."""
    perm = _check_permutation(perm, t.order)
    moved = np.transpose(t.array, perm)
    return DenseTensor(moved.shape, moved.ravel(order="F"))


def outer(*vectors) -> DenseTensor:
    """Rank-one tensor ``v_0 o v_1 o ... o v_{N-1}``."""
    vectors = [np.asarray(v, dtype=np.float64).reshape(-1) for v in vectors]
    return cpd_synthesize(CpdModel(np.ones(1), [v[:, None] for v in vectors]))


def khatri_rao(a, b) -> np.ndarray:
    """Column-wise Kronecker product; column ``r`` is ``kron(a[:, r], b[:, r])``."""
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    if a.ndim != 2 or b.ndim != 2:
        raise ShapeError("khatri_rao expects two matrices")
    if a.shape[1] != b.shape[1]:
        raise ShapeError(
            f"column counts differ: {a.shape[1]} vs {b.shape[1]}"
        )
    return kernels.khatri_rao(a, b)


def khatri_rao_chain(matrices) -> np.ndarray:
    """``M_0 ⊙ M_1 ⊙ ... ⊙ M_k``, the last matrix's row index fastest."""
    matrices = list(matrices)
    out = np.ascontiguousarray(matrices[0], dtype=np.float64)
    for m in matrices[1:]:
        out = khatri_rao(out, m)
    return out


def kronecker(a, b) -> np.ndarray:
    return np.kron(a, b)


def cpd_synthesize(m: CpdModel) -> DenseTensor:
    """Dense tensor ``sum_r w_r a_r^(0) o ... o a_r^(N-1)``."""
    data = kernels.cpd_full(m.weights, [np.ascontiguousarray(a) for a in m.factors])
    return DenseTensor(m.dims, data)


def cpd_unfolding_factors(m: CpdModel, n: int):
    """Factors ``(left, D, right)`` with ``unfold(cpd_synthesize(m), n) == left @ D @ right.T``.

    ``left = A^(n-1) ⊙ ... ⊙ A^(0)`` and ``right = A^(N-1) ⊙ ... ⊙ A^(n)``;
    the reversed chain order is what makes the identity exact under the
    first-index-fastest storage.
    """
    if not 1 <= n <= m.order - 1:
        raise InvalidSplitError(
            f"split point {n} invalid for an order-{m.order} model"
        )
    left = khatri_rao_chain(m.factors[n - 1 :: -1])
    right = khatri_rao_chain(m.factors[: n - 1 : -1])
    return left, np.diag(m.weights), right
