"""Numerical matrix rank from singular values, with a reportable tolerance."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, ParameterError

EPS = np.finfo(np.float64).eps


@dataclass(frozen=True, eq=False)
class RankResult:
    rank: int
    singular_values: np.ndarray  # descending
    tolerance_used: float


def default_tolerance(shape, sigma_max: float) -> float:
    """``max(rows, cols) * eps * sigma_max``; the smallest positive float for a zero matrix."""
    tol = max(shape) * EPS * float(sigma_max)
    return tol if tol > 0 else float(np.finfo(np.float64).tiny)


def singular_values(m) -> np.ndarray:
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.size == 0:
        raise ParameterError(f"expected a non-empty matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NumericalError("matrix has non-finite entries", m.shape)
    try:
        return np.linalg.svd(m, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD did not converge: {exc}", m.shape) from exc


def matrix_rank(m, tol: float | None = None) -> RankResult:
    """Number of singular values strictly above ``tol``.

    Without ``tol`` the cutoff is :func:`default_tolerance`, the usual
    pseudo-inverse threshold.
    """
    m = np.asarray(m, dtype=np.float64)
    if tol is not None and not tol > 0:
        raise ParameterError(f"tolerance must be positive, got {tol}")
    sv = singular_values(m)
    if tol is None:
        tol = default_tolerance(m.shape, sv[0])
    return RankResult(int(np.count_nonzero(sv > tol)), sv, float(tol))


def sylvester_bound(rank_a: int, rank_b: int, rank_c: int, inner_ab: int, inner_bc: int) -> int:
    """Sylvester's lower bound on ``rank(A @ B @ C)`` for A (.. x M), B (M x P), C (P x ..).

    May be negative; clamp at zero where a rank is meant.
    """
    args = (rank_a, rank_b, rank_c, inner_ab, inner_bc)
    if any(int(a) < 0 for a in args):
        raise ParameterError(f"ranks and dimensions must be non-negative, got {args}")
    return int(rank_a) + int(rank_b) + int(rank_c) - int(inner_ab) - int(inner_bc)
