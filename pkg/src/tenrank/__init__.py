"""Tight lower bounds on CP tensor rank from the maximally square unfolding."""

__version__ = "0.1.0"

from ._accel import USE_NUMBA, backend_name
from .detector import RankReport, all_n_ranks, max_detectable_rank, rank_lower_bound
from .numrank import RankResult, matrix_rank, sylvester_bound
from .splitter import ModeSplit, balanced_split, split_to_permutation
from .tensor_core import (
    CpdModel,
    DenseTensor,
    cpd_synthesize,
    cpd_unfolding_factors,
    delinearize,
    inverse_permutation,
    khatri_rao,
    linearize,
    outer,
    permute_modes,
    unfold,
)
from .tio import emit_rmax_table, format_tensor, parse_tensor, synth_tensor

__all__ = [
    "CpdModel",
    "DenseTensor",
    "ModeSplit",
    "RankReport",
    "RankResult",
    "USE_NUMBA",
    "all_n_ranks",
    "backend_name",
    "balanced_split",
    "cpd_synthesize",
    "cpd_unfolding_factors",
    "delinearize",
    "emit_rmax_table",
    "format_tensor",
    "inverse_permutation",
    "khatri_rao",
    "linearize",
    "matrix_rank",
    "max_detectable_rank",
    "outer",
    "parse_tensor",
    "permute_modes",
    "rank_lower_bound",
    "split_to_permutation",
    "sylvester_bound",
    "synth_tensor",
    "unfold",
]
