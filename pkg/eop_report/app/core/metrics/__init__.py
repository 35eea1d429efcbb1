"""Target metrics: normalization, regret@K, rank correlation."""

from .rules import (
    inverse_normalized_regret_at_k,
    normalize_best_behavioral,
    normalize_min_max,
    normalize_values,
    spearman_rho,
)
from .state import RankedList, ValueMap

__all__ = [
    "RankedList",
    "ValueMap",
    "inverse_normalized_regret_at_k",
    "normalize_best_behavioral",
    "normalize_min_max",
    "normalize_values",
    "spearman_rho",
]
