"""Target metrics and ranking diagnostics."""

from __future__ import annotations

import logging

from scipy.stats import spearmanr

from .state import RankedList, ValueMap

logger = logging.getLogger(__name__)


def normalize_best_behavioral(v: float, v_best: float, offset: float = 0.0) -> float:
    """Performance relative to the best data-collecting policy.

    ``offset`` shifts returns so the reference is positive; it is never
    chosen automatically.
    """
    reference = v_best + offset
    if reference <= 0:
        raise ValueError("non-positive reference value; supply offset")
    return ((v + offset) - reference) / reference


def normalize_min_max(v: float, v_worst: float, v_best: float) -> float:
    if v_best <= v_worst:
        raise ValueError("degenerate value range")
    return (v - v_worst) / (v_best - v_worst)


def inverse_normalized_regret_at_k(ranking: RankedList, values: ValueMap, k: int) -> float:
    """Normalized value of the best policy among the first k ranked (1 = no regret)."""
    if not 1 <= k <= len(ranking):
        raise ValueError(f"k must be in [1, {len(ranking)}], got {k}")
    ranked_values = [values[pid] for pid in ranking]
    best, worst = values.best, values.worst
    if best == worst:
        logger.warning("all policy values equal; regret@%d set to 1.0", k)
        return 1.0
    picked = max(ranked_values[:k])
    return (picked - worst) / (best - worst)


def spearman_rho(ranking_a: RankedList, ranking_b: RankedList) -> float:
    """Tie-free Spearman rank correlation between two rankings of one id set."""
    ranks_a = ranking_a.rank_of()
    ranks_b = ranking_b.rank_of()
    if set(ranks_a) != set(ranks_b):
        raise ValueError("mismatched id sets")
    if len(ranks_a) < 2:
        raise ValueError("need at least two ranked policies")
    ids = sorted(ranks_a)
    rho, _ = spearmanr([ranks_a[pid] for pid in ids], [ranks_b[pid] for pid in ids])
    return float(rho)


def normalize_values(
    values: ValueMap,
    metric: str = "raw",
    v_best: float | None = None,
    offset: float = 0.0,
) -> ValueMap:
    """Apply a report metric (``raw``, ``best-behavioral`` or ``min-max``) to every value."""
    if metric == "raw":
        return values
    if metric == "best-behavioral":
        if v_best is None:
            raise ValueError("metric best-behavioral needs v_best")
        return ValueMap({pid: normalize_best_behavioral(values[pid], v_best, offset) for pid in values.ids})
    if metric == "min-max":
        worst, best = values.worst, values.best
        return ValueMap({pid: normalize_min_max(values[pid], worst, best) for pid in values.ids})
    raise ValueError(f"unknown metric {metric!r}")
