"""Ranking policies by OPS scores and budget-dependent regret."""

from __future__ import annotations

from ..estimator import EopCurve, ValueSample, eop_plugin
from ..metrics import RankedList, ValueMap, inverse_normalized_regret_at_k
from ..sampling import shuffled
from .state import ScoreTable, SelectionStrategy


def rank_policies(table: ScoreTable, strategy: SelectionStrategy) -> RankedList:
    """Deterministic total order of the table's policies.

    Score ties go to the lexicographically smaller policy id. Uniform
    selection is a permutation seeded by the strategy seed and the round.
    """
    ids = table.policy_ids
    if strategy.kind == "uniform":
        return RankedList.of(shuffled(ids, strategy.seed, "uniform", table.round))

    column = table.column(strategy.method)
    if table.directions[strategy.method] == "higher":
        order = sorted(ids, key=lambda p: (-column[p], p))
    else:
        order = sorted(ids, key=lambda p: (column[p], p))
    return RankedList.of(order)


def regret_curve(ranking: RankedList, values: ValueMap) -> list[float]:
    """Regret@b for b = 1..N."""
    return [inverse_normalized_regret_at_k(ranking, values, k) for k in range(1, len(ranking) + 1)]


def uniform_regret_eop(values: ValueMap, max_budget: int) -> EopCurve:
    """Plug-in expected regret curve of uniform selection.

    Min-max normalization is increasing and affine, so the plug-in curve of
    the normalized values is the expected normalized best-so-far value.
    """
    best, worst = values.best, values.worst
    if best == worst:
        raise ValueError("degenerate value range")
    normalized = [(values[pid] - worst) / (best - worst) for pid in values.ids]
    return eop_plugin(ValueSample.from_values(normalized, label="uniform"), max_budget)
