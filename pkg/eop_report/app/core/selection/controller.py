"""Repeated offline policy selection rounds and strategy comparison."""

from __future__ import annotations

import logging
from typing import Sequence

from ..estimator import EopCurve, SelectionRound, eop_vanilla_average
from ..metrics import ValueMap
from ..sampling import derive_rng
from .rules import rank_policies, uniform_regret_eop
from .state import ScoreTable, SelectionStrategy

logger = logging.getLogger(__name__)


def _check_coverage(table: ScoreTable, values: ValueMap) -> None:
    if set(table.policy_ids) != set(values.ids):
        raise ValueError(f"coverage mismatch in round {table.round}")


def simulate_selection_rounds(
    tables: Sequence[ScoreTable],
    values: ValueMap,
    strategy: SelectionStrategy,
    budgets: range,
    replacement: bool = False,
) -> list[SelectionRound]:
    """True values of the picked policies, in pick order, one round per table.

    With ``replacement`` uniform picks are independent draws from a stream
    derived from (strategy seed, round index). Otherwise every strategy
    picks in ``rank_policies`` order and never repeats a policy.
    """
    if not tables:
        raise ValueError("no score tables")
    if len(budgets) == 0:
        raise ValueError("empty budget range")
    length = max(budgets)

    rounds = []
    for index, table in enumerate(tables):
        _check_coverage(table, values)
        if strategy.kind == "uniform" and replacement:
            ids = values.ids
            rng = derive_rng(strategy.seed, "rounds", index)
            picks = [ids[i] for i in rng.integers(0, len(ids), size=length)]
        else:
            picks = list(rank_policies(table, strategy).top(length))
        rounds.append(SelectionRound(tuple(values[pid] for pid in picks)))

    logger.debug("simulated %d %s rounds up to budget %d", len(rounds), strategy.label, length)
    return rounds


def regret_curves(
    tables: Sequence[ScoreTable],
    values: ValueMap,
    strategies: Sequence[SelectionStrategy],
    max_budget: int,
    replacement: bool = True,
) -> dict[str, EopCurve]:
    """Expected regret@b curve per strategy.

    Uniform selection uses the plug-in estimator when ``replacement`` is
    set, otherwise simulated permutations; score strategies average the
    running best normalized value over rounds.
    """
    best, worst = values.best, values.worst
    if best == worst:
        raise ValueError("degenerate value range")
    normalized = ValueMap({pid: (values[pid] - worst) / (best - worst) for pid in values.ids})
    budget = min(max_budget, len(values)) if not replacement else max_budget

    curves: dict[str, EopCurve] = {}
    for strategy in strategies:
        if strategy.kind == "uniform" and replacement:
            curve = uniform_regret_eop(values, budget)
        else:
            rounds = simulate_selection_rounds(
                tables, normalized, strategy, range(1, budget + 1), replacement=False
            )
            curve = eop_vanilla_average(rounds, budget)
        curves[strategy.label] = EopCurve(points=curve.points, n=len(values), label=strategy.label)
    return curves
