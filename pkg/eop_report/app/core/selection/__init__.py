"""Offline policy selection strategies and regret curves."""

from .controller import regret_curves, simulate_selection_rounds
from .rules import rank_policies, regret_curve, uniform_regret_eop
from .state import DIRECTIONS, Direction, ScoreTable, SelectionStrategy

__all__ = [
    "DIRECTIONS",
    "Direction",
    "ScoreTable",
    "SelectionStrategy",
    "rank_policies",
    "regret_curve",
    "regret_curves",
    "simulate_selection_rounds",
    "uniform_regret_eop",
]
