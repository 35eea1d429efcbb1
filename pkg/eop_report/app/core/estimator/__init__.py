"""Expected online performance estimators."""

from .rules import (
    eop_plugin,
    eop_vanilla_average,
    eop_without_replacement,
    expected_max_bruteforce,
    expected_max_montecarlo,
)
from .state import EopCurve, EopPoint, SelectionRound, ValueSample

__all__ = [
    "EopCurve",
    "EopPoint",
    "SelectionRound",
    "ValueSample",
    "eop_plugin",
    "eop_vanilla_average",
    "eop_without_replacement",
    "expected_max_bruteforce",
    "expected_max_montecarlo",
]
