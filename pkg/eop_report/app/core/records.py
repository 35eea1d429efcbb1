"""Online evaluation results shared by every report."""

from __future__ import annotations

import math
import statistics
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Literal

from .metrics import ValueMap

Aggregation = Literal["mean", "median", "min"]
AGGREGATIONS: tuple[str, ...] = ("mean", "median", "min")


@dataclass(frozen=True)
class RunRecord:
    """One online evaluation: (algorithm, environment, hyperparameters, seed) -> return."""

    algorithm: str
    environment: str
    hyperparam_id: str
    seed: int
    value: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise ValueError("non-finite value")

    @property
    def key(self) -> tuple[str, str, str, int]:
        return (self.algorithm, self.environment, self.hyperparam_id, self.seed)


def _reduce(values: list[float], how: Aggregation) -> float:
    if how == "mean":
        return math.fsum(values) / len(values)
    if how == "median":
        return float(statistics.median(values))
    if how == "min":
        return min(values)
    raise ValueError(f"unknown seed aggregation {how!r}")


def aggregate_runs(
    records: Iterable[RunRecord],
    how: Aggregation = "mean",
) -> dict[tuple[str, str], ValueMap]:
    """One value per hyperparameter assignment, keyed by (environment, algorithm)."""
    grouped: dict[tuple[str, str], dict[str, list[float]]] = defaultdict(lambda: defaultdict(list))
    for record in records:
        grouped[(record.environment, record.algorithm)][record.hyperparam_id].append(record.value)

    return {
        key: ValueMap({hp: _reduce(vals, how) for hp, vals in sorted(per_hp.items())})
        for key, per_hp in sorted(grouped.items())
    }
