"""Expected-online-performance estimator data types."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np


def _check_finite(values: Iterable[float]) -> list[float]:
    out = [float(v) for v in values]
    if not all(math.isfinite(v) for v in out):
        raise ValueError("non-finite input")
    return out


@dataclass(frozen=True)
class ValueSample:
    """Online returns of the N evaluated policies, kept in ascending order."""

    values: tuple[float, ...]
    label: str = ""

    def __post_init__(self) -> None:
        if len(self.values) == 0:
            raise ValueError("empty sample")
        checked = _check_finite(self.values)
        object.__setattr__(self, "values", tuple(sorted(checked)))

    @classmethod
    def from_values(cls, values: Iterable[float], label: str = "") -> "ValueSample":
        return cls(values=tuple(values), label=label)

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def support(self) -> tuple[np.ndarray, np.ndarray]:
        """Distinct values and their ECDF at each of them (ties merged)."""
        distinct, counts = np.unique(self.array, return_counts=True)
        return distinct, np.cumsum(counts) / self.n


@dataclass(frozen=True)
class EopPoint:
    budget: int
    mean: float
    std: float


@dataclass(frozen=True)
class EopCurve:
    points: tuple[EopPoint, ...]
    n: int
    label: str = ""

    @property
    def budgets(self) -> list[int]:
        return [p.budget for p in self.points]

    @property
    def means(self) -> list[float]:
        return [p.mean for p in self.points]

    @property
    def stds(self) -> list[float]:
        return [p.std for p in self.points]

    def __len__(self) -> int:
        return len(self.points)

    def at(self, budget: int) -> EopPoint:
        """Point for ``budget`` (1-based)."""
        for point in self.points:
            if point.budget == budget:
                return point
        raise KeyError(f"budget {budget} not on curve")


@dataclass(frozen=True)
class SelectionRound:
    """Online values of the policies one OPS run picked, in pick order."""

    ordered_values: tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if len(self.ordered_values) == 0:
            raise ValueError("empty round")
        object.__setattr__(self, "ordered_values", tuple(_check_finite(self.ordered_values)))

    def __len__(self) -> int:
        return len(self.ordered_values)
