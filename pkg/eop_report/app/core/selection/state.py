"""Offline policy selection data types."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Mapping

Direction = Literal["higher", "lower"]
DIRECTIONS: tuple[str, ...] = ("higher", "lower")


@dataclass(frozen=True)
class ScoreTable:
    """OPS scores of one round: ``scores[policy_id][method]``."""

    scores: Mapping[str, Mapping[str, float]]
    directions: Mapping[str, Direction]
    round: int = 0

    def __post_init__(self) -> None:
        if not self.scores:
            raise ValueError("empty score table")
        scores = {str(p): {str(m): float(s) for m, s in row.items()} for p, row in self.scores.items()}
        methods = set(next(iter(scores.values())))
        for pid, row in scores.items():
            if set(row) != methods:
                raise ValueError(f"policy {pid!r} is not scored by every method")
            if not all(math.isfinite(s) for s in row.values()):
                raise ValueError(f"non-finite score for policy {pid!r}")
        for method in methods:
            if method not in self.directions:
                raise ValueError(f"missing direction for method {method!r}")
        for method, direction in self.directions.items():
            if direction not in DIRECTIONS:
                raise ValueError(f"unknown direction {direction!r} for method {method!r}")
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "directions", {m: self.directions[m] for m in sorted(methods)})

    @property
    def policy_ids(self) -> list[str]:
        return sorted(self.scores)

    @property
    def methods(self) -> list[str]:
        return list(self.directions)

    def column(self, method: str) -> dict[str, float]:
        if method not in self.directions:
            raise ValueError(f"unknown method {method!r}")
        return {pid: row[method] for pid, row in self.scores.items()}


@dataclass(frozen=True)
class SelectionStrategy:
    """Either seeded uniform selection or ranking by one score column."""

    kind: Literal["uniform", "by_score"]
    method: str | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("uniform", "by_score"):
            raise ValueError(f"unknown strategy kind {self.kind!r}")
        if self.kind == "by_score" and not self.method:
            raise ValueError("by_score strategy needs a method name")

    @classmethod
    def uniform(cls, seed: int = 0) -> "SelectionStrategy":
        return cls(kind="uniform", seed=seed)

    @classmethod
    def by_score(cls, method: str) -> "SelectionStrategy":
        return cls(kind="by_score", method=method)

    @classmethod
    def parse(cls, name: str, seed: int = 0) -> "SelectionStrategy":
        """``"uniform"`` or a score method name."""
        return cls.uniform(seed) if name == "uniform" else cls.by_score(name)

    @property
    def label(self) -> str:
        return "uniform" if self.kind == "uniform" else str(self.method)
