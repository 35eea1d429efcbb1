"""Ranking and value containers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping


@dataclass(frozen=True)
class RankedList:
    """Policy ids in preference order (position 0 = rank 1)."""

    policy_ids: tuple[str, ...]

    def __post_init__(self) -> None:
        ids = tuple(str(p) for p in self.policy_ids)
        if not ids:
            raise ValueError("empty ranking")
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate policy id in ranking")
        object.__setattr__(self, "policy_ids", ids)

    @classmethod
    def of(cls, ids: Iterable[str]) -> "RankedList":
        return cls(policy_ids=tuple(ids))

    @classmethod
    def from_ranks(cls, ranks: Mapping[str, float]) -> "RankedList":
        """Build from ``id -> rank`` (1 = most preferred); ties are rejected."""
        if len(set(ranks.values())) != len(ranks):
            raise ValueError("tie-free formula only")
        return cls(policy_ids=tuple(sorted(ranks, key=lambda p: ranks[p])))

    def __len__(self) -> int:
        return len(self.policy_ids)

    def __iter__(self):
        return iter(self.policy_ids)

    def rank_of(self) -> dict[str, int]:
        return {pid: i + 1 for i, pid in enumerate(self.policy_ids)}

    def top(self, k: int) -> tuple[str, ...]:
        return self.policy_ids[:k]


@dataclass(frozen=True)
class ValueMap:
    """True online value per policy id."""

    values: Mapping[str, float]

    def __post_init__(self) -> None:
        clean = {str(k): float(v) for k, v in self.values.items()}
        if not clean:
            raise ValueError("empty value map")
        if not all(math.isfinite(v) for v in clean.values()):
            raise ValueError("non-finite input")
        object.__setattr__(self, "values", clean)

    def __getitem__(self, policy_id: str) -> float:
        try:
            return self.values[policy_id]
        except KeyError:
            raise ValueError(f"policy {policy_id!r} missing from values") from None

    def __len__(self) -> int:
        return len(self.values)

    def __contains__(self, policy_id: object) -> bool:
        return policy_id in self.values

    @property
    def ids(self) -> list[str]:
        return sorted(self.values)

    @property
    def best(self) -> float:
        return max(self.values.values())

    @property
    def worst(self) -> float:
        return min(self.values.values())

    def true_ranking(self) -> RankedList:
        """Policies by descending value, ties by ascending id."""
        return RankedList.of(sorted(self.values, key=lambda p: (-self.values[p], p)))
