"""Tabular offline RL world: MDP, policies, logged data, hyperparameters."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Literal, Mapping

import numpy as np

Level = Literal["low", "medium", "high"]

ROW_TOL = 1e-9


def _check_stochastic(matrix: np.ndarray, what: str) -> None:
    if np.any(matrix < 0):
        raise ValueError(f"{what} has negative entries")
    if not np.allclose(matrix.sum(axis=-1), 1.0, rtol=0.0, atol=ROW_TOL):
        raise ValueError(f"{what} rows must sum to 1")


@dataclass(frozen=True, eq=False)
class TabularMdp:
    """Finite MDP with expected rewards ``R[s, a]`` and dynamics ``P[s, a, s']``."""

    P: np.ndarray
    R: np.ndarray
    gamma: float
    rho0: np.ndarray
    horizon: int
    name: str = "mdp"

    def __post_init__(self) -> None:
        P = np.asarray(self.P, dtype=float)
        R = np.asarray(self.R, dtype=float)
        rho0 = np.asarray(self.rho0, dtype=float)
        if P.ndim != 3 or P.shape[0] != P.shape[2]:
            raise ValueError(f"P must have shape (S, A, S), got {P.shape}")
        if R.shape != P.shape[:2]:
            raise ValueError(f"R must have shape {P.shape[:2]}, got {R.shape}")
        if rho0.shape != (P.shape[0],):
            raise ValueError(f"rho0 must have shape ({P.shape[0]},), got {rho0.shape}")
        if not 0.0 <= self.gamma < 1.0:
            raise ValueError(f"gamma must be in [0, 1), got {self.gamma}")
        if self.horizon < 1:
            raise ValueError(f"horizon must be positive, got {self.horizon}")
        _check_stochastic(P, "P")
        _check_stochastic(rho0, "rho0")
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "rho0", rho0)

    @property
    def n_states(self) -> int:
        return self.P.shape[0]

    @property
    def n_actions(self) -> int:
        return self.P.shape[1]

    @cached_property
    def terminal(self) -> np.ndarray:
        """Absorbing zero-reward states; reaching one ends an episode."""
        states = np.arange(self.n_states)
        self_loop = np.all(self.P[states, :, states] == 1.0, axis=1)
        return self_loop & np.all(self.R == 0.0, axis=1)

    def with_rho0(self, rho0: np.ndarray) -> "TabularMdp":
        return TabularMdp(P=self.P, R=self.R, gamma=self.gamma, rho0=rho0, horizon=self.horizon, name=self.name)


@dataclass(frozen=True, eq=False)
class TabularPolicy:
    """Stochastic policy ``probs[s, a]``."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        probs = np.asarray(self.probs, dtype=float)
        if probs.ndim != 2:
            raise ValueError(f"policy must be an (S, A) matrix, got {probs.shape}")
        _check_stochastic(probs, "policy")
        object.__setattr__(self, "probs", probs)

    @classmethod
    def uniform(cls, n_states: int, n_actions: int) -> "TabularPolicy":
        return cls(np.full((n_states, n_actions), 1.0 / n_actions))

    @classmethod
    def greedy(cls, q: np.ndarray) -> "TabularPolicy":
        """Deterministic argmax policy; ties go to the lowest action index."""
        probs = np.zeros_like(q, dtype=float)
        probs[np.arange(q.shape[0]), np.argmax(q, axis=1)] = 1.0
        return cls(probs)

    def expected(self, q: np.ndarray) -> np.ndarray:
        """``E_{a~pi}[q(s, a)]`` for every state."""
        return np.sum(self.probs * q, axis=1)

    def support(self, state: int) -> set[int]:
        return {int(a) for a in np.flatnonzero(self.probs[state] > 0)}


@dataclass(frozen=True)
class Transition:
    s: int
    a: int
    r: float
    s_next: int
    done: bool


@dataclass(frozen=True, eq=False)
class Dataset:
    """Logged trajectories plus where they came from."""

    trajectories: tuple[tuple[Transition, ...], ...]
    n_states: int
    n_actions: int
    level: str = ""
    seed: int | None = None

    def __len__(self) -> int:
        return len(self.trajectories)

    @property
    def n_transitions(self) -> int:
        return sum(len(t) for t in self.trajectories)

    @cached_property
    def arrays(self) -> dict[str, np.ndarray]:
        """Column view of all transitions (``first`` marks trajectory starts)."""
        flat = [(t, i == 0) for traj in self.trajectories for i, t in enumerate(traj)]
        return {
            "s": np.array([t.s for t, _ in flat], dtype=int),
            "a": np.array([t.a for t, _ in flat], dtype=int),
            "r": np.array([t.r for t, _ in flat], dtype=float),
            "s_next": np.array([t.s_next for t, _ in flat], dtype=int),
            "done": np.array([t.done for t, _ in flat], dtype=bool),
            "first": np.array([first for _, first in flat], dtype=bool),
        }

    def observed_actions(self) -> dict[int, set[int]]:
        seen: dict[int, set[int]] = {}
        for traj in self.trajectories:
            for t in traj:
                seen.setdefault(t.s, set()).add(t.a)
        return seen

    def subset(self, indices) -> "Dataset":
        return Dataset(
            tuple(self.trajectories[i] for i in indices),
            n_states=self.n_states,
            n_actions=self.n_actions,
            level=self.level,
            seed=self.seed,
        )


@dataclass(frozen=True)
class HyperparamAssignment:
    algorithm: str
    params: Mapping[str, Any] = field(default_factory=dict)
    assignment_id: str = ""

    def get(self, name: str, default: Any = None) -> Any:
        return self.params.get(name, default)
