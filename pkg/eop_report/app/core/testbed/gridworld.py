"""Square gridworld with a goal corner, a step cost and windy cells.

States are numbered row-major (``s = row * size + col``); the agent starts
in the top-left corner and the goal is the bottom-right corner, which is
absorbing with zero reward. Actions are up, right, down, left; moves into a
wall leave the agent in place. In a windy cell the intended move succeeds
with probability ``1 - wind_prob``, otherwise the agent is blown up one row.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from ...config import settings
from .state import TabularMdp

MOVES = ((-1, 0), (0, 1), (1, 0), (0, -1))  # up, right, down, left
ACTION_NAMES = ("up", "right", "down", "left")


def _step(size: int, row: int, col: int, move: tuple[int, int]) -> int:
    r = min(max(row + move[0], 0), size - 1)
    c = min(max(col + move[1], 0), size - 1)
    return r * size + c


def make_gridworld(
    size: int = settings.DEFAULT_GRID_SIZE,
    goal_reward: float = settings.DEFAULT_GOAL_REWARD,
    step_cost: float = settings.DEFAULT_STEP_COST,
    windy_cells: Iterable[tuple[int, int]] = settings.DEFAULT_WINDY_CELLS,
    wind_prob: float = settings.DEFAULT_WIND_PROB,
    gamma: float = settings.DEFAULT_GAMMA,
    horizon: int = settings.DEFAULT_HORIZON,
    name: str = "gridworld",
) -> TabularMdp:
    if size < 2:
        raise ValueError(f"grid size must be at least 2, got {size}")
    if not 0.0 <= wind_prob <= 1.0:
        raise ValueError(f"wind_prob must be in [0, 1], got {wind_prob}")

    n_states, n_actions = size * size, len(MOVES)
    goal = n_states - 1
    windy = {r * size + c for r, c in windy_cells}

    P = np.zeros((n_states, n_actions, n_states))
    R = np.zeros((n_states, n_actions))
    for s in range(n_states):
        row, col = divmod(s, size)
        for a, move in enumerate(MOVES):
            if s == goal:
                P[s, a, s] = 1.0
                continue
            target = _step(size, row, col, move)
            if s in windy and wind_prob > 0.0:
                P[s, a, target] += 1.0 - wind_prob
                P[s, a, _step(size, row, col, MOVES[0])] += wind_prob
            else:
                P[s, a, target] = 1.0
            R[s, a] = -step_cost + goal_reward * P[s, a, goal]

    rho0 = np.zeros(n_states)
    rho0[0] = 1.0
    return TabularMdp(P=P, R=R, gamma=gamma, rho0=rho0, horizon=horizon, name=name)
