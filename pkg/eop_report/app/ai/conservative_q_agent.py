"""Tabular Q-learning on logged transitions with a penalty on unseen actions."""

from __future__ import annotations

import logging

import numpy as np

from ..config import settings
from ..core.testbed.state import Dataset, HyperparamAssignment, TabularPolicy

logger = logging.getLogger(__name__)


class ConservativeQAgent:
    """Offline Q-learning that distrusts actions the data never shows.

    Sweeps the transitions in dataset order ``sweeps`` times, then lowers
    Q(s, a) by ``alpha`` for every pair absent from the data and acts
    greedily (lowest action index on ties). The penalized table is kept as
    the agent's critic.
    """

    def __init__(self, assignment: HyperparamAssignment, gamma: float = settings.DEFAULT_GAMMA) -> None:
        self.alpha = float(assignment.get("alpha", 0.0))
        self.learning_rate = float(assignment.get("learning_rate", 0.1))
        self.sweeps = int(assignment.get("sweeps", 20))
        self.gamma = gamma
        if self.alpha < 0:
            raise ValueError(f"alpha must be non-negative, got {self.alpha}")
        if not 0.0 < self.learning_rate <= 1.0:
            raise ValueError(f"learning_rate must be in (0, 1], got {self.learning_rate}")
        if self.sweeps < 1:
            raise ValueError(f"sweeps must be positive, got {self.sweeps}")
        self.q_table: np.ndarray | None = None

    def train(self, dataset: Dataset) -> TabularPolicy:
        if dataset.n_transitions == 0:
            raise ValueError("empty dataset")
        n_states, n_actions = dataset.n_states, dataset.n_actions
        transitions = [t for traj in dataset.trajectories for t in traj]

        # Plain lists keep the sequential update loop fast.
        q = [[0.0] * n_actions for _ in range(n_states)]
        lr, gamma = self.learning_rate, self.gamma
        for _ in range(self.sweeps):
            for t in transitions:
                target = t.r if t.done else t.r + gamma * max(q[t.s_next])
                row = q[t.s]
                row[t.a] += lr * (target - row[t.a])

        table = np.array(q)
        seen = np.zeros((n_states, n_actions), dtype=bool)
        arr = dataset.arrays
        seen[arr["s"], arr["a"]] = True
        table[~seen] -= self.alpha
        self.q_table = table
        logger.debug("conservative Q trained: alpha=%g lr=%g sweeps=%d", self.alpha, lr, self.sweeps)
        return TabularPolicy.greedy(table)


def train_conservative_q(
    train: Dataset,
    h: HyperparamAssignment,
    gamma: float = settings.DEFAULT_GAMMA,
) -> TabularPolicy:
    return ConservativeQAgent(h, gamma=gamma).train(train)
