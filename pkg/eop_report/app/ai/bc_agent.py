"""Count-based behavioral cloning."""

from __future__ import annotations

import numpy as np

from ..core.testbed.state import Dataset, HyperparamAssignment, TabularPolicy


class BehavioralCloningAgent:
    """Imitates the logged actions with Laplace smoothing.

    ``pi(a|s) = (count(s, a) + alpha) / (count(s) + alpha * A)``; states
    absent from the data fall back to the uniform policy.
    """

    def __init__(self, assignment: HyperparamAssignment) -> None:
        self.alpha = float(assignment.get("laplace_smoothing", 0.0))
        if self.alpha < 0:
            raise ValueError(f"laplace_smoothing must be non-negative, got {self.alpha}")
        self.counts: np.ndarray | None = None

    def train(self, dataset: Dataset) -> TabularPolicy:
        n_states, n_actions = dataset.n_states, dataset.n_actions
        counts = np.zeros((n_states, n_actions))
        if dataset.n_transitions:
            arr = dataset.arrays
            np.add.at(counts, (arr["s"], arr["a"]), 1.0)
        self.counts = counts

        smoothed = counts + self.alpha
        totals = smoothed.sum(axis=1, keepdims=True)
        probs = np.full_like(counts, 1.0 / n_actions)
        visited = (counts.sum(axis=1) > 0) & (totals[:, 0] > 0)
        probs[visited] = smoothed[visited] / totals[visited]
        return TabularPolicy(probs)


def train_bc(train: Dataset, h: HyperparamAssignment) -> TabularPolicy:
    return BehavioralCloningAgent(h).train(train)
