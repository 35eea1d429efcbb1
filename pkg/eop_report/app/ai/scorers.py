"""Offline policy selection scores computed on a validation dataset.

Each scorer returns one real per policy; ``SCORE_DIRECTIONS`` says whether
higher or lower scores rank a policy first.
"""

from __future__ import annotations

import numpy as np

from ..config import settings
from ..core.testbed.state import Dataset, TabularPolicy

SCORE_DIRECTIONS = {
    "fqe": "higher",
    "td_error": "lower",
    "action_diff": "lower",
    "critic": "higher",
}


def _require_data(validation: Dataset) -> dict[str, np.ndarray]:
    if validation.n_transitions == 0:
        raise ValueError("empty validation set")
    return validation.arrays


def initial_state_value(policy: TabularPolicy, q_table: np.ndarray, validation: Dataset) -> float:
    """Mean of ``E_{a~pi}[Q(s0, a)]`` over the trajectories' first states."""
    arr = _require_data(validation)
    starts = arr["s"][arr["first"]]
    return float(np.mean(policy.expected(q_table)[starts]))


def fit_fqe(
    policy: TabularPolicy,
    data: Dataset,
    gamma: float,
    iterations: int = settings.DEFAULT_FQE_ITERATIONS,
) -> np.ndarray:
    """Tabular fitted-Q evaluation of ``policy``.

    Each iteration regresses every observed (s, a) cell onto the empirical
    mean of ``r + gamma * E_{a'~pi}[Q(s', a')]``; cells without data stay 0
    and terminal transitions do not bootstrap.
    """
    arr = _require_data(data)
    n_states, n_actions = data.n_states, data.n_actions
    counts = np.zeros((n_states, n_actions))
    reward_sum = np.zeros((n_states, n_actions))
    next_counts = np.zeros((n_states, n_actions, n_states))
    np.add.at(counts, (arr["s"], arr["a"]), 1.0)
    np.add.at(reward_sum, (arr["s"], arr["a"]), arr["r"])
    np.add.at(next_counts, (arr["s"], arr["a"], arr["s_next"]), (~arr["done"]).astype(float))

    seen = counts > 0
    safe = np.where(seen, counts, 1.0)
    r_hat = np.where(seen, reward_sum / safe, 0.0)
    p_hat = next_counts / safe[..., None]

    q = np.zeros((n_states, n_actions))
    for _ in range(iterations):
        q = np.where(seen, r_hat + gamma * (p_hat @ policy.expected(q)), 0.0)
    return q


def fqe_score(
    policy: TabularPolicy,
    validation: Dataset,
    gamma: float,
    iterations: int = settings.DEFAULT_FQE_ITERATIONS,
) -> float:
    """V(s0) estimated by fitted-Q evaluation on the validation data."""
    q = fit_fqe(policy, validation, gamma, iterations)
    return initial_state_value(policy, q, validation)


def td_error_score(policy: TabularPolicy, q_table: np.ndarray, validation: Dataset, gamma: float) -> float:
    """Mean absolute temporal difference of ``q_table`` on validation transitions."""
    arr = _require_data(validation)
    next_values = policy.expected(q_table)[arr["s_next"]]
    targets = arr["r"] + gamma * np.where(arr["done"], 0.0, next_values)
    return float(np.mean(np.abs(targets - q_table[arr["s"], arr["a"]])))


def action_difference_score(policy: TabularPolicy, validation: Dataset) -> float:
    """Probability that the policy disagrees with the logged action."""
    arr = _require_data(validation)
    return float(np.mean(1.0 - policy.probs[arr["s"], arr["a"]]))


def critic_score(policy: TabularPolicy, q_table: np.ndarray, validation: Dataset) -> float:
    """V(s0) read off the training algorithm's own critic."""
    return initial_state_value(policy, q_table, validation)
