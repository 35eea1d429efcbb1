"""Dynamic programming, behavior policies and logged data for the tabular testbed."""

from __future__ import annotations

import logging
import math
from typing import Sequence

import numpy as np

from ...config import settings
from ..sampling import derive_rng
from .state import Dataset, Level, TabularMdp, TabularPolicy, Transition

logger = logging.getLogger(__name__)


def value_iteration(mdp: TabularMdp, tol: float, max_iterations: int = 100_000) -> np.ndarray:
    """Optimal Q table with sup-norm Bellman residual at most ``tol``."""
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    q = np.zeros_like(mdp.R)
    for _ in range(max_iterations):
        updated = mdp.R + mdp.gamma * (mdp.P @ q.max(axis=1))
        residual = float(np.max(np.abs(updated - q)))
        q = updated
        if residual <= tol:
            return q
    logger.warning("value iteration stopped after %d sweeps (residual %.3g)", max_iterations, residual)
    return q


def _policy_dynamics(mdp: TabularMdp, policy: TabularPolicy) -> tuple[np.ndarray, np.ndarray]:
    if policy.probs.shape != mdp.R.shape:
        raise ValueError(f"policy shape {policy.probs.shape} does not match MDP {mdp.R.shape}")
    p_pi = np.einsum("sa,sat->st", policy.probs, mdp.P)
    r_pi = np.sum(policy.probs * mdp.R, axis=1)
    return p_pi, r_pi


def state_values(mdp: TabularMdp, policy: TabularPolicy) -> np.ndarray:
    """V^pi for every state, solving ``(I - gamma P_pi) V = r_pi``."""
    p_pi, r_pi = _policy_dynamics(mdp, policy)
    return np.linalg.solve(np.eye(mdp.n_states) - mdp.gamma * p_pi, r_pi)


def q_values(mdp: TabularMdp, policy: TabularPolicy) -> np.ndarray:
    return mdp.R + mdp.gamma * (mdp.P @ state_values(mdp, policy))


def policy_evaluation_exact(mdp: TabularMdp, policy: TabularPolicy) -> float:
    """True discounted value of ``policy`` from the initial-state distribution."""
    return float(mdp.rho0 @ state_values(mdp, policy))


def epsilon_greedy(q: np.ndarray, epsilon: float) -> TabularPolicy:
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must be in [0, 1], got {epsilon}")
    n_actions = q.shape[1]
    greedy = TabularPolicy.greedy(q).probs
    return TabularPolicy((1.0 - epsilon) * greedy + epsilon / n_actions)


def make_behavior_policy(
    level: Level,
    q_star: np.ndarray,
    epsilons: Sequence[float] = settings.DEFAULT_EPSILONS,
) -> TabularPolicy:
    """Epsilon-greedy data-collecting policy for an expertise level.

    ``epsilons`` lists the low, medium and high level epsilons.
    """
    if level not in settings.LEVELS:
        raise ValueError(f"unknown level {level!r}; expected one of {settings.LEVELS}")
    if len(epsilons) != len(settings.LEVELS):
        raise ValueError(f"need {len(settings.LEVELS)} epsilons, got {len(epsilons)}")
    if any(not 0.0 <= e <= 1.0 for e in epsilons):
        raise ValueError("epsilons must lie in [0, 1]")
    if any(hi >= lo for lo, hi in zip(epsilons, epsilons[1:])):
        raise ValueError("epsilons must strictly decrease from low to high")
    return epsilon_greedy(q_star, epsilons[settings.LEVELS.index(level)])


def _cumulative(probs: np.ndarray) -> np.ndarray:
    cum = np.cumsum(probs, axis=-1)
    return cum / cum[..., -1:]


def _draw(cum: np.ndarray, rng: np.random.Generator) -> int:
    return int(np.searchsorted(cum, rng.random(), side="right"))


def collect_dataset(mdp: TabularMdp, policy: TabularPolicy, n_traj: int, seed: int, level: str = "") -> Dataset:
    """Roll out ``n_traj`` episodes of ``policy``; no extra exploration noise."""
    if n_traj not in settings.TRAJECTORY_SCHEME:
        raise ValueError(f"n_traj must be one of {settings.TRAJECTORY_SCHEME}, got {n_traj}")
    rng = derive_rng(seed, "collect")
    start_cum = _cumulative(mdp.rho0)
    policy_cum = _cumulative(policy.probs)
    next_cum = _cumulative(mdp.P)
    terminal = mdp.terminal

    trajectories = []
    for _ in range(n_traj):
        s = _draw(start_cum, rng)
        steps = []
        for _ in range(mdp.horizon):
            a = _draw(policy_cum[s], rng)
            s_next = _draw(next_cum[s, a], rng)
            done = bool(terminal[s_next])
            steps.append(Transition(s=s, a=a, r=float(mdp.R[s, a]), s_next=s_next, done=done))
            if done:
                break
            s = s_next
        trajectories.append(tuple(steps))

    logger.debug("collected %d trajectories (%s level)", n_traj, level or "?")
    return Dataset(
        tuple(trajectories),
        n_states=mdp.n_states,
        n_actions=mdp.n_actions,
        level=level,
        seed=seed,
    )


def split_train_validation(dataset: Dataset, ratio: float, seed: int) -> tuple[Dataset, Dataset]:
    """Trajectory-wise random split into training and validation parts."""
    n = len(dataset)
    if n < 2:
        raise ValueError("need at least 2 trajectories to split")
    if not 0.0 < ratio < 1.0:
        raise ValueError(f"ratio must be in (0, 1), got {ratio}")
    n_train = min(max(math.floor(ratio * n + 1e-9), 1), n - 1)
    order = derive_rng(seed, "split").permutation(n)
    train = sorted(int(i) for i in order[:n_train])
    valid = sorted(int(i) for i in order[n_train:])
    return dataset.subset(train), dataset.subset(valid)


def occupancy_measure(mdp: TabularMdp, policy: TabularPolicy) -> np.ndarray:
    """Normalized expected state-action visits of one episode."""
    p_sa = mdp.P
    visits = np.zeros_like(mdp.R)
    d = mdp.rho0.copy()
    for _ in range(mdp.horizon):
        flow = d[:, None] * policy.probs
        visits += flow
        d = np.einsum("sa,sat->t", flow, p_sa)
        d[mdp.terminal] = 0.0
    return visits / visits.sum()
