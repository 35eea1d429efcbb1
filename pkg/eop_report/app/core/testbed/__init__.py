"""Tabular offline RL testbed: MDP, behavior data and exact evaluation."""

from .gridworld import ACTION_NAMES, MOVES, make_gridworld
from .rules import (
    collect_dataset,
    epsilon_greedy,
    make_behavior_policy,
    occupancy_measure,
    policy_evaluation_exact,
    q_values,
    split_train_validation,
    state_values,
    value_iteration,
)
from .state import Dataset, HyperparamAssignment, Level, TabularMdp, TabularPolicy, Transition

__all__ = [
    "ACTION_NAMES",
    "Dataset",
    "HyperparamAssignment",
    "Level",
    "MOVES",
    "TabularMdp",
    "TabularPolicy",
    "Transition",
    "collect_dataset",
    "epsilon_greedy",
    "make_behavior_policy",
    "make_gridworld",
    "occupancy_measure",
    "policy_evaluation_exact",
    "q_values",
    "split_train_validation",
    "state_values",
    "value_iteration",
]
