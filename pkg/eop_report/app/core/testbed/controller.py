"""Testbed pipeline: logged data -> trained policies -> true values + OPS scores."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from ...ai.bc_agent import BehavioralCloningAgent
from ...ai.conservative_q_agent import ConservativeQAgent
from ...ai.scorers import (
    SCORE_DIRECTIONS,
    action_difference_score,
    critic_score,
    fit_fqe,
    fqe_score,
    td_error_score,
)
from ...config import settings
from ...config.loader import PipelineConfig
from ...data.mdp_file import load_mdp
from ..metrics import ValueMap
from ..records import RunRecord, aggregate_runs
from ..sampling import derive_rng, derive_seed
from ..selection import ScoreTable
from .rules import (
    collect_dataset,
    make_behavior_policy,
    policy_evaluation_exact,
    split_train_validation,
    value_iteration,
)
from .state import Dataset, HyperparamAssignment, TabularMdp, TabularPolicy

logger = logging.getLogger(__name__)


def sample_assignments(algorithm: str, n: int, seed: int) -> list[HyperparamAssignment]:
    """``n`` assignments drawn uniformly from the algorithm's grid."""
    if algorithm not in settings.ALGORITHM_GRIDS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    grid = settings.ALGORITHM_GRIDS[algorithm]
    rng = derive_rng(seed, "hparams", algorithm)
    assignments = []
    for i in range(n):
        params = {name: choices[int(rng.integers(len(choices)))] for name, choices in grid.items()}
        assignments.append(HyperparamAssignment(algorithm, params, f"{algorithm}-{i:03d}"))
    return assignments


@dataclass
class PipelineResult:
    runs: list[RunRecord] = field(default_factory=list)
    scores: dict[tuple[str, str], list[ScoreTable]] = field(default_factory=dict)
    aggregation: str = "mean"

    @property
    def values(self) -> dict[tuple[str, str], ValueMap]:
        """Seed-aggregated true values keyed by (environment, algorithm)."""
        return aggregate_runs(self.runs, self.aggregation)

    @property
    def environments(self) -> list[str]:
        return sorted({env for env, _ in self.scores})


class PipelineController:
    """Runs every (level, dataset size, seed round, algorithm) combination."""

    def __init__(self, config: PipelineConfig) -> None:
        self.config = config
        self.mdp: TabularMdp = load_mdp(config.mdp_path)
        self.q_star = value_iteration(self.mdp, config.vi_tol)
        self.assignments = {
            alg: sample_assignments(alg, config.n_assignments, config.master_seed)
            for alg in config.algorithms
        }

    def environment_name(self, level: str, n_traj: int) -> str:
        return f"{self.mdp.name}-{level}-{n_traj}"

    def collect(self, level: str, n_traj: int) -> Dataset:
        env = self.environment_name(level, n_traj)
        behavior = make_behavior_policy(level, self.q_star, self.config.epsilons)
        seed = derive_seed(self.config.master_seed, env, "collect")
        return collect_dataset(self.mdp, behavior, n_traj, seed, level=level)

    def train(self, h: HyperparamAssignment, data: Dataset) -> tuple[TabularPolicy, object]:
        """Policy plus the learner (whose critic some scorers read)."""
        if h.algorithm == "bc":
            agent = BehavioralCloningAgent(h)
        elif h.algorithm == "cq":
            agent = ConservativeQAgent(h, gamma=self.mdp.gamma)
        else:
            raise ValueError(f"unknown algorithm {h.algorithm!r}")
        return agent.train(data), agent

    def score(self, policy: TabularPolicy, agent: object, train: Dataset, valid: Dataset) -> dict[str, float]:
        gamma, iterations = self.mdp.gamma, self.config.fqe_iterations
        q_train = fit_fqe(policy, train, gamma, iterations)
        scores = {
            "fqe": fqe_score(policy, valid, gamma, iterations),
            "td_error": td_error_score(policy, q_train, valid, gamma),
            "action_diff": action_difference_score(policy, valid),
        }
        if isinstance(agent, ConservativeQAgent):
            scores["critic"] = critic_score(policy, agent.q_table, valid)
        return scores

    def run(self) -> PipelineResult:
        config = self.config
        result = PipelineResult(aggregation=config.aggregation)
        for level in config.levels:
            for n_traj in config.dataset_sizes:
                env = self.environment_name(level, n_traj)
                dataset = self.collect(level, n_traj)
                logger.info("%s: %d trajectories, %d transitions", env, len(dataset), dataset.n_transitions)
                for k in range(config.seeds):
                    split_seed = derive_seed(config.master_seed, env, "split", k)
                    train, valid = split_train_validation(dataset, config.split_ratio, split_seed)
                    for alg in config.algorithms:
                        table = self._round(env, alg, k, train, valid, result.runs)
                        result.scores.setdefault((env, alg), []).append(table)
        logger.info("pipeline done: %d runs, %d score files", len(result.runs), len(result.scores))
        return result

    def _round(
        self, env: str, alg: str, k: int, train: Dataset, valid: Dataset, runs: list[RunRecord]
    ) -> ScoreTable:
        cells: dict[str, dict[str, float]] = {}
        for h in self.assignments[alg]:
            policy, agent = self.train(h, train)
            value = policy_evaluation_exact(self.mdp, policy)
            runs.append(RunRecord(alg, env, h.assignment_id, k, value))
            cells[h.assignment_id] = self.score(policy, agent, train, valid)
            logger.debug("%s %s seed %d: value %.4f", env, h.assignment_id, k, value)
        methods = next(iter(cells.values()))
        return ScoreTable(cells, {m: SCORE_DIRECTIONS[m] for m in methods}, round=k)


def run_pipeline(config: PipelineConfig) -> PipelineResult:
    return PipelineController(config).run()
