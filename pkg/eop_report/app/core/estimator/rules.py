"""Expected maximum performance under an online evaluation budget.

All estimators return an :class:`EopCurve` (or a single moment pair for the
oracles). Draws are taken from the empirical distribution of the evaluated
policies' online returns.
"""

from __future__ import annotations

import logging
import math
from typing import Iterable, Sequence

import numpy as np

from ...config import settings
from ..sampling import derive_rng
from .state import EopCurve, EopPoint, SelectionRound, ValueSample

logger = logging.getLogger(__name__)


def _weighted_moments(values: np.ndarray, weights: np.ndarray) -> tuple[float, float]:
    mean = math.fsum(values * weights)
    var = math.fsum(weights * (values - mean) ** 2)
    return mean, math.sqrt(max(var, 0.0))


def _check_budget(max_budget: int) -> None:
    if int(max_budget) != max_budget or max_budget < 1:
        raise ValueError(f"budget must be a positive integer, got {max_budget}")


def eop_plugin(sample: ValueSample, max_budget: int) -> EopCurve:
    """ECDF plug-in estimate of E[max of b draws] for b = 1..max_budget.

    Draws are i.i.d. from the ECDF (with replacement), so budgets larger than
    the sample size are allowed. Tied values share one support point.
    """
    _check_budget(max_budget)
    support, ecdf = sample.support()
    previous = np.concatenate(([0.0], ecdf[:-1]))
    lo, hi = float(support[0]), float(support[-1])

    points = []
    for b in range(1, max_budget + 1):
        weights = ecdf**b - previous**b
        mean, std = _weighted_moments(support, weights)
        points.append(EopPoint(budget=b, mean=min(max(mean, lo), hi), std=std))
    return EopCurve(points=tuple(points), n=sample.n, label=sample.label)


def eop_without_replacement(sample: ValueSample, max_budget: int) -> EopCurve:
    """Exact E[max of b distinct policies] when b of the N are picked uniformly.

    Budgets beyond N are omitted.
    """
    _check_budget(max_budget)
    values = sample.array
    n = sample.n
    lo, hi = float(values[0]), float(values[-1])

    points = []
    for b in range(1, min(max_budget, n) + 1):
        total = math.comb(n, b)
        # The i-th smallest (1-based) is the max iff the other b-1 picks lie below it.
        weights = np.array([math.comb(i - 1, b - 1) / total for i in range(1, n + 1)])
        mean, std = _weighted_moments(values, weights)
        points.append(EopPoint(budget=b, mean=min(max(mean, lo), hi), std=std))
    return EopCurve(points=tuple(points), n=n, label=sample.label)


def expected_max_bruteforce(
    sample: ValueSample,
    b: int,
    cap: int = settings.DEFAULT_ENUMERATION_CAP,
) -> tuple[float, float]:
    """Exact mean and std of the max over all N**b ordered draws."""
    _check_budget(b)
    if sample.n**b > cap:
        raise ValueError("enumeration too large")

    values = sample.array
    maxima = values
    for _ in range(b - 1):
        # Row-major ravel keeps ascending tuple index order.
        maxima = np.maximum.outer(maxima, values).ravel()

    count = maxima.size
    mean = math.fsum(maxima) / count
    var = math.fsum((maxima - mean) ** 2) / count
    return mean, math.sqrt(var)


def expected_max_montecarlo(
    sample: ValueSample,
    b: int,
    trials: int,
    seed: int,
    chunk: int = settings.DEFAULT_MC_CHUNK,
) -> tuple[float, float]:
    """Monte Carlo mean of the max of b draws with replacement, and its standard error."""
    _check_budget(b)
    if trials < 100:
        raise ValueError(f"trials must be at least 100, got {trials}")

    values = sample.array
    rng = derive_rng(seed, "montecarlo")
    maxima = np.empty(trials, dtype=float)
    done = 0
    while done < trials:
        size = min(chunk, trials - done)
        # Values are sorted, so the max draw is the draw with the max index.
        idx = rng.integers(0, sample.n, size=(size, b)).max(axis=1)
        maxima[done:done + size] = values[idx]
        done += size

    if np.ptp(maxima) == 0:
        return float(maxima[0]), 0.0
    mean = float(maxima.mean())
    stderr = float(maxima.std(ddof=1) / math.sqrt(trials))
    return mean, stderr


def eop_vanilla_average(
    rounds: Iterable[SelectionRound | Sequence[float]],
    max_budget: int,
) -> EopCurve:
    """Mean over rounds of the running maximum at each budget.

    Valid for any selection strategy, including ones whose picks are not
    i.i.d. Points beyond the shortest round are omitted.
    """
    _check_budget(max_budget)
    rounds = [r if isinstance(r, SelectionRound) else SelectionRound(tuple(r)) for r in rounds]
    if not rounds:
        raise ValueError("no selection rounds")

    shortest = min(len(r) for r in rounds)
    budget = min(max_budget, shortest)
    if budget < max_budget:
        logger.debug("vanilla average truncated at budget %d (shortest round)", budget)

    matrix = np.array([r.ordered_values[:budget] for r in rounds], dtype=float)
    running = np.maximum.accumulate(matrix, axis=1)
    constant = np.ptp(running, axis=0) == 0
    means = np.where(constant, running[0], running.mean(axis=0))
    if len(rounds) > 1:
        stds = np.where(constant, 0.0, running.std(axis=0, ddof=1))
    else:
        stds = np.zeros(budget)

    points = tuple(
        EopPoint(budget=b + 1, mean=float(means[b]), std=float(stds[b])) for b in range(budget)
    )
    return EopCurve(points=points, n=shortest)
