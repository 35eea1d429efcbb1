import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eop_report.app.core.estimator import (
    EopCurve,
    SelectionRound,
    ValueSample,
    eop_plugin,
    eop_vanilla_average,
    eop_without_replacement,
    expected_max_bruteforce,
    expected_max_montecarlo,
)

finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)


def sample_of(values, label=""):
    return ValueSample.from_values(values, label=label)


# --- ValueSample ---

def test_sample_is_sorted_and_keeps_label():
    sample = sample_of([3.0, 1.0, 2.0], label="bc")
    assert sample.values == (1.0, 2.0, 3.0)
    assert sample.n == 3
    assert sample.label == "bc"


@pytest.mark.parametrize("values, message", [([], "empty sample"), ([1.0, math.nan], "non-finite input"), ([math.inf], "non-finite input")])
def test_sample_rejects_bad_input(values, message):
    with pytest.raises(ValueError, match=message):
        sample_of(values)


def test_support_merges_ties():
    support, ecdf = sample_of([1.0, 2.0, 1.0]).support()
    np.testing.assert_array_equal(support, [1.0, 2.0])
    np.testing.assert_allclose(ecdf, [2 / 3, 1.0])


# --- plug-in ---

@pytest.mark.parametrize("c", [-3.5, 0.0, 7.25])
def test_plugin_constant_sample(c):
    curve = eop_plugin(sample_of([c, c, c]), 3)
    assert curve.means == [c, c, c]
    assert curve.stds == [0.0, 0.0, 0.0]


def test_plugin_two_values_budget_two():
    assert eop_plugin(sample_of([1.0, 2.0]), 2).at(2).mean == pytest.approx(1.75, abs=1e-12)


def test_plugin_first_budget_is_mean():
    assert eop_plugin(sample_of([1.0, 2.0, 3.0]), 1).at(1).mean == pytest.approx(2.0, abs=1e-12)


def test_plugin_ties_use_merged_ecdf():
    curve = eop_plugin(sample_of([1.0, 1.0, 2.0]), 2)
    assert curve.at(2).mean == pytest.approx(14 / 9, abs=1e-12)
    second_moment = 1.0 * 4 / 9 + 4.0 * 5 / 9
    assert curve.at(2).std == pytest.approx(math.sqrt(second_moment - (14 / 9) ** 2), abs=1e-12)


def test_plugin_reconstructs_budget_table_row():
    curve = eop_plugin(sample_of([1159.5, 1879.5, 2343.0]), 3)
    assert [round(m) for m in curve.means] == [1794, 2057, 2179]


def test_plugin_allows_budgets_beyond_sample_size():
    curve = eop_plugin(sample_of([0.0, 1.0]), 5)
    assert curve.budgets == [1, 2, 3, 4, 5]
    assert curve.n == 2
    assert curve.at(5).mean == pytest.approx(1 - 0.5**5, abs=1e-12)


def test_plugin_single_value_is_flat():
    curve = eop_plugin(sample_of([4.0]), 10)
    assert set(curve.means) == {4.0}
    assert set(curve.stds) == {0.0}


def test_plugin_converges_to_max():
    values = [0.3, -1.0, 2.5, 2.0, 0.0, 1.1, -0.7, 2.4, 0.9, 1.6]
    curve = eop_plugin(sample_of(values), 1000)
    spread = max(values) - min(values)
    assert abs(curve.at(1000).mean - max(values)) <= 1e-6 * spread


@pytest.mark.parametrize("budget", [0, -1, 1.5])
def test_plugin_rejects_bad_budget(budget):
    with pytest.raises(ValueError):
        eop_plugin(sample_of([1.0]), budget)


@settings(max_examples=200, deadline=None)
@given(values=st.lists(finite, min_size=2, max_size=6), b=st.integers(min_value=1, max_value=4))
def test_plugin_matches_exhaustive_enumeration(values, b):
    sample = sample_of(values)
    point = eop_plugin(sample, b).at(b)
    mean, std = expected_max_bruteforce(sample, b)
    assert abs(point.mean - mean) <= 1e-12
    assert abs(point.std - std) <= 1e-12


@settings(max_examples=150, deadline=None)
@given(values=st.lists(finite, min_size=1, max_size=12), budget=st.integers(min_value=1, max_value=20))
def test_plugin_curve_properties(values, budget):
    curve = eop_plugin(sample_of(values), budget)
    means = curve.means
    assert len(curve) == budget
    assert means[0] == pytest.approx(math.fsum(values) / len(values), rel=1e-12, abs=1e-12)
    assert all(later >= earlier - 1e-12 for earlier, later in zip(means, means[1:]))
    assert all(min(values) <= m <= max(values) for m in means)
    assert all(s >= 0.0 for s in curve.stds)


@settings(max_examples=120, deadline=None)
@given(
    values=st.lists(finite, min_size=1, max_size=8),
    scale=st.floats(min_value=0.1, max_value=50.0),
    shift=st.floats(min_value=-100.0, max_value=100.0),
)
def test_plugin_affine_equivariance(values, scale, shift):
    base = eop_plugin(sample_of(values), 6)
    moved = eop_plugin(sample_of([scale * v + shift for v in values]), 6)
    for p, q in zip(base.points, moved.points):
        expected_mean = scale * p.mean + shift
        assert q.mean == pytest.approx(expected_mean, rel=1e-9, abs=1e-9 * (abs(shift) + scale * 10))
        assert q.std == pytest.approx(scale * p.std, rel=1e-9, abs=1e-9 * scale * 10)


@settings(max_examples=100, deadline=None)
@given(values=st.lists(finite, min_size=1, max_size=10), data=st.data())
def test_plugin_permutation_invariance(values, data):
    shuffled = data.draw(st.permutations(values))
    assert eop_plugin(sample_of(values), 5) == eop_plugin(sample_of(shuffled), 5)


# --- oracles ---

def test_bruteforce_examples():
    assert expected_max_bruteforce(sample_of([1.0, 2.0]), 2)[0] == pytest.approx(1.75)
    assert expected_max_bruteforce(sample_of([5.0]), 3) == (5.0, 0.0)
    assert expected_max_bruteforce(sample_of([0.0, 1.0]), 3)[0] == pytest.approx(7 / 8)


def test_bruteforce_enumeration_cap():
    with pytest.raises(ValueError, match="enumeration too large"):
        expected_max_bruteforce(sample_of(range(10)), 4, cap=9999)


def test_montecarlo_constant_sample():
    assert expected_max_montecarlo(sample_of([2.0] * 5), 3, trials=1000, seed=1) == (2.0, 0.0)


def test_montecarlo_is_deterministic_and_close():
    sample = sample_of([1.0, 2.0])
    first = expected_max_montecarlo(sample, 2, trials=1_000_000, seed=42)
    second = expected_max_montecarlo(sample, 2, trials=1_000_000, seed=42)
    assert first == second
    mean, stderr = first
    assert abs(mean - 1.75) <= 3 * stderr


def test_montecarlo_needs_enough_trials():
    with pytest.raises(ValueError, match="at least 100"):
        expected_max_montecarlo(sample_of([1.0, 2.0]), 2, trials=99, seed=0)


@pytest.mark.slow
def test_plugin_agrees_with_montecarlo_on_larger_samples():
    rng = np.random.default_rng(2024)
    for case in range(20):
        sample = sample_of(rng.uniform(-10.0, 10.0, size=30))
        curve = eop_plugin(sample, 30)
        for b in (2, 5, 15, 30):
            expected = curve.at(b).mean
            mean, stderr = expected_max_montecarlo(sample, b, trials=1_000_000, seed=case)
            if abs(expected - mean) > 3 * stderr:
                # one independent redraw per miss; two misses in a row fail
                mean, stderr = expected_max_montecarlo(sample, b, trials=1_000_000, seed=1000 + case)
            assert abs(expected - mean) <= 3 * stderr


# --- without replacement ---

def test_without_replacement_examples():
    assert eop_without_replacement(sample_of([1.0, 2.0]), 2).at(2).mean == pytest.approx(2.0)
    assert eop_without_replacement(sample_of([1.0, 2.0, 3.0]), 2).at(2).mean == pytest.approx(8 / 3)
    assert eop_without_replacement(sample_of([1.0, 2.0, 6.0]), 1).at(1).mean == pytest.approx(3.0)


def test_without_replacement_stops_at_sample_size():
    curve = eop_without_replacement(sample_of([1.0, 5.0, 2.0]), 10)
    assert curve.budgets == [1, 2, 3]
    assert curve.at(3).mean == 5.0
    assert curve.at(3).std == pytest.approx(0.0, abs=1e-12)


# --- vanilla average ---

def test_vanilla_single_round_running_max():
    curve = eop_vanilla_average([SelectionRound((3.0, 1.0, 2.0))], 3)
    assert curve.means == [3.0, 3.0, 3.0]
    assert curve.stds == [0.0, 0.0, 0.0]


def test_vanilla_two_rounds():
    curve = eop_vanilla_average([(1.0, 2.0), (2.0, 1.0)], 2)
    assert curve.means == pytest.approx([1.5, 2.0])
    assert curve.at(2).std == 0.0


def test_vanilla_truncates_at_shortest_round():
    curve = eop_vanilla_average([(1.0, 2.0, 3.0), (0.5, 4.0)], 3)
    assert curve.budgets == [1, 2]
    assert curve.n == 2


def test_vanilla_identical_rounds_have_zero_std():
    rounds = [SelectionRound((0.1, 0.7, 0.3))] * 4
    assert eop_vanilla_average(rounds, 3).stds == [0.0, 0.0, 0.0]


def test_vanilla_errors():
    with pytest.raises(ValueError, match="no selection rounds"):
        eop_vanilla_average([], 2)
    with pytest.raises(ValueError, match="empty round"):
        SelectionRound(())


def test_vanilla_converges_to_plugin_with_replacement():
    rng = np.random.default_rng(11)
    values = rng.uniform(1.0, 2.0, size=20)
    picks = rng.integers(0, 20, size=(10_000, 5))
    curve = eop_vanilla_average(values[picks].tolist(), 5)
    exact = eop_plugin(sample_of(values), 5)
    for b in range(1, 6):
        assert curve.at(b).mean == pytest.approx(exact.at(b).mean, rel=0.01)


def test_vanilla_converges_to_exact_without_replacement():
    rng = np.random.default_rng(5)
    values = rng.uniform(0.0, 1.0, size=10)
    rounds = [values[rng.permutation(10)].tolist() for _ in range(10_000)]
    curve = eop_vanilla_average(rounds, 10)
    exact = eop_without_replacement(sample_of(values), 10)
    for b in range(1, 11):
        assert abs(curve.at(b).mean - exact.at(b).mean) <= 0.02


def test_curve_lookup_of_missing_budget():
    curve = EopCurve(points=(), n=0)
    with pytest.raises(KeyError):
        curve.at(1)
