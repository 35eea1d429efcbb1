import logging

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eop_report.app.core.metrics import (
    RankedList,
    ValueMap,
    inverse_normalized_regret_at_k,
    normalize_best_behavioral,
    normalize_min_max,
    normalize_values,
    spearman_rho,
)
from eop_report.app.data.csv_files import parse_ranking


# --- normalization ---

def test_best_behavioral_examples():
    assert normalize_best_behavioral(100.0, 100.0) == 0.0
    assert normalize_best_behavioral(200.0, 100.0) == 1.0
    assert normalize_best_behavioral(-234101.0, -234101.0, offset=400000.0) == 0.0


def test_best_behavioral_needs_positive_reference():
    with pytest.raises(ValueError, match="non-positive reference value; supply offset"):
        normalize_best_behavioral(1.0, -5.0)


def test_min_max():
    assert normalize_min_max(15.0, 10.0, 20.0) == 0.5
    with pytest.raises(ValueError, match="degenerate value range"):
        normalize_min_max(1.0, 2.0, 2.0)


@settings(max_examples=100, deadline=None)
@given(
    values=st.dictionaries(
        st.text(alphabet="abcdefgh", min_size=1, max_size=3),
        st.floats(min_value=-1e3, max_value=1e3, allow_nan=False),
        min_size=2,
        max_size=10,
    ),
    offset=st.floats(min_value=0.0, max_value=1e3),
)
def test_normalization_keeps_the_best_policy(values, offset):
    value_map = ValueMap(values)
    v_best = value_map.best + 1.0
    normalized = normalize_values(value_map, "best-behavioral", v_best=v_best, offset=offset + 2e3)
    best_id = value_map.true_ranking().top(1)[0]
    assert normalized[best_id] == normalized.best


def test_normalize_values_metrics():
    values = ValueMap({"a": 10.0, "b": 30.0})
    assert normalize_values(values, "raw") is values
    assert normalize_values(values, "min-max").values == {"a": 0.0, "b": 1.0}
    assert normalize_values(values, "best-behavioral", v_best=20.0).values == {"a": -0.5, "b": 0.5}
    with pytest.raises(ValueError, match="needs v_best"):
        normalize_values(values, "best-behavioral")
    with pytest.raises(ValueError, match="unknown metric"):
        normalize_values(values, "zscore")


# --- containers ---

def test_ranked_list_validation():
    with pytest.raises(ValueError, match="empty ranking"):
        RankedList.of([])
    with pytest.raises(ValueError, match="duplicate"):
        RankedList.of(["a", "a"])
    with pytest.raises(ValueError, match="tie-free formula only"):
        RankedList.from_ranks({"a": 1, "b": 1})
    assert RankedList.from_ranks({"a": 2, "b": 1}).policy_ids == ("b", "a")


def test_value_map_lookup_and_ranking():
    values = ValueMap({"p2": 5.0, "p1": 5.0, "p3": 9.0})
    assert values.ids == ["p1", "p2", "p3"]
    assert values.true_ranking().policy_ids == ("p3", "p1", "p2")
    with pytest.raises(ValueError, match="missing"):
        values["nope"]


# --- regret@k ---

def test_regret_examples():
    values = ValueMap({"a": 10.0, "b": 20.0, "c": 30.0, "d": 40.0})
    ranking = RankedList.of(["b", "d", "a", "c"])
    assert inverse_normalized_regret_at_k(ranking, values, 1) == pytest.approx(1 / 3)
    assert inverse_normalized_regret_at_k(ranking, values, 2) == 1.0
    assert inverse_normalized_regret_at_k(RankedList.of("dcba"), values, 1) == 1.0
    assert inverse_normalized_regret_at_k(RankedList.of("abcd"), values, 1) == 0.0


def test_regret_k_out_of_range():
    values = ValueMap({"a": 1.0, "b": 2.0})
    with pytest.raises(ValueError, match="k must be"):
        inverse_normalized_regret_at_k(RankedList.of("ab"), values, 3)


def test_regret_all_equal_is_one_and_warns(caplog):
    values = ValueMap({"a": 3.0, "b": 3.0})
    with caplog.at_level(logging.WARNING):
        assert inverse_normalized_regret_at_k(RankedList.of("ab"), values, 1) == 1.0
    assert "all policy values equal" in caplog.text


@st.composite
def ranked_values(draw):
    n = draw(st.integers(min_value=2, max_value=12))
    ids = [f"p{i:02d}" for i in range(n)]
    vals = draw(st.lists(st.floats(min_value=-50, max_value=50, allow_nan=False), min_size=n, max_size=n))
    order = draw(st.permutations(ids))
    return ValueMap(dict(zip(ids, vals))), RankedList.of(order)


@settings(max_examples=150, deadline=None)
@given(case=ranked_values())
def test_regret_is_bounded_monotone_and_ends_at_one(case):
    values, ranking = case
    curve = [inverse_normalized_regret_at_k(ranking, values, k) for k in range(1, len(ranking) + 1)]
    assert all(0.0 <= r <= 1.0 for r in curve)
    assert all(b >= a for a, b in zip(curve, curve[1:]))
    assert curve[-1] == 1.0


@settings(max_examples=100, deadline=None)
@given(case=ranked_values(), data=st.data())
def test_regret_ignores_order_inside_prefix(case, data):
    values, ranking = case
    k = data.draw(st.integers(min_value=1, max_value=len(ranking)))
    prefix = data.draw(st.permutations(ranking.top(k)))
    reordered = RankedList.of(list(prefix) + list(ranking.policy_ids[k:]))
    assert inverse_normalized_regret_at_k(reordered, values, k) == inverse_normalized_regret_at_k(ranking, values, k)


# --- spearman ---

def test_spearman_identical_rankings():
    ranking = RankedList.of([f"p{i}" for i in range(10)])
    assert spearman_rho(ranking, ranking) == pytest.approx(1.0, abs=1e-12)


def test_spearman_shipped_rankings(rankings_dir):
    true = parse_ranking(rankings_dir / "true.csv")
    assert f"{spearman_rho(true, parse_ranking(rankings_dir / 'ranking1.csv')):.2f}" == "0.76"
    assert f"{spearman_rho(true, parse_ranking(rankings_dir / 'ranking2.csv')):.2f}" == "-0.02"


def test_spearman_mismatched_ids():
    with pytest.raises(ValueError, match="mismatched id sets"):
        spearman_rho(RankedList.of("ab"), RankedList.of("ac"))


@settings(max_examples=100, deadline=None)
@given(order=st.permutations([f"p{i}" for i in range(8)]))
def test_spearman_reversal_negates(order):
    reference = RankedList.of([f"p{i}" for i in range(8)])
    forward = spearman_rho(reference, RankedList.of(order))
    backward = spearman_rho(reference, RankedList.of(list(reversed(order))))
    assert backward == pytest.approx(-forward, abs=1e-12)
    assert abs(forward) <= 1.0 + 1e-12


@settings(max_examples=100, deadline=None)
@given(order=st.permutations([f"p{i}" for i in range(9)]))
def test_spearman_matches_squared_rank_differences(order):
    reference = RankedList.of([f"p{i}" for i in range(9)])
    other = RankedList.of(order)
    ranks = other.rank_of()
    d2 = sum((i + 1 - ranks[f"p{i}"]) ** 2 for i in range(9))
    assert spearman_rho(reference, other) == pytest.approx(1.0 - 6.0 * d2 / (9 * 80), abs=1e-12)
