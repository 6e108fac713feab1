import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from subopinion.harness.metrics import (
    MetricError,
    MetricsReport,
    aggregate,
    jsd_eval,
    rouge2,
    rouge_su4,
    su_counts,
)


def test_jsd_examples():
    src = ["a", "b", "b", "c"]
    assert jsd_eval(src, src) == 0.0
    assert jsd_eval(["a", "b"], ["c", "d"]) == 1.0
    # P = [.5, .5, 0], Q = [0, .5, .5]
    assert jsd_eval(["x", "y"], ["y", "z"]) == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(MetricError):
        jsd_eval([], src)


def test_rouge2_examples():
    p, r, f = rouge2("the cat sat".split(), ["the cat ran".split()])
    assert (p, r) == (0.5, 0.5) and f == pytest.approx(0.5)
    assert rouge2("a b c".split(), ["a b c".split()]) == (1.0, 1.0, 1.0)
    assert rouge2("a b c".split(), ["x y z".split()]) == (0.0, 0.0, 0.0)


def test_su4_units():
    assert su_counts(["a", "b", "c"]) == {("a", "b"): 1, ("a", "c"): 1, ("b", "c"): 1,
                                         ("a",): 1, ("b",): 1, ("c",): 1}
    # four intervening words is the widest skip
    assert ("a", "f") in su_counts(list("abcdef")) and ("a", "g") not in su_counts(list("abcdefg"))
    five = "one two three four five".split()
    assert rouge_su4(five, [five])[2] == 1.0


def test_su4_fixture_pair_matches_enumerator():
    cand = "the cat sat on the mat today".split()
    refs = ["a cat sat on a mat".split(), "the dog sat on the mat".split()]
    assert rouge_su4(cand, refs) == pytest.approx(oracles.rouge_su4(cand, refs), abs=1e-15)


tokens = st.lists(st.sampled_from(list("abcde")), min_size=1, max_size=15)


@given(tokens, tokens)
def test_jsd_symmetric_bounded(a, b):
    d = jsd_eval(a, b)
    assert 0.0 <= d <= 1.0
    assert d == pytest.approx(jsd_eval(b, a), abs=1e-12)


@given(tokens, st.integers(1, 4))
def test_jsd_zero_for_same_distribution(a, k):
    assert jsd_eval(a, a * k) <= 1e-12


@given(tokens, st.lists(tokens, min_size=1, max_size=3))
def test_rouge_bounds_and_oracle(cand, refs):
    for fn, oracle in ((rouge2, oracles.rouge2), (rouge_su4, oracles.rouge_su4)):
        p, r, f = fn(cand, refs)
        assert all(0.0 <= x <= 1.0 for x in (p, r, f))
        if p == 0 or r == 0:
            assert f == 0
        assert (p, r, f) == pytest.approx(oracle(cand, refs), abs=1e-12)


def test_aggregate_is_macro_average():
    reports = [MetricsReport("a", 0.2, (1.0, 0.5, 0.6)), MetricsReport("b", 0.4, (0.0, 0.5, 0.2)),
               MetricsReport("c", None)]
    agg = aggregate(reports)
    assert agg.jsd == pytest.approx(0.3)
    assert agg.rouge2 == pytest.approx((0.5, 0.5, 0.4))
    assert agg.thread_id == "ALL" and agg.rouge_su4 is None


def test_report_dict():
    assert MetricsReport("t", 0.1).to_dict() == {"thread_id": "t", "jsd": 0.1, "rouge2": None,
                                                 "rouge_su4": None, "ranking": None}
