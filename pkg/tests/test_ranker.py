import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from subopinion.corpus import Answer, Thread, build_stats, sentence_split
from subopinion.lexicon import merge_lexicons
from subopinion.ranker import (
    FEATURE_NAMES,
    N_FEATURES,
    Candidate,
    RankerError,
    baseline_rank,
    build_feature_context,
    extract_features,
    feature_matrix,
    listnet_loss,
    listnet_train,
    load_rank_model,
    log_likelihood_ratio,
    rank,
    ranked_from_scores,
    ranking_metrics,
    save_rank_model,
    sentence_ranks,
    standardize,
    thread_candidates,
    training_lists,
)

LEX = merge_lexicons([{"good": "pos", "great": "pos", "bad": "neg", "poor": "neg"}], {"not", "never"})
FIXTURE = Thread("f", "Is the battery good on this phone?", (
    Answer("a", 0, "The battery is great and the battery lasts two days. Battery life is not poor at all."),
    Answer("b", 1, "Bad phone."),
    Answer("c", 2, "My phone battery is good, the screen is bad, the camera is good."),
))
BACKGROUND = build_stats([["phone", "market", "screen", "camera", "price", "price", "store", "sale", "the", "is"]] * 20)

# computed by the from-definition enumerator in oracles.ranking_features
FIXTURE_FEATURES = [
    [0.0, 17.0, 0.0, 0.5091750772173156, 0.10773605485611736, 0.1924500897298753, 0.10531898611753795, 1.0, 2.0,
     0.11764705882352941, 1.0, 0.7097899876749038, 0.6807456457050175, 0.125, 1.0, 0.17679758583230124],
    [1.0, 2.0, 1.0, 0.26726124191242434, 0.09428276549185355, 0.0, 0.0, 1.0, 1.0, 0.5, 0.0, 0.3017542231269075,
     0.15617376188860607, 0.11764705882352941, 0.0, 0.7169171866886992],
    [2.0, 13.0, 0.0, 0.7092993656151906, 0.3297291595584529, 0.0, 0.0, 3.0, 3.0, 0.23076923076923078, 1.0,
     0.7429274730513581, 0.7156780854205468, 0.11764705882352942, 1.0, 0.20367387883608074],
]


def test_registry_is_fixed():
    assert N_FEATURES == 16
    assert FEATURE_NAMES[0] == "position" and FEATURE_NAMES[2] == "is_short"


def test_fixture_feature_vectors():
    cands = thread_candidates(FIXTURE)
    X = feature_matrix(cands, build_feature_context(FIXTURE, cands, LEX, BACKGROUND))
    np.testing.assert_allclose(X, FIXTURE_FEATURES, rtol=0, atol=1e-12)
    assert np.all(np.isfinite(X))


def test_candidate_identical_to_query():
    t = Thread("q", "battery life of the phone", (Answer("a", 0, "battery life of the phone"), Answer("b", 1, "x y")))
    cands = thread_candidates(t)
    f = extract_features(cands[0], build_feature_context(t, cands, LEX))
    assert list(f[3:7]) == pytest.approx([1.0] * 4, abs=1e-12)


def test_short_candidate_flag():
    t = Thread("q", "q", (Answer("a", 0, "one two three four"), Answer("b", 1, "one two three four five")))
    cands = thread_candidates(t)
    X = feature_matrix(cands, build_feature_context(t, cands, LEX))
    assert X[:, 2].tolist() == [1.0, 0.0]


def test_llr_matches_contingency_form():
    for k1, n1, k2, n2 in [(5, 32, 0, 600), (3, 40, 10, 900), (1, 10, 1, 10)]:
        assert log_likelihood_ratio(k1, n1, k2, n2) == pytest.approx(oracles._g_squared(k1, n1, k2, n2), abs=1e-9)


def test_standardize_examples():
    Z, means, stds = standardize(np.array([[0.0, 3.0], [2.0, 3.0]]))
    assert Z[:, 0].tolist() == [-1.0, 1.0]
    assert Z[:, 1].tolist() == [0.0, 0.0] and stds[1] == 1.0


@settings(max_examples=50)
@given(st.integers(2, 12), st.integers(1, 6), st.floats(0.1, 100.0), st.integers(0, 10_000))
def test_standardize_properties(m, d, scale, seed):
    X = np.random.default_rng(seed).normal(size=(m, d))
    Z, _, stds = standardize(X)
    assert np.all(stds > 0)
    np.testing.assert_allclose(Z.mean(axis=0), 0.0, atol=1e-9)
    np.testing.assert_allclose(standardize(X * scale)[0], Z, atol=1e-9)


def _lists(seed=0, n=30):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        m = int(rng.integers(3, 9))
        X = rng.normal(size=(m, N_FEATURES))
        y = np.zeros(m)
        b = int(rng.integers(m))
        X[b, 0] += 3.0
        y[b] = 1.0
        out.append((X, y))
    return out


def test_zero_epochs_keep_input_order():
    model = listnet_train(_lists(), epochs=0)
    assert np.all(model.weights == 0)
    X, _ = _lists()[0]
    assert ranked_from_scores(list(range(len(X))), list(model.score(X))).order == list(range(len(X)))


def test_training_is_deterministic():
    a, b = listnet_train(_lists(), epochs=50), listnet_train(_lists(), epochs=50)
    assert np.array_equal(a.weights, b.weights)


def test_constant_feature_gets_zero_weight():
    lists = _lists()
    for X, _ in lists:
        X[:, 5] = 7.0
    model = listnet_train(lists, epochs=20)
    assert model.feature_stds[5] == 1.0 and model.weights[5] == 0.0


def test_training_errors():
    with pytest.raises(RankerError):
        listnet_train([])
    with pytest.raises(RankerError):
        listnet_train([(np.zeros((3, N_FEATURES)), np.zeros(3))])


@given(st.lists(st.floats(-5, 5), min_size=2, max_size=8), st.floats(-100, 100))
def test_loss_shift_invariant(scores, c):
    s = np.array(scores)
    y = np.zeros(len(s))
    y[0] = 1.0
    assert listnet_loss(s + c, y) == pytest.approx(listnet_loss(s, y), abs=1e-9)


def test_model_file_round_trip(tmp_path):
    model = listnet_train(_lists(), epochs=5)
    save_rank_model(model, tmp_path / "m.txt")
    loaded = load_rank_model(tmp_path / "m.txt")
    assert np.array_equal(loaded.weights, model.weights)
    assert np.array_equal(loaded.feature_stds, model.feature_stds)


def test_model_file_with_other_registry_rejected(tmp_path):
    p = tmp_path / "m.txt"
    save_rank_model(listnet_train(_lists(), epochs=1), p)
    p.write_text(p.read_text().replace("sumbasic", "renamed"))
    with pytest.raises(RankerError):
        load_rank_model(p)


def test_sentences_inherit_answer_rank():
    t = Thread("t", "q", (Answer("a", 0, "One. Two."), Answer("b", 1, "Three. Four. Five.")))
    ranked = ranked_from_scores([0, 1], [0.1, 0.9])
    r = sentence_ranks(t, sentence_split(t), ranked)
    assert r == {0: 2, 1: 2, 2: 1, 3: 1, 4: 1}


def test_equal_scores_follow_posting_order():
    assert ranked_from_scores([4, 2, 9], [0.5, 0.5, 0.5]).order == [4, 2, 9]


@given(st.lists(st.sampled_from([0.0, 0.5, 1.0, 2.0]), min_size=1, max_size=10))
def test_rank_is_permutation_with_tie_break(scores):
    ranked = ranked_from_scores(list(range(len(scores))), scores)
    assert sorted(it.rank for it in ranked.items) == list(range(1, len(scores) + 1))
    order = ranked.order
    for a, b in zip(order, order[1:]):
        assert scores[a] > scores[b] or (scores[a] == scores[b] and a < b)


def _cands(lengths):
    return [Candidate(i, i, tuple(f"w{j % 3}" for j in range(n))) for i, n in enumerate(lengths)]


def test_length_baseline():
    assert baseline_rank(_cands([30, 20, 10]), "length").order == [0, 1, 2]


def test_jsd_baseline_prefers_pooled_distribution():
    cands = [Candidate(0, 0, ("a", "a")), Candidate(1, 1, ("a", "b")), Candidate(2, 2, ("b", "b"))]
    assert baseline_rank(cands, "jsd").order[0] == 1


def test_random_baseline_reproducible():
    c = _cands([3] * 8)
    assert baseline_rank(c, "random", seed=3).order == baseline_rank(c, "random", seed=3).order


def test_metrics_examples():
    perfect = [(ranked_from_scores([0, 1, 2], [3, 2, 1]), 0)] * 4
    assert ranking_metrics(perfect) == (1.0, 1.0)
    second = [(ranked_from_scores([0, 1, 2], [3, 2, 1]), 1)] * 4
    assert ranking_metrics(second) == (0.0, 0.5)
    with pytest.raises(RankerError):
        ranking_metrics([(ranked_from_scores([0, 1], [1, 0]), None)])


@given(st.lists(st.tuples(st.integers(2, 9), st.integers(0, 100)), min_size=1, max_size=10))
def test_mrr_bounds(spec):
    results = []
    for m, seed in spec:
        ranked = baseline_rank(_cands([2] * m), "random", seed=seed)
        results.append((ranked, seed % m))
    p1, mrr = ranking_metrics(results)
    assert 0 <= p1 <= mrr <= 1


def test_trained_model_ranks_fixture_thread():
    threads = [FIXTURE, Thread("g", "good phone?", (Answer("a", 0, "Bad."), Answer("b", 1, "good phone, great", True)))]
    model = listnet_train(training_lists(threads, LEX), epochs=10, lr=1e-2)
    cands = thread_candidates(FIXTURE)
    ranked = rank(model, cands, build_feature_context(FIXTURE, cands, LEX))
    assert sorted(ranked.order) == [0, 1, 2]
