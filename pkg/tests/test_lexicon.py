import pytest
from hypothesis import given, strategies as st

from subopinion.corpus import tokenize
from subopinion.harness.config import data_path
from subopinion.lexicon import (
    NEGATIVE,
    NEUTRAL,
    POSITIVE,
    LexiconError,
    PolarityLabel,
    SentimentLexicon,
    binarize_sentiwordnet,
    load_lexicon_dir,
    merge_lexicons,
    sentence_polarity,
    sentiment_word_count,
)

NEGATORS = {"not", "never", "no", "isn"}
LEX = merge_lexicons([{"good": "pos", "great": "pos", "bad": "neg", "awful": "neg"}], NEGATORS)


def test_merge_agreement_kept():
    lex = merge_lexicons([{"good": "pos"}, {"good": "pos"}])
    assert lex.polarity == {"good": POSITIVE}


def test_merge_conflict_removed():
    lex = merge_lexicons([{"fine": "pos", "good": "pos"}, {"fine": "neg"}])
    assert "fine" not in lex and "good" in lex


def test_merge_with_empty_table_is_identity():
    lex = merge_lexicons([{"good": "pos", "bad": "neg"}, {}])
    assert lex.polarity == {"good": POSITIVE, "bad": NEGATIVE}


def test_empty_union_is_an_error():
    with pytest.raises(LexiconError):
        merge_lexicons([{}, {}])
    with pytest.raises(LexiconError):
        merge_lexicons([{"x": "pos"}, {"x": "neg"}])


@pytest.mark.parametrize(
    "text,value,pos,neg",
    [
        ("this is good", POSITIVE, 1, 0),
        ("this is not good", NEGATIVE, 0, 1),
        ("never bad, always good", POSITIVE, 2, 0),
        ("this isn't bad at all", POSITIVE, 1, 0),
        ("nothing to see", NEUTRAL, 0, 0),
        ("good and bad", NEUTRAL, 1, 1),
    ],
)
def test_sentence_polarity(text, value, pos, neg):
    assert sentence_polarity(tokenize(text), LEX) == PolarityLabel(value, pos, neg)


def test_negator_outside_window_does_not_flip():
    toks = "not a b c d e good".split()
    assert sentence_polarity(toks, LEX, window=5).value == POSITIVE
    assert sentence_polarity(toks, LEX, window=6).value == NEGATIVE


def test_double_negation_flips_once():
    assert sentence_polarity("not never good".split(), LEX).value == NEGATIVE


def test_negators_are_not_sentiment_words():
    lex = merge_lexicons([{"no": "neg", "good": "pos"}], {"no"})
    assert sentiment_word_count(["no", "good"], lex) == 1


def test_bundled_lexicon_drops_the_conflict():
    lex = load_lexicon_dir(data_path("lexicon"))
    assert "cheap" not in lex
    assert lex.polarity["good"] == POSITIVE and lex.polarity["awful"] == NEGATIVE
    assert "not" in lex.negators and "don" in lex.negators


def test_binarize_sentiwordnet():
    rows = [
        "# comment",
        "a\t001\t0.5\t0\tgood#1 nice#2",
        "a\t002\t0\t0.25\tgood#3",
        "a\t003\t0\t0.5\tbad#1 not_good#1",
        "n\t004\t0.1\t0.1\tflat#1",
    ]
    assert binarize_sentiwordnet(rows) == [("bad", "neg"), ("good", "pos"), ("nice", "pos")]


TERMS = ["good", "great", "bad", "awful", "not", "never", "the", "film", "plot"]
sentences = st.lists(st.sampled_from(TERMS), max_size=15)


@given(sentences, st.lists(st.booleans(), min_size=15, max_size=15))
def test_case_invariance(toks, upper):
    mixed = [t.upper() if u else t for t, u in zip(toks, upper)]
    assert sentence_polarity(mixed, LEX) == sentence_polarity(toks, LEX)


@given(sentences)
def test_flipping_lexicon_flips_labels(toks):
    a, b = sentence_polarity(toks, LEX), sentence_polarity(toks, LEX.flipped())
    swap = {POSITIVE: NEGATIVE, NEGATIVE: POSITIVE, NEUTRAL: NEUTRAL}
    assert b.value == swap[a.value]


@given(st.lists(st.sampled_from(["the", "film", "plot", "not"]), max_size=10))
def test_no_hits_is_neutral(toks):
    assert sentence_polarity(toks, LEX).value == NEUTRAL


@given(st.integers(0, 20), st.integers(0, 20))
def test_label_follows_counts(pos, neg):
    lab = PolarityLabel.from_counts(pos, neg)
    assert lab.value == (POSITIVE if pos > neg else NEGATIVE if neg > pos else NEUTRAL)


def test_flipped_lexicon_keeps_negators():
    assert isinstance(LEX.flipped(), SentimentLexicon)
    assert LEX.flipped().negators == LEX.negators
