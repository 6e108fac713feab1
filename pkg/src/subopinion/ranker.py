"""Candidate features, a linear ListNet ranker, ranking baselines and
best-answer prediction metrics."""

from __future__ import annotations

import hashlib
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .corpus import (
    CorpusStats,
    Sentence,
    Thread,
    TermVector,
    build_stats,
    content_tokens,
    sentence_split,
    thread_documents,
    tfidf_vector,
    tokenize,
)
from .lexicon import SentimentLexicon, sentiment_word_count, token_polarities
from .similarity import cosine_tfidf, jsd

FEATURE_NAMES = (
    "position",
    "length",
    "is_short",
    "query_cos_uni_tf",
    "query_cos_uni_tfidf",
    "query_cos_bi_tf",
    "query_cos_bi_tfidf",
    "query_content_overlap",
    "sentiment_count",
    "sentiment_portion",
    "query_polarity_match",
    "centroid_cos_uni",
    "centroid_cos_bi",
    "sumbasic",
    "topic_signatures",
    "thread_jsd",
)
N_FEATURES = len(FEATURE_NAMES)
REGISTRY_HASH = hashlib.sha256("\n".join(FEATURE_NAMES).encode()).hexdigest()[:16]
MODEL_VERSION = "listnet-linear/1"
SHORT_LENGTH = 5
SIGNATURE_THRESHOLD = 10.83  # chi-square, p = 0.001


class RankerError(ValueError):
    pass


@dataclass(frozen=True)
class Candidate:
    """A unit the ranker scores: a whole answer (qa) or a sentence (blog)."""

    id: int
    position: int
    tokens: tuple[str, ...]


def thread_candidates(thread: Thread, sentences: Sequence[Sentence] | None = None) -> list[Candidate]:
    if thread.genre == "qa":
        return [Candidate(i, a.position, tuple(tokenize(a.text))) for i, a in enumerate(thread.candidates)]
    sentences = sentence_split(thread) if sentences is None else sentences
    return [Candidate(s.id, i, s.tokens) for i, s in enumerate(sentences)]


# --------------------------------------------------------------------------
# features


def _xlogy(x: float, y: float) -> float:
    return 0.0 if x == 0 else x * math.log(y)


def _binom_ll(k: float, n: float, p: float) -> float:
    return _xlogy(k, p) + _xlogy(n - k, 1.0 - p)


def log_likelihood_ratio(k1: float, n1: float, k2: float, n2: float) -> float:
    """-2 log lambda for a term seen k1/n1 times in the target and k2/n2 in
    the background."""
    p1, p2 = k1 / n1, k2 / n2
    p = (k1 + k2) / (n1 + n2)
    return 2.0 * (_binom_ll(k1, n1, p1) + _binom_ll(k2, n2, p2) - _binom_ll(k1, n1, p) - _binom_ll(k2, n2, p))


def topic_signatures(
    counts: Mapping[str, int], n_tokens: int, background: CorpusStats, threshold: float = SIGNATURE_THRESHOLD
) -> frozenset[str]:
    """Terms of ``counts`` whose rate in a target of ``n_tokens`` tokens is
    elevated over the background by a log-likelihood ratio above
    ``threshold``."""
    n2 = background.n_tokens
    if n_tokens == 0 or n2 == 0:
        return frozenset()
    out = set()
    for term, k1 in counts.items():
        k2 = min(round(background.count(term)), n2)
        if k1 / n_tokens > k2 / n2 and log_likelihood_ratio(k1, n_tokens, k2, n2) > threshold:
            out.add(term)
    return frozenset(out)


def unigram_distribution_jsd(a: Sequence[str], b_counts: Mapping[str, float]) -> float:
    ca = Counter(a)
    na, nb = sum(ca.values()), sum(b_counts.values())
    if na == 0 or nb == 0:
        return 1.0
    vocab = sorted(set(ca) | set(b_counts))
    p = [ca.get(t, 0) / na for t in vocab]
    q = [b_counts.get(t, 0) / nb for t in vocab]
    return jsd(p, q)


@dataclass(frozen=True)
class FeatureContext:
    query_tokens: tuple[str, ...]
    query_content: frozenset[str]
    query_polarities: frozenset[str]
    stats: CorpusStats
    lexicon: SentimentLexicon
    query_vectors: Mapping[tuple[str, str], TermVector]
    centroid_uni: TermVector
    centroid_bi: TermVector
    thread_counts: Mapping[str, int]
    content_prob: Mapping[str, float]
    signatures: frozenset[str]


def _centroid(vectors: Sequence[TermVector]) -> TermVector:
    acc: Counter[str] = Counter()
    for v in vectors:
        acc.update(v.weights)
    n = max(len(vectors), 1)
    return TermVector({t: w / n for t, w in acc.items()})


def build_feature_context(
    thread: Thread,
    candidates: Sequence[Candidate],
    lex: SentimentLexicon,
    background: CorpusStats | None = None,
    stats: CorpusStats | None = None,
) -> FeatureContext:
    """Precompute the per-thread material shared by every candidate."""
    stats = stats or build_stats(thread_documents(thread))
    q_tokens = tuple(tokenize(thread.query))
    qvecs = {
        (ng, sc): tfidf_vector(q_tokens, stats, ng, sc) for ng in ("uni", "bi") for sc in ("tf", "tfidf")
    }
    cands_content = [content_tokens(c.tokens) for c in candidates]
    centroid_uni = _centroid([tfidf_vector(t, stats, "uni") for t in cands_content])
    centroid_bi = _centroid([tfidf_vector(t, stats, "bi") for t in cands_content])
    all_tokens = [t for c in candidates for t in c.tokens]
    counts = Counter(all_tokens)
    content_counts = Counter(t for toks in cands_content for t in toks)
    n_content = sum(content_counts.values())
    content_prob = {t: c / n_content for t, c in content_counts.items()} if n_content else {}
    background = background or build_stats([list(c.tokens) for c in candidates])
    # rates on both sides are taken over all tokens; only content words can qualify
    signatures = topic_signatures({t: counts[t] for t in content_counts}, len(all_tokens), background)
    return FeatureContext(
        query_tokens=q_tokens,
        query_content=frozenset(content_tokens(q_tokens)),
        query_polarities=frozenset(token_polarities(q_tokens, lex)),
        stats=stats,
        lexicon=lex,
        query_vectors=qvecs,
        centroid_uni=centroid_uni,
        centroid_bi=centroid_bi,
        thread_counts=dict(counts),
        content_prob=content_prob,
        signatures=signatures,
    )


def extract_features(candidate: Candidate, ctx: FeatureContext) -> np.ndarray:
    """The 16 ranking features, in ``FEATURE_NAMES`` order."""
    toks = candidate.tokens
    n = len(toks)
    content = content_tokens(toks)
    stats = ctx.stats

    def qcos(ng, sc):
        return cosine_tfidf(tfidf_vector(toks, stats, ng, sc), ctx.query_vectors[(ng, sc)])

    n_sent = sentiment_word_count(toks, ctx.lexicon)
    pols = set(token_polarities(toks, ctx.lexicon))
    sumbasic = float(np.mean([ctx.content_prob.get(t, 0.0) for t in content])) if content else 0.0
    return np.array(
        [
            candidate.position,
            n,
            1.0 if n < SHORT_LENGTH else 0.0,
            qcos("uni", "tf"),
            qcos("uni", "tfidf"),
            qcos("bi", "tf"),
            qcos("bi", "tfidf"),
            len(ctx.query_content & set(content)),
            n_sent,
            n_sent / n if n else 0.0,
            1.0 if pols & ctx.query_polarities else 0.0,
            cosine_tfidf(tfidf_vector(content, stats, "uni"), ctx.centroid_uni),
            cosine_tfidf(tfidf_vector(content, stats, "bi"), ctx.centroid_bi),
            sumbasic,
            len(ctx.signatures & set(content)),
            unigram_distribution_jsd(toks, ctx.thread_counts),
        ],
        dtype=float,
    )


def feature_matrix(candidates: Sequence[Candidate], ctx: FeatureContext) -> np.ndarray:
    return np.vstack([extract_features(c, ctx) for c in candidates])


def standardize(X: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Column z-scores. Zero-variance columns get std 1."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] < 2:
        raise RankerError("standardization needs at least two vectors")
    means = X.mean(axis=0)
    stds = X.std(axis=0)
    stds = np.where(stds > 1e-12 * np.maximum(1.0, np.abs(means)), stds, 1.0)
    return (X - means) / stds, means, stds


# --------------------------------------------------------------------------
# ListNet


@dataclass(frozen=True)
class RankModel:
    weights: np.ndarray
    feature_means: np.ndarray
    feature_stds: np.ndarray
    version: str = MODEL_VERSION
    loss_history: tuple[float, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if np.any(self.feature_stds <= 0):
            raise RankerError("feature stds must be strictly positive")

    def score(self, X: np.ndarray) -> np.ndarray:
        Z = (np.atleast_2d(X) - self.feature_means) / self.feature_stds
        return Z @ self.weights


def _softmax(x: np.ndarray) -> np.ndarray:
    e = np.exp(x - x.max())
    return e / e.sum()


def listnet_loss(scores: np.ndarray, labels: np.ndarray) -> float:
    """Cross entropy between top-one probabilities of labels and scores."""
    s = scores - scores.max()
    log_p = s - math.log(np.exp(s).sum())
    return float(-np.dot(_softmax(np.asarray(labels, dtype=float)), log_p))


def listnet_train(
    lists: Sequence[tuple[np.ndarray, Sequence[float]]],
    epochs: int = 1500,
    lr: float = 1e-5,
    seed: int = 0,
) -> RankModel:
    """Full-batch gradient descent on the ListNet top-one loss.

    Weights start at zero, so the run is deterministic; ``seed`` is carried
    for interface stability only. ``loss_history`` holds the summed loss
    before training and after each epoch.
    """
    if not lists:
        raise RankerError("empty training set")
    mats, labs = [], []
    for X, y in lists:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        y = np.asarray(y, dtype=float)
        if X.shape[0] < 2 or X.shape[0] != len(y):
            raise RankerError("each list needs >= 2 candidates and one label per candidate")
        if not np.any(y > 0):
            raise RankerError("each list needs at least one positive label")
        mats.append(X)
        labs.append(y)
    _, means, stds = standardize(np.vstack(mats))
    Zs = [(X - means) / stds for X in mats]
    targets = [_softmax(y) for y in labs]
    w = np.zeros(mats[0].shape[1])

    def total_loss(w):
        return sum(listnet_loss(Z @ w, y) for Z, y in zip(Zs, labs))

    history = [total_loss(w)]
    for _ in range(epochs):
        grad = np.zeros_like(w)
        for Z, t in zip(Zs, targets):
            grad += Z.T @ (_softmax(Z @ w) - t)
        w = w - lr * grad
        history.append(total_loss(w))
    return RankModel(w, means, stds, MODEL_VERSION, tuple(history))


def save_rank_model(model: RankModel, path: str | Path) -> None:
    lines = [f"version\t{model.version}", f"registry\t{REGISTRY_HASH}"]
    for name, w, m, s in zip(FEATURE_NAMES, model.weights, model.feature_means, model.feature_stds):
        lines.append(f"feature\t{name}\t{float(w)!r}\t{float(m)!r}\t{float(s)!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_rank_model(path: str | Path) -> RankModel:
    version = registry = None
    rows = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        parts = line.split("\t")
        if parts[0] == "version":
            version = parts[1]
        elif parts[0] == "registry":
            registry = parts[1]
        elif parts[0] == "feature":
            rows.append(parts[1:])
    if version != MODEL_VERSION:
        raise RankerError(f"{path}: unsupported model version {version!r}")
    if registry != REGISTRY_HASH or tuple(r[0] for r in rows) != FEATURE_NAMES:
        raise RankerError(f"{path}: feature registry mismatch")
    arr = np.array([[float(x) for x in r[1:]] for r in rows])
    return RankModel(arr[:, 0], arr[:, 1], arr[:, 2], version)


# --------------------------------------------------------------------------
# ranking


@dataclass(frozen=True)
class RankedItem:
    candidate_id: int
    score: float
    rank: int


@dataclass(frozen=True)
class RankedList:
    items: tuple[RankedItem, ...]

    def rank_of(self, candidate_id: int) -> int:
        for it in self.items:
            if it.candidate_id == candidate_id:
                return it.rank
        raise KeyError(candidate_id)

    @property
    def order(self) -> list[int]:
        return [it.candidate_id for it in self.items]


def ranked_from_scores(ids: Sequence[int], scores: Sequence[float]) -> RankedList:
    """Descending score; equal scores keep input order."""
    order = sorted(range(len(ids)), key=lambda i: (-scores[i], i))
    return RankedList(tuple(RankedItem(ids[i], float(scores[i]), r) for r, i in enumerate(order, start=1)))


def rank(model: RankModel, candidates: Sequence[Candidate], ctx: FeatureContext) -> RankedList:
    if not candidates:
        return RankedList(())
    scores = model.score(feature_matrix(candidates, ctx))
    return ranked_from_scores([c.id for c in candidates], list(scores))


def sentence_ranks(
    thread: Thread, sentences: Sequence[Sentence], ranked: RankedList
) -> dict[int, int]:
    """Map sentence id to rank. In qa threads a sentence takes the rank of
    its answer; in blogs the candidates are the sentences themselves."""
    if thread.genre == "qa":
        by_answer = {it.candidate_id: it.rank for it in ranked.items}
        return {s.id: by_answer[s.answer_index] for s in sentences}
    return {it.candidate_id: it.rank for it in ranked.items}


def baseline_rank(candidates: Sequence[Candidate], kind: str, seed: int = 0) -> RankedList:
    """random (seeded shuffle), length (longest first) or jsd (closest to
    the pooled distribution first)."""
    ids = [c.id for c in candidates]
    if kind == "random":
        perm = np.random.default_rng(seed).permutation(len(ids))
        scores = np.empty(len(ids))
        scores[perm] = -np.arange(len(ids), dtype=float)
        return ranked_from_scores(ids, list(scores))
    if kind == "length":
        return ranked_from_scores(ids, [float(len(c.tokens)) for c in candidates])
    if kind == "jsd":
        pooled = Counter(t for c in candidates for t in c.tokens)
        return ranked_from_scores(ids, [-unigram_distribution_jsd(c.tokens, pooled) for c in candidates])
    raise RankerError(f"unknown baseline {kind!r}")


def ranking_metrics(results: Sequence[tuple[RankedList, int | None]]) -> tuple[float, float]:
    """(precision at 1, mean reciprocal rank) of the labelled best answer."""
    if not results:
        raise RankerError("no ranked lists")
    hits, rr = 0.0, 0.0
    for ranked, best in results:
        if best is None:
            raise RankerError("ranked list lacks a best-answer label")
        r = ranked.rank_of(best)
        hits += r == 1
        rr += 1.0 / r
    return hits / len(results), rr / len(results)


# --------------------------------------------------------------------------
# corpus-level helpers


def background_stats(threads: Sequence[Thread]) -> CorpusStats:
    return build_stats(doc for t in threads for doc in thread_documents(t))


def training_lists(
    threads: Sequence[Thread], lex: SentimentLexicon, background: CorpusStats | None = None
) -> list[tuple[np.ndarray, np.ndarray]]:
    """Feature matrices and best-answer labels for every labelled qa thread."""
    background = background or background_stats(threads)
    out = []
    for t in threads:
        if t.genre != "qa" or t.best_index is None or len(t.candidates) < 2:
            continue
        cands = thread_candidates(t)
        ctx = build_feature_context(t, cands, lex, background)
        y = np.array([1.0 if a.is_best else 0.0 for a in t.candidates])
        out.append((feature_matrix(cands, ctx), y))
    return out
