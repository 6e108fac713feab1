"""LDA by collapsed Gibbs sampling, fold-in inference and topic clustering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .corpus import STOPWORDS

FORMAT = "subopinion-lda"
FORMAT_VERSION = 1
GLOBAL_KEY = "__global__"


class TopicModelError(ValueError):
    pass


@dataclass(frozen=True)
class TopicModel:
    n_topics: int
    topic_word: np.ndarray  # K x V, rows sum to 1
    vocabulary: tuple[str, ...]
    alpha: float
    beta: float
    seed: int
    iters: int = 0
    word_index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n_topics < 2:
            raise TopicModelError("need at least 2 topics")
        if self.topic_word.shape != (self.n_topics, len(self.vocabulary)):
            raise TopicModelError("topic_word shape does not match vocabulary")
        object.__setattr__(self, "word_index", {w: i for i, w in enumerate(self.vocabulary)})

    def top_words(self, k: int, n: int = 10) -> list[str]:
        order = np.argsort(-self.topic_word[k], kind="stable")[:n]
        return [self.vocabulary[i] for i in order]

    def to_dict(self) -> dict:
        return {
            "n_topics": self.n_topics,
            "alpha": self.alpha,
            "beta": self.beta,
            "seed": self.seed,
            "iters": self.iters,
            "vocabulary": list(self.vocabulary),
            "topic_word": self.topic_word.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TopicModel":
        return cls(
            n_topics=int(d["n_topics"]),
            topic_word=np.asarray(d["topic_word"], dtype=float),
            vocabulary=tuple(d["vocabulary"]),
            alpha=float(d["alpha"]),
            beta=float(d["beta"]),
            seed=int(d["seed"]),
            iters=int(d.get("iters", 0)),
        )


def _sample(weights: np.ndarray, u: float) -> int:
    cdf = np.cumsum(weights)
    return min(int(np.searchsorted(cdf, u * cdf[-1], side="right")), len(weights) - 1)


def train_lda(
    docs: Sequence[Sequence[str]],
    n_topics: int,
    iters: int = 1000,
    alpha: float | None = None,
    beta: float = 0.01,
    seed: int = 0,
    stopwords: frozenset[str] = STOPWORDS,
    return_state: bool = False,
):
    """Fit LDA with collapsed Gibbs sampling.

    ``alpha`` defaults to 50/K. Stopwords are removed before training.
    The topic-word estimate uses the counts after the final sweep.
    With ``return_state`` the per-document topic counts and a list of the
    total assignment count after every sweep are returned as well.
    """
    if n_topics < 2:
        raise TopicModelError("need at least 2 topics")
    if iters < 1:
        raise TopicModelError("need at least one sweep")
    if not docs:
        raise TopicModelError("no documents")
    alpha = 50.0 / n_topics if alpha is None else alpha
    docs = [[t for t in d if t not in stopwords] for d in docs]
    vocab = sorted({t for d in docs for t in d})
    if not vocab:
        raise TopicModelError("vocabulary is empty after stopword removal")
    index = {w: i for i, w in enumerate(vocab)}
    V, K = len(vocab), n_topics
    rng = np.random.default_rng(seed)

    words = [np.array([index[t] for t in d], dtype=np.int64) for d in docs]
    z = [rng.integers(0, K, size=len(w)) for w in words]
    n_dk = np.zeros((len(docs), K))
    n_kw = np.zeros((K, V))
    n_k = np.zeros(K)
    for d, (wd, zd) in enumerate(zip(words, z)):
        np.add.at(n_dk[d], zd, 1)
        np.add.at(n_kw, (zd, wd), 1)
        np.add.at(n_k, zd, 1)

    vbeta = V * beta
    totals = []
    for _ in range(iters):
        for d, (wd, zd) in enumerate(zip(words, z)):
            row = n_dk[d]
            draws = rng.random(len(wd))
            for i in range(len(wd)):
                w, k = wd[i], zd[i]
                row[k] -= 1
                n_kw[k, w] -= 1
                n_k[k] -= 1
                p = (row + alpha) * (n_kw[:, w] + beta) / (n_k + vbeta)
                k = _sample(p, draws[i])
                zd[i] = k
                row[k] += 1
                n_kw[k, w] += 1
                n_k[k] += 1
        if return_state:
            totals.append(int(n_k.sum()))

    topic_word = (n_kw + beta) / (n_k[:, None] + vbeta)
    model = TopicModel(K, topic_word, tuple(vocab), float(alpha), float(beta), int(seed), int(iters))
    if return_state:
        return model, n_dk, totals
    return model


@dataclass(frozen=True)
class TopicDistribution:
    theta: np.ndarray

    def __post_init__(self):
        if np.any(self.theta < 0) or abs(float(self.theta.sum()) - 1.0) > 1e-9:
            raise ValueError("theta must be a probability vector")


def infer_theta(model: TopicModel, tokens: Sequence[str], iters: int = 50, salt: int | Sequence[int] = 0) -> TopicDistribution:
    """Fold-in Gibbs sampling with the topic-word matrix held fixed.

    The sampler is seeded from ``model.seed`` and ``salt`` so the result is
    reproducible per sentence. Out-of-vocabulary tokens are ignored; when
    none remain the distribution is uniform.
    """
    K = model.n_topics
    ids = [model.word_index[t] for t in tokens if t in model.word_index]
    if not ids:
        return TopicDistribution(np.full(K, 1.0 / K))
    salt = [salt] if isinstance(salt, (int, np.integer)) else list(salt)
    rng = np.random.default_rng([model.seed, *salt])
    phi = model.topic_word[:, ids]  # K x n
    z = rng.integers(0, K, size=len(ids))
    n_k = np.bincount(z, minlength=K).astype(float)
    for _ in range(iters):
        draws = rng.random(len(ids))
        for i in range(len(ids)):
            n_k[z[i]] -= 1
            k = _sample((n_k + model.alpha) * phi[:, i], draws[i])
            z[i] = k
            n_k[k] += 1
    theta = (n_k + model.alpha) / (len(ids) + K * model.alpha)
    return TopicDistribution(theta / theta.sum())


def assign_cluster(theta: TopicDistribution | np.ndarray) -> int:
    """Index of the mode of ``theta``; ties go to the lowest index."""
    vec = theta.theta if isinstance(theta, TopicDistribution) else np.asarray(theta)
    return int(np.argmax(vec))


def train_topic_models(
    docs_by_key: Mapping[str, Sequence[Sequence[str]]],
    n_topics: int,
    iters: int = 1000,
    alpha: float | None = None,
    beta: float = 0.01,
    seed: int = 0,
) -> dict[str, TopicModel]:
    """One model per partition key (e.g. category), all sharing a seed."""
    return {
        key: train_lda(docs, n_topics, iters, alpha, beta, seed)
        for key, docs in sorted(docs_by_key.items())
    }


def model_for(models: Mapping[str, TopicModel], category: str | None) -> TopicModel:
    if category is not None and category in models:
        return models[category]
    if GLOBAL_KEY in models:
        return models[GLOBAL_KEY]
    if len(models) == 1:
        return next(iter(models.values()))
    raise TopicModelError(f"no topic model for category {category!r}")


def save_topic_models(models: Mapping[str, TopicModel], path: str | Path) -> None:
    payload = {
        "format": FORMAT,
        "version": FORMAT_VERSION,
        "models": {k: m.to_dict() for k, m in models.items()},
    }
    Path(path).write_text(json.dumps(payload), encoding="utf-8")


def load_topic_models(path: str | Path) -> dict[str, TopicModel]:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    if payload.get("format") != FORMAT:
        raise TopicModelError(f"{path}: not a topic model file")
    if payload.get("version") != FORMAT_VERSION:
        raise TopicModelError(f"{path}: unsupported version {payload.get('version')}")
    return {k: TopicModel.from_dict(d) for k, d in payload["models"].items()}
