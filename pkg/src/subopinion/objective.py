"""The summary objective: relevance, three partition coverages, saturated
content coverage and a dispersion term over metric-closure distances.

Sentences are addressed by their index in the candidate set V.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .similarity import as_kind

DISPERSION_FORMS = ("sum", "min")
CONTENT_SIMS = ("tfidf", "semantic")
PARTITION_KEYS = ("topic", "author", "polarity")


class ObjectiveError(ValueError):
    pass


@dataclass(frozen=True)
class ObjectiveSpec:
    alpha: float = 5.0  # topic coverage
    beta: float = 1.0  # authorship coverage
    gamma: float = 10.0  # polarity coverage
    eta: float = 5.0  # content coverage
    delta: float = 10.0  # dispersion
    theta: float = 0.1
    dispersion: str = "sum"
    dissimilarity: str = "lexical"
    content_sim: str = "tfidf"

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "eta", "delta"):
            if getattr(self, name) < 0:
                raise ObjectiveError(f"{name} must be nonnegative")
        if not 0 < self.theta <= 1:
            raise ObjectiveError("theta must lie in (0, 1]")
        if self.dispersion not in DISPERSION_FORMS:
            raise ObjectiveError(f"dispersion must be one of {DISPERSION_FORMS}")
        if self.content_sim not in CONTENT_SIMS:
            raise ObjectiveError(f"content_sim must be one of {CONTENT_SIMS}")
        object.__setattr__(self, "dissimilarity", as_kind(self.dissimilarity).value)


@dataclass(frozen=True)
class Partition:
    """Cluster label per sentence; -1 marks a sentence outside every cluster."""

    labels: np.ndarray

    @classmethod
    def from_mapping(cls, cluster_of: Mapping[int, int], n: int) -> "Partition":
        labels = np.full(n, -1, dtype=np.int64)
        for sid, c in cluster_of.items():
            labels[sid] = c
        return cls(labels)

    @classmethod
    def from_keys(cls, keys: Sequence[object]) -> "Partition":
        """Dense cluster ids from arbitrary hashable keys; ``None`` is unassigned."""
        ids: dict[object, int] = {}
        labels = [(-1 if k is None else ids.setdefault(k, len(ids))) for k in keys]
        return cls(np.asarray(labels, dtype=np.int64))

    @property
    def cluster_of(self) -> dict[int, int]:
        return {i: int(c) for i, c in enumerate(self.labels) if c >= 0}


@dataclass(frozen=True)
class ObjectiveContext:
    ranks: np.ndarray
    partitions: Mapping[str, Partition]
    pairwise_sim: np.ndarray
    pairwise_dissim: np.ndarray
    total_cov: np.ndarray = field(init=False)

    def __post_init__(self):
        n = len(self.ranks)
        for name in ("pairwise_sim", "pairwise_dissim"):
            m = getattr(self, name)
            if m.shape != (n, n):
                raise ObjectiveError(f"{name} must be {n}x{n}")
            if not np.allclose(m, m.T, atol=1e-12):
                raise ObjectiveError(f"{name} must be symmetric")
            if m.size and (m.min() < -1e-12 or m.max() > 1 + 1e-12):
                raise ObjectiveError(f"{name} entries must lie in [0, 1]")
        if n and np.min(self.ranks) < 1:
            raise ObjectiveError("ranks start at 1")
        object.__setattr__(self, "total_cov", self.pairwise_sim.sum(axis=1))

    @property
    def n(self) -> int:
        return len(self.ranks)


def relevance_term(S: Iterable[int], ranks) -> float:
    """Sum of sqrt(1/rank) over the selection."""
    total = 0.0
    for s in S:
        try:
            r = ranks[s]
        except (KeyError, IndexError):
            raise ObjectiveError(f"no rank for sentence {s}") from None
        if r < 1:
            raise ObjectiveError(f"rank of sentence {s} must be >= 1")
        total += math.sqrt(1.0 / r)
    return total


def partition_coverage(S: Iterable[int], partition: Partition) -> float:
    counts: dict[int, int] = {}
    for s in S:
        c = int(partition.labels[s])
        if c >= 0:
            counts[c] = counts.get(c, 0) + 1
    return sum(math.sqrt(k) for k in counts.values())


def content_coverage(S: Iterable[int], ctx: ObjectiveContext, theta: float) -> float:
    """sum over all v in V of min(cov(v, S), theta * cov(v, V))."""
    idx = list(S)
    if not idx:
        return 0.0
    cov = ctx.pairwise_sim[:, idx].sum(axis=1)
    return float(np.minimum(cov, theta * ctx.total_cov).sum())


def metric_closure(D: np.ndarray) -> np.ndarray:
    """All-pairs shortest paths over the complete graph with edge weights D."""
    d = np.array(D, dtype=float)
    np.fill_diagonal(d, 0.0)
    for k in range(len(d)):
        np.minimum(d, d[:, k : k + 1] + d[k : k + 1, :], out=d)
    return d


def dispersion(S: Sequence[int], ctx: ObjectiveContext, form: str) -> float:
    """h_sum (each unordered pair once) or h_min over closure distances on S;
    zero for fewer than two sentences."""
    idx = list(S)
    if len(idx) < 2:
        return 0.0
    d = metric_closure(ctx.pairwise_dissim[np.ix_(idx, idx)])
    iu = np.triu_indices(len(idx), k=1)
    if form == "sum":
        return float(d[iu].sum())
    if form == "min":
        return float(d[iu].min())
    raise ObjectiveError(f"unknown dispersion form {form!r}")


def objective_terms(S: Sequence[int], ctx: ObjectiveContext, spec: ObjectiveSpec) -> dict[str, float]:
    S = list(S)
    parts = ctx.partitions
    return {
        "relevance": relevance_term(S, ctx.ranks),
        "topic": partition_coverage(S, parts["topic"]),
        "author": partition_coverage(S, parts["author"]),
        "polarity": partition_coverage(S, parts["polarity"]),
        "content": content_coverage(S, ctx, spec.theta),
        "dispersion": dispersion(S, ctx, spec.dispersion),
    }


def combine(terms: Mapping[str, float], spec: ObjectiveSpec, with_dispersion: bool = True) -> float:
    value = (
        terms["relevance"]
        + spec.alpha * terms["topic"]
        + spec.beta * terms["author"]
        + spec.gamma * terms["polarity"]
        + spec.eta * terms["content"]
    )
    if with_dispersion:
        value += spec.delta * terms["dispersion"]
    return value


def submodular_part(S: Sequence[int], ctx: ObjectiveContext, spec: ObjectiveSpec) -> float:
    """Everything but the dispersion term; monotone and submodular."""
    S = list(S)
    parts = ctx.partitions
    return (
        relevance_term(S, ctx.ranks)
        + spec.alpha * partition_coverage(S, parts["topic"])
        + spec.beta * partition_coverage(S, parts["author"])
        + spec.gamma * partition_coverage(S, parts["polarity"])
        + spec.eta * content_coverage(S, ctx, spec.theta)
    )


def full_objective(S: Sequence[int], ctx: ObjectiveContext, spec: ObjectiveSpec) -> float:
    return combine(objective_terms(S, ctx, spec), spec)
