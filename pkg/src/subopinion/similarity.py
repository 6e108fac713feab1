"""Similarity kernels and the lexical / semantic / topical dissimilarities."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .corpus import STOPWORDS, TermVector

DEFAULT_MAX_PATH = 6


class DissimilarityKind(str, Enum):
    LEXICAL = "lexical"
    SEMANTIC = "semantic"
    TOPICAL = "topical"


class ConfigurationError(ValueError):
    pass


def as_kind(kind: DissimilarityKind | str) -> DissimilarityKind:
    try:
        return DissimilarityKind(kind)
    except ValueError:
        raise ConfigurationError(f"unknown dissimilarity {kind!r}") from None


def cosine_tfidf(u: TermVector, v: TermVector) -> float:
    if u.norm == 0 or v.norm == 0:
        return 0.0
    if len(u) > len(v):
        u, v = v, u
    dot = sum(w * v.weights.get(t, 0.0) for t, w in u.weights.items())
    # sqrt of the product keeps cos(u, u) exactly 1
    return min(1.0, max(0.0, dot / math.sqrt(u.sq_norm * v.sq_norm)))


@dataclass(frozen=True)
class SynsetGraph:
    """Undirected word graph built from synonym / hypernym edges."""

    adjacency: Mapping[str, frozenset[str]]
    max_path: int = DEFAULT_MAX_PATH
    _dist_cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.max_path < 1:
            raise ValueError("max_path must be >= 1")
        for a, nbrs in self.adjacency.items():
            for b in nbrs:
                if a not in self.adjacency.get(b, ()):
                    raise ValueError(f"adjacency not symmetric for edge {a!r}-{b!r}")

    @classmethod
    def from_edges(cls, edges, max_path: int = DEFAULT_MAX_PATH) -> "SynsetGraph":
        adj: dict[str, set[str]] = {}
        for a, b in edges:
            a, b = a.lower(), b.lower()
            adj.setdefault(a, set())
            adj.setdefault(b, set())
            if a != b:
                adj[a].add(b)
                adj[b].add(a)
        return cls({k: frozenset(v) for k, v in adj.items()}, max_path)

    def distances_from(self, word: str) -> Mapping[str, int]:
        """Breadth-first path lengths from ``word``, truncated at max_path."""
        hit = self._dist_cache.get(word)
        if hit is not None:
            return hit
        dist = {word: 0}
        queue = deque([word])
        while queue:
            cur = queue.popleft()
            if dist[cur] == self.max_path:
                continue
            for nxt in self.adjacency.get(cur, ()):
                if nxt not in dist:
                    dist[nxt] = dist[cur] + 1
                    queue.append(nxt)
        self._dist_cache[word] = dist
        return dist


def load_synset_graph(path: str | Path, max_path: int = DEFAULT_MAX_PATH) -> SynsetGraph:
    edges = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'term<TAB>term'")
            edges.append((parts[0], parts[1]))
    return SynsetGraph.from_edges(edges, max_path)


def wn_word_sim(g: SynsetGraph, w1: str, w2: str) -> float:
    """1/(1+L) for shortest path length L; 0 when unreachable or absent."""
    if w1 not in g.adjacency or w2 not in g.adjacency:
        return 0.0
    if w1 == w2:
        return 1.0
    if w2 < w1:  # query from a canonical end so the cache is shared
        w1, w2 = w2, w1
    L = g.distances_from(w1).get(w2)
    return 0.0 if L is None else 1.0 / (1.0 + L)


def extract_relations(tokens: Sequence[str], stopwords: frozenset[str] = STOPWORDS) -> list[tuple[str, str]]:
    """(head, modifier) pairs from adjacent content words.

    Stands in for dependency relations; swap this function for a parser's
    output to get the real thing.
    """
    content = [t for t in tokens if t not in stopwords]
    return list(zip(content, content[1:]))


def semantic_sim_relations(
    ru: Sequence[tuple[str, str]], rv: Sequence[tuple[str, str]], g: SynsetGraph
) -> float:
    if not ru or not rv:
        return 0.0
    total = 0.0
    for a1, b1 in ru:
        for a2, b2 in rv:
            wa = wn_word_sim(g, a1, a2)
            if wa:
                total += wa * wn_word_sim(g, b1, b2)
    return min(1.0, total / (len(ru) * len(rv)))


def semantic_sim(u, v, g: SynsetGraph) -> float:
    """Mean over relation pairs of the product of head and modifier word
    similarities. ``u`` and ``v`` are sentences or token sequences."""
    ru = extract_relations(getattr(u, "tokens", u))
    rv = extract_relations(getattr(v, "tokens", v))
    return semantic_sim_relations(ru, rv, g)


def jsd(p: Sequence[float], q: Sequence[float]) -> float:
    """Jensen-Shannon divergence with base-2 logs (0 log 0 = 0)."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    s = p + q
    total = 0.0
    for a in (p, q):
        nz = a > 0
        # a / m as 2a / (p + q): halving a subnormal sum would underflow to 0
        total += 0.5 * float(np.sum(a[nz] * np.log2(2.0 * a[nz] / s[nz])))
    return min(1.0, max(0.0, total))


@dataclass(frozen=True)
class DissimilarityContext:
    """Per-sentence material the dissimilarity kinds draw on, indexed by
    position in the candidate set."""

    vectors: Sequence[TermVector] | None = None
    relations: Sequence[Sequence[tuple[str, str]]] | None = None
    graph: SynsetGraph | None = None
    thetas: Sequence[np.ndarray] | None = None

    def require(self, kind: DissimilarityKind | str) -> None:
        kind = as_kind(kind)
        if kind is DissimilarityKind.LEXICAL and self.vectors is None:
            raise ConfigurationError("lexical dissimilarity needs term vectors")
        if kind is DissimilarityKind.SEMANTIC and (self.relations is None or self.graph is None):
            raise ConfigurationError("semantic dissimilarity needs relations and a synset graph")
        if kind is DissimilarityKind.TOPICAL and self.thetas is None:
            raise ConfigurationError("topical dissimilarity needs topic distributions")

    def __len__(self):
        for seq in (self.vectors, self.relations, self.thetas):
            if seq is not None:
                return len(seq)
        return 0


def similarity(u: int, v: int, kind: str, ctx: DissimilarityContext) -> float:
    """Content similarity ``tfidf`` or ``semantic`` between items u and v."""
    if kind == "tfidf":
        ctx.require(DissimilarityKind.LEXICAL)
        return cosine_tfidf(ctx.vectors[u], ctx.vectors[v])
    if kind == "semantic":
        ctx.require(DissimilarityKind.SEMANTIC)
        return semantic_sim_relations(ctx.relations[u], ctx.relations[v], ctx.graph)
    raise ConfigurationError(f"unknown content similarity {kind!r}")


def dissimilarity(u: int, v: int, kind: DissimilarityKind | str, ctx: DissimilarityContext) -> float:
    kind = as_kind(kind)
    ctx.require(kind)
    if kind is DissimilarityKind.LEXICAL:
        return 1.0 - cosine_tfidf(ctx.vectors[u], ctx.vectors[v])
    if kind is DissimilarityKind.SEMANTIC:
        return 1.0 - semantic_sim_relations(ctx.relations[u], ctx.relations[v], ctx.graph)
    return jsd(ctx.thetas[u], ctx.thetas[v])


def _pairwise(n: int, fn) -> np.ndarray:
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            out[i, j] = out[j, i] = fn(i, j)
    return out


def similarity_matrix(ctx: DissimilarityContext, kind: str) -> np.ndarray:
    return _pairwise(len(ctx), lambda i, j: similarity(i, j, kind, ctx))


def dissimilarity_matrix(ctx: DissimilarityContext, kind: DissimilarityKind | str) -> np.ndarray:
    """Symmetric d' matrix; the diagonal is zero by definition."""
    return _pairwise(len(ctx), lambda i, j: 0.0 if i == j else dissimilarity(i, j, kind, ctx))
