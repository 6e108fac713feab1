"""Budgeted greedy maximization of the objective, and the TFIDF+Lexicon
baseline summarizer."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .corpus import CorpusStats, Sentence, build_stats, tfidf_vector, tokenize
from .lexicon import SentimentLexicon, sentiment_word_count
from .objective import ObjectiveContext, ObjectiveSpec, dispersion
from .similarity import cosine_tfidf

BUDGET_KINDS = ("words", "nonwhite_chars")
TIE_TOL = 1e-12


@dataclass(frozen=True)
class Budget:
    kind: str
    limit: int

    def __post_init__(self):
        if self.kind not in BUDGET_KINDS:
            raise ValueError(f"budget kind must be one of {BUDGET_KINDS}")
        if self.limit <= 0:
            raise ValueError("budget limit must be positive")

    def cost(self, s: Sentence) -> int:
        if self.kind == "words":
            return len(s.raw.split())
        return s.char_count_nonwhite


@dataclass(frozen=True)
class TraceStep:
    candidate: int
    gain: float
    objective: float


@dataclass(frozen=True)
class Summary:
    sentence_ids: tuple[int, ...]
    total_cost: int
    objective_value: float | None
    trace: tuple[TraceStep, ...] = ()


class _GreedyState:
    """Running coverage counts for the submodular terms, so each step's
    marginal gains come out in one vectorized pass."""

    def __init__(self, ctx: ObjectiveContext, spec: ObjectiveSpec):
        self.ctx = ctx
        self.spec = spec
        self.selected: list[int] = []
        self.cov = np.zeros(ctx.n)
        self.cap = spec.theta * ctx.total_cov
        self.relevance = np.sqrt(1.0 / np.asarray(ctx.ranks, dtype=float))
        self.coefs = {"topic": spec.alpha, "author": spec.beta, "polarity": spec.gamma}
        self.counts = {
            key: np.zeros(max(int(ctx.partitions[key].labels.max(initial=-1)) + 1, 1)) for key in self.coefs
        }
        self.sub_value = 0.0

    def submodular_gains(self) -> np.ndarray:
        gains = self.relevance.copy()
        for key, coef in self.coefs.items():
            labels = self.ctx.partitions[key].labels
            c = self.counts[key][np.maximum(labels, 0)]
            g = np.sqrt(c + 1) - np.sqrt(c)
            gains += coef * np.where(labels >= 0, g, 0.0)
        current = np.minimum(self.cov, self.cap).sum()
        after = np.minimum(self.cov[:, None] + self.ctx.pairwise_sim, self.cap[:, None]).sum(axis=0)
        return gains + self.spec.eta * (after - current)

    def add(self, s: int, gain: float) -> None:
        self.selected.append(s)
        self.cov += self.ctx.pairwise_sim[:, s]
        for key in self.coefs:
            c = self.ctx.partitions[key].labels[s]
            if c >= 0:
                self.counts[key][c] += 1
        self.sub_value += gain


def greedy_select(ctx: ObjectiveContext, spec: ObjectiveSpec, costs: Sequence[int], limit: int) -> Summary:
    """Pick, at every step, the affordable sentence that maximizes the
    objective of the grown set; stop when nothing fits.

    Ties (within 1e-12) go to the better rank, then the lower index.
    """
    n = ctx.n
    if len(costs) != n:
        raise ValueError("one cost per sentence required")
    state = _GreedyState(ctx, spec)
    remaining = limit
    used = np.zeros(n, dtype=bool)
    value = 0.0
    trace = []
    while True:
        fits = [i for i in range(n) if not used[i] and costs[i] <= remaining]
        if not fits:
            break
        sub_gains = state.submodular_gains()
        best, best_val, best_sub = None, -math.inf, 0.0
        for i in fits:
            h = dispersion(state.selected + [i], ctx, spec.dispersion) if spec.delta else 0.0
            val = state.sub_value + sub_gains[i] + spec.delta * h
            if best is None or val > best_val + TIE_TOL:
                best, best_val, best_sub = i, val, sub_gains[i]
            elif abs(val - best_val) <= TIE_TOL and ctx.ranks[i] < ctx.ranks[best]:
                best, best_val, best_sub = i, val, sub_gains[i]
        state.add(best, best_sub)
        used[best] = True
        remaining -= costs[best]
        trace.append(TraceStep(best, best_val - value, best_val))
        value = best_val
    return Summary(tuple(state.selected), limit - remaining, value, tuple(trace))


def greedy_summarize(
    V: Sequence[Sentence], ctx: ObjectiveContext, spec: ObjectiveSpec, budget: Budget
) -> Summary:
    """Greedy summary of ``V``; ``ctx`` must be indexed like ``V``."""
    if not V:
        return Summary((), 0, 0.0, ())
    costs = [budget.cost(s) for s in V]
    picked = greedy_select(ctx, spec, costs, budget.limit)
    ids = tuple(V[i].id for i in picked.sentence_ids)
    trace = tuple(TraceStep(V[t.candidate].id, t.gain, t.objective) for t in picked.trace)
    return Summary(ids, picked.total_cost, picked.objective_value, trace)


def tfidf_lexicon_baseline(
    V: Sequence[Sentence],
    query: str,
    lex: SentimentLexicon,
    budget: Budget,
    stats: CorpusStats | None = None,
) -> Summary:
    """Sort by unigram TFIDF cosine with the query, then keep sentences
    carrying at least one sentiment word while they fit."""
    stats = stats or build_stats(list(s.tokens) for s in V)
    qv = tfidf_vector(tokenize(query), stats, "uni", "tfidf")
    scored = sorted(
        range(len(V)), key=lambda i: (-cosine_tfidf(tfidf_vector(V[i].tokens, stats), qv), i)
    )
    remaining = budget.limit
    chosen = []
    for i in scored:
        if sentiment_word_count(V[i].tokens, lex) == 0:
            continue
        c = budget.cost(V[i])
        if c <= remaining:
            chosen.append(V[i].id)
            remaining -= c
    return Summary(tuple(chosen), budget.limit - remaining, None, ())


def render_summary(summary: Summary, sentences: Sequence[Sentence], bullet: str = "• ") -> str:
    """One bullet per source answer, answers in order of first selection."""
    by_id = {s.id: s for s in sentences}
    groups: dict[int, list[str]] = {}
    for sid in summary.sentence_ids:
        s = by_id[sid]
        groups.setdefault(s.answer_index, []).append(s.raw)
    return "\n".join(bullet + " ".join(raws) for raws in groups.values())


def summary_tokens(summary: Summary, sentences: Sequence[Sentence]) -> list[str]:
    by_id = {s.id: s for s in sentences}
    return [t for sid in summary.sentence_ids for t in by_id[sid].tokens]
