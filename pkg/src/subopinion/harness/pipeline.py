"""Glue from ingested threads to objective contexts, summaries and reports."""

from __future__ import annotations

import logging
import zlib
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from ..corpus import (
    CorpusStats,
    Sentence,
    Thread,
    build_stats,
    ingest,
    sentence_split,
    thread_documents,
    tfidf_vector,
    tokenize,
)
from ..lexicon import POSITIVE, NEGATIVE, SentimentLexicon, load_lexicon_dir, sentence_polarity
from ..objective import ObjectiveContext, ObjectiveSpec, Partition
from ..ranker import (
    RankModel,
    background_stats,
    baseline_rank,
    build_feature_context,
    listnet_train,
    load_rank_model,
    rank,
    ranking_metrics,
    sentence_ranks,
    thread_candidates,
    training_lists,
)
from ..similarity import (
    DissimilarityContext,
    SynsetGraph,
    dissimilarity_matrix,
    extract_relations,
    load_synset_graph,
    similarity_matrix,
)
from ..summarizer import Budget, Summary, greedy_summarize, summary_tokens
from ..topics import (
    GLOBAL_KEY,
    TopicModel,
    assign_cluster,
    infer_theta,
    load_topic_models,
    model_for,
    train_topic_models,
)
from .config import RunConfig
from .metrics import MetricsReport, jsd_eval, rouge2, rouge_su4

log = logging.getLogger(__name__)


def load_corpus(config: RunConfig) -> list[Thread]:
    return ingest(config.resolved("corpus"), genre=config.genre or None, filter_qa=config.filter_qa)


def lda_documents(threads: Sequence[Thread], by_category: bool = True) -> dict[str, list[list[str]]]:
    """Training documents grouped by category (or one global group)."""
    groups: dict[str, list[list[str]]] = {}
    for t in threads:
        key = t.category if by_category and t.category else GLOBAL_KEY
        groups.setdefault(key, []).extend(thread_documents(t))
    return groups


def train_lda_models(threads: Sequence[Thread], config: RunConfig) -> dict[str, TopicModel]:
    docs = lda_documents(threads, config.lda_by_category)
    models = train_topic_models(
        docs,
        config.topics,
        config.lda_iters,
        config.lda_alpha or None,
        config.lda_beta,
        config.seed,
    )
    if GLOBAL_KEY not in models and len(models) > 1:
        # fallback for categories unseen at training time
        models[GLOBAL_KEY] = train_topic_models(
            {GLOBAL_KEY: [d for ds in docs.values() for d in ds]},
            config.topics, config.lda_iters, config.lda_alpha or None, config.lda_beta, config.seed,
        )[GLOBAL_KEY]
    return models


def train_ranker(threads: Sequence[Thread], lex: SentimentLexicon, config: RunConfig,
                 background: CorpusStats | None = None) -> RankModel:
    lists = training_lists(threads, lex, background)
    return listnet_train(lists, config.ranker_epochs, config.ranker_lr, config.seed)


@dataclass
class Resources:
    lexicon: SentimentLexicon
    graph: SynsetGraph
    topic_models: Mapping[str, TopicModel]
    rank_model: RankModel | None
    background: CorpusStats
    config: RunConfig


def load_resources(threads: Sequence[Thread], config: RunConfig,
                   topic_models=None, rank_model=None) -> Resources:
    """Load or train everything the per-thread pipeline needs."""
    lex = load_lexicon_dir(config.resolved("lexicon_dir"))
    graph = load_synset_graph(config.resolved("synset_graph"), config.max_path)
    background = background_stats(threads)
    if topic_models is None:
        if config.lda_model:
            topic_models = load_topic_models(config.lda_model)
        else:
            log.info("training topic models on the input corpus")
            topic_models = train_lda_models(threads, config)
    if rank_model is None:
        if config.ranker_model:
            rank_model = load_rank_model(config.ranker_model)
        elif any(t.genre == "qa" and t.best_index is not None for t in threads):
            log.info("training ranker on the input corpus")
            rank_model = train_ranker(threads, lex, config, background)
        else:
            log.warning("no ranker model and no labelled threads; ranking by posting order")
    return Resources(lex, graph, topic_models, rank_model, background, config)


def _salt(thread_id: str, sentence_id: int) -> list[int]:
    return [zlib.crc32(thread_id.encode("utf-8")), sentence_id]


@dataclass
class PreparedThread:
    """Everything about one thread that does not depend on the objective
    spec. Similarity and dissimilarity matrices are computed on first use."""

    thread: Thread
    sentences: list[Sentence]
    ranks: np.ndarray
    partitions: dict[str, Partition]
    dctx: DissimilarityContext
    _sims: dict = field(default_factory=dict, repr=False)
    _dissims: dict = field(default_factory=dict, repr=False)

    def sim(self, kind: str) -> np.ndarray:
        if kind not in self._sims:
            self._sims[kind] = similarity_matrix(self.dctx, kind)
        return self._sims[kind]

    def dissim(self, kind: str) -> np.ndarray:
        if kind not in self._dissims:
            self._dissims[kind] = dissimilarity_matrix(self.dctx, kind)
        return self._dissims[kind]

    def context(self, spec: ObjectiveSpec) -> ObjectiveContext:
        return ObjectiveContext(self.ranks, self.partitions, self.sim(spec.content_sim),
                                self.dissim(spec.dissimilarity))

    @property
    def source_tokens(self) -> list[str]:
        return [t for s in self.sentences for t in s.tokens]


def prepare_thread(thread: Thread, res: Resources) -> PreparedThread:
    cfg = res.config
    sentences = sentence_split(thread)
    n = len(sentences)
    stats = build_stats(thread_documents(thread, sentences))

    if res.rank_model is not None and n:
        cands = thread_candidates(thread, sentences)
        fctx = build_feature_context(thread, cands, res.lexicon, res.background, stats)
        ranked = rank(res.rank_model, cands, fctx)
        by_sentence = sentence_ranks(thread, sentences, ranked)
        ranks = np.array([by_sentence[s.id] for s in sentences], dtype=float)
    elif thread.genre == "qa":
        ranks = np.array([s.answer_index + 1 for s in sentences], dtype=float)
    else:
        ranks = np.arange(1, n + 1, dtype=float)

    model = model_for(res.topic_models, thread.category)
    thetas = [infer_theta(model, s.tokens, cfg.lda_infer_iters, _salt(thread.id, s.id)).theta
              for s in sentences]
    polarity = []
    for s in sentences:
        label = sentence_polarity(s.tokens, res.lexicon, cfg.polarity_window).value
        polarity.append(label if label in (POSITIVE, NEGATIVE) else None)
    partitions = {
        "topic": Partition(np.array([assign_cluster(th) for th in thetas], dtype=np.int64)),
        "author": Partition.from_keys([s.author for s in sentences]),
        "polarity": Partition.from_keys(polarity),
    }
    dctx = DissimilarityContext(
        vectors=[tfidf_vector(s.tokens, stats, "uni", "tfidf") for s in sentences],
        relations=[extract_relations(s.tokens) for s in sentences],
        graph=res.graph,
        thetas=thetas,
    )
    return PreparedThread(thread, sentences, ranks, partitions, dctx)


def summarize_prepared(p: PreparedThread, spec: ObjectiveSpec, budget: Budget) -> Summary:
    if not p.sentences:
        return Summary((), 0, 0.0, ())
    return greedy_summarize(p.sentences, p.context(spec), spec, budget)


def evaluate_summary(thread: Thread, sentences: Sequence[Sentence], summary: Summary) -> MetricsReport:
    """JSD against all source tokens; ROUGE when the thread has references."""
    toks = summary_tokens(summary, sentences)
    source = [t for s in sentences for t in s.tokens]
    report = MetricsReport(thread.id)
    if toks:
        report.jsd = jsd_eval(toks, source)
    else:
        log.warning("thread %s: empty summary, JSD undefined", thread.id)
    if thread.references:
        refs = [tokenize(r) for r in thread.references]
        report.rouge2 = rouge2(toks, refs)
        report.rouge_su4 = rouge_su4(toks, refs)
    return report


def ranker_report(
    threads: Sequence[Thread],
    lex: SentimentLexicon | None = None,
    model: RankModel | None = None,
    baseline: str | None = None,
    seed: int = 0,
    background: CorpusStats | None = None,
) -> tuple[float, float]:
    """Best-answer prediction (p@1, MRR) over labelled qa threads, by the
    trained model or by one of the baselines."""
    if baseline is None and (model is None or lex is None):
        raise ValueError("a ranker model and lexicon are required unless a baseline is chosen")
    if baseline is None:
        background = background or background_stats(threads)
    results = []
    for t in threads:
        if t.genre != "qa" or t.best_index is None:
            continue
        cands = thread_candidates(t)
        if baseline:
            ranked = baseline_rank(cands, baseline, seed=seed + len(results))
        else:
            ranked = rank(model, cands, build_feature_context(t, cands, lex, background))
        results.append((ranked, t.best_index))
    return ranking_metrics(results)
