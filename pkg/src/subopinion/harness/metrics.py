"""Automatic summary evaluation: JSD against the source set, ROUGE-2 and
ROUGE-SU4 against reference summaries.

ROUGE runs with stemming and stopword removal off.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass
from typing import Sequence

from ..similarity import jsd

SU_SKIP = 4  # intervening words allowed in a skip-bigram


class MetricError(ValueError):
    pass


def jsd_eval(summary_tokens: Sequence[str], reference_tokens: Sequence[str]) -> float:
    """Unsmoothed unigram JSD (log base 2) between summary and source."""
    if not summary_tokens:
        raise MetricError("summary is empty")
    if not reference_tokens:
        raise MetricError("reference collection is empty")
    cs, cr = Counter(summary_tokens), Counter(reference_tokens)
    ns, nr = len(summary_tokens), len(reference_tokens)
    vocab = sorted(set(cs) | set(cr))
    return jsd([cs[t] / ns for t in vocab], [cr[t] / nr for t in vocab])


def ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def skip_bigram_counts(tokens: Sequence[str], skip: int = SU_SKIP) -> Counter:
    out: Counter = Counter()
    for i in range(len(tokens)):
        for j in range(i + 1, min(len(tokens), i + skip + 2)):
            out[(tokens[i], tokens[j])] += 1
    return out


def su_counts(tokens: Sequence[str], skip: int = SU_SKIP) -> Counter:
    counts = skip_bigram_counts(tokens, skip)
    counts.update((t,) for t in tokens)
    return counts


def _prf(cand: Counter, refs: Sequence[Counter]) -> tuple[float, float, float]:
    if not refs:
        raise MetricError("at least one reference is required")
    matched = sum(sum((cand & r).values()) for r in refs)
    ref_total = sum(sum(r.values()) for r in refs)
    cand_total = sum(cand.values()) * len(refs)
    p = matched / cand_total if cand_total else 0.0
    r = matched / ref_total if ref_total else 0.0
    f = 2 * p * r / (p + r) if p + r else 0.0
    return p, r, f


def rouge2(candidate: Sequence[str], references: Sequence[Sequence[str]]) -> tuple[float, float, float]:
    """Clipped bigram overlap pooled over references: (precision, recall, f1)."""
    return _prf(ngram_counts(candidate, 2), [ngram_counts(r, 2) for r in references])


def rouge_su4(candidate: Sequence[str], references: Sequence[Sequence[str]]) -> tuple[float, float, float]:
    """Unigrams plus skip-bigrams with up to four intervening words."""
    return _prf(su_counts(candidate), [su_counts(r) for r in references])


@dataclass
class MetricsReport:
    thread_id: str
    jsd: float | None = None
    rouge2: tuple[float, float, float] | None = None
    rouge_su4: tuple[float, float, float] | None = None
    ranking: tuple[float, float] | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def _mean_tuple(rows):
    rows = [r for r in rows if r is not None]
    if not rows:
        return None
    return tuple(sum(col) / len(rows) for col in zip(*rows))


def aggregate(reports: Sequence[MetricsReport], label: str = "ALL") -> MetricsReport:
    """Macro average: every thread weighs the same."""
    jsds = [r.jsd for r in reports if r.jsd is not None]
    return MetricsReport(
        thread_id=label,
        jsd=sum(jsds) / len(jsds) if jsds else None,
        rouge2=_mean_tuple(r.rouge2 for r in reports),
        rouge_su4=_mean_tuple(r.rouge_su4 for r in reports),
        ranking=_mean_tuple(r.ranking for r in reports),
    )
