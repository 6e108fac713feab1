"""Sentiment lexicons and sentence polarity with negation flipping."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

POSITIVE = "positive"
NEGATIVE = "negative"
NEUTRAL = "neutral"

NEGATORS_FILE = "negators.txt"
_POLARITY_CODES = {"pos": POSITIVE, "neg": NEGATIVE, "positive": POSITIVE, "negative": NEGATIVE}


class LexiconError(ValueError):
    pass


@dataclass(frozen=True)
class SentimentLexicon:
    polarity: Mapping[str, str]
    negators: frozenset[str]

    def __contains__(self, term: str) -> bool:
        return term in self.polarity

    def flipped(self) -> "SentimentLexicon":
        swap = {POSITIVE: NEGATIVE, NEGATIVE: POSITIVE}
        return SentimentLexicon({t: swap[p] for t, p in self.polarity.items()}, self.negators)


@dataclass(frozen=True)
class PolarityLabel:
    value: str
    pos_count: int
    neg_count: int

    @classmethod
    def from_counts(cls, pos: int, neg: int) -> "PolarityLabel":
        if pos > neg:
            return cls(POSITIVE, pos, neg)
        if neg > pos:
            return cls(NEGATIVE, pos, neg)
        return cls(NEUTRAL, pos, neg)


def merge_lexicons(
    sources: Iterable[Mapping[str, str] | Iterable[tuple[str, str]]],
    negators: Iterable[str] = (),
) -> SentimentLexicon:
    """Union of polarity tables; any term given both polarities is dropped."""
    seen: dict[str, set[str]] = defaultdict(set)
    for table in sources:
        items = table.items() if isinstance(table, Mapping) else table
        for term, pol in items:
            pol = _POLARITY_CODES.get(pol, pol)
            if pol not in (POSITIVE, NEGATIVE):
                raise LexiconError(f"bad polarity {pol!r} for {term!r}")
            seen[term.lower()].add(pol)
    merged = {t: next(iter(p)) for t, p in seen.items() if len(p) == 1}
    if not merged:
        raise LexiconError("merged lexicon is empty")
    return SentimentLexicon(merged, frozenset(n.lower() for n in negators))


def read_lexicon_table(path: str | Path) -> list[tuple[str, str]]:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or parts[1] not in ("pos", "neg"):
                raise LexiconError(f"{path}:{lineno}: expected 'term<TAB>pos|neg'")
            rows.append((parts[0], parts[1]))
    return rows


def read_word_list(path: str | Path) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return [w.strip() for w in fh if w.strip() and not w.startswith("#")]


def load_lexicon_dir(directory: str | Path) -> SentimentLexicon:
    """Merge every ``*.tsv`` table in ``directory``; negators come from
    ``negators.txt`` when present."""
    directory = Path(directory)
    tables = [read_lexicon_table(p) for p in sorted(directory.glob("*.tsv"))]
    neg_path = directory / NEGATORS_FILE
    negators = read_word_list(neg_path) if neg_path.exists() else []
    return merge_lexicons(tables, negators)


def binarize_sentiwordnet(lines: Iterable[str]) -> list[tuple[str, str]]:
    """Convert SentiWordNet 3.0 rows to a ``(term, pos|neg)`` table.

    Each term's (PosScore - NegScore) is averaged over its senses and kept
    only when the average is strictly nonzero. Multiword lemmas are skipped.
    """
    totals: dict[str, list[float]] = defaultdict(list)
    for line in lines:
        if line.startswith("#") or not line.strip():
            continue
        cols = line.rstrip("\n").split("\t")
        if len(cols) < 5 or not cols[2]:
            continue
        score = float(cols[2]) - float(cols[3])
        for lemma in cols[4].split():
            word = lemma.rsplit("#", 1)[0].lower()
            if "_" in word or "-" in word:
                continue
            totals[word].append(score)
    out = []
    for word in sorted(totals):
        mean = sum(totals[word]) / len(totals[word])
        if mean > 0:
            out.append((word, "pos"))
        elif mean < 0:
            out.append((word, "neg"))
    return out


def token_polarities(tokens: Sequence[str], lex: SentimentLexicon, window: int = 5) -> list[str]:
    """Effective polarity of every sentiment token, in order.

    A negator reverses the first sentiment token that follows it within
    ``window`` tokens; a reversed token is reversed once only, however many
    negators precede it.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    out = []
    pending = None  # index of the most recent unconsumed negator
    for i, tok in enumerate(tokens):
        tok = tok.lower()
        if tok in lex.negators:
            pending = i
            continue
        pol = lex.polarity.get(tok)
        if pol is None:
            continue
        if pending is not None and i - pending <= window:
            pol = NEGATIVE if pol == POSITIVE else POSITIVE
        pending = None
        out.append(pol)
    return out


def sentence_polarity(tokens, lex: SentimentLexicon, window: int = 5) -> PolarityLabel:
    tokens = getattr(tokens, "tokens", tokens)
    pols = token_polarities(tokens, lex, window)
    pos = sum(p == POSITIVE for p in pols)
    return PolarityLabel.from_counts(pos, len(pols) - pos)


def sentiment_word_count(tokens: Sequence[str], lex: SentimentLexicon) -> int:
    return sum(1 for t in tokens if t.lower() in lex.polarity and t.lower() not in lex.negators)
