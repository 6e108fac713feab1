"""Thread ingestion, sentence splitting, tokenization and TFIDF statistics."""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from sklearn.feature_extraction.text import ENGLISH_STOP_WORDS

STOPWORDS = frozenset(ENGLISH_STOP_WORDS)
GENRES = ("qa", "blog")
ANONYMOUS = "<anon>"

# filter thresholds for community QA threads
MIN_ANSWERS = 5
MIN_MEAN_ANSWER_WORDS = 20

_TOKEN_RE = re.compile(r"[^\W_]+")
_BOUNDARY_RE = re.compile(r"[.?!]+[\"')\]]*(?=\s+[\"'(\[]?[A-Z0-9])")
ABBREVIATIONS = frozenset(
    "mr mrs ms dr prof sr jr st vs etc inc ltd co corp dept gen gov sen rep "
    "rev mt ft approx eg ie e.g i.e u.s".split()
)


class IngestError(ValueError):
    """Raised for malformed input records; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Answer:
    author: str
    position: int
    text: str
    is_best: bool = False


@dataclass(frozen=True)
class Thread:
    id: str
    query: str
    candidates: tuple[Answer, ...]
    genre: str = "qa"
    category: str | None = None
    references: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.id:
            raise IngestError("thread id must be nonempty")
        if not self.candidates:
            raise IngestError(f"thread {self.id!r} has no answers")
        if self.genre not in GENRES:
            raise IngestError(f"unknown genre {self.genre!r}")
        if sum(a.is_best for a in self.candidates) > 1:
            raise IngestError(f"thread {self.id!r} has more than one best answer")

    @property
    def best_index(self) -> int | None:
        for i, a in enumerate(self.candidates):
            if a.is_best:
                return i
        return None


@dataclass(frozen=True)
class Sentence:
    id: int
    thread_id: str
    answer_index: int
    author: str
    tokens: tuple[str, ...]
    raw: str

    @property
    def word_count(self) -> int:
        return len(self.tokens)

    @property
    def char_count_nonwhite(self) -> int:
        return sum(1 for ch in self.raw if not ch.isspace())


def tokenize(text: str) -> list[str]:
    """Lowercase and split on non-alphanumerics."""
    return _TOKEN_RE.findall(text.lower())


def content_tokens(tokens: Iterable[str], stopwords: frozenset[str] = STOPWORDS) -> list[str]:
    return [t for t in tokens if t not in stopwords]


def bigrams(tokens: Sequence[str]) -> list[str]:
    return [f"{a} {b}" for a, b in zip(tokens, tokens[1:])]


# --------------------------------------------------------------------------
# ingestion


def _parse_record(record: object, line: int, default_genre: str | None) -> Thread:
    if not isinstance(record, dict):
        raise IngestError("record is not an object", line)
    try:
        tid = record["id"]
        query = record["query"]
        answers = record["answers"]
    except KeyError as exc:
        raise IngestError(f"missing field {exc.args[0]!r}", line) from None
    genre = record.get("genre") or default_genre or "qa"
    if not isinstance(tid, str) or not isinstance(query, str) or not isinstance(answers, list):
        raise IngestError("fields id/query/answers have the wrong type", line)
    candidates = []
    for pos, ans in enumerate(answers):
        if not isinstance(ans, dict) or not isinstance(ans.get("text"), str):
            raise IngestError(f"answer {pos} must be an object with a text field", line)
        author = ans.get("author") or f"{ANONYMOUS}{pos}"
        candidates.append(Answer(str(author), pos, ans["text"], bool(ans.get("is_best", False))))
    refs = record.get("references", [])
    if not isinstance(refs, list) or not all(isinstance(r, str) for r in refs):
        raise IngestError("references must be a list of strings", line)
    try:
        return Thread(
            id=tid,
            query=query,
            candidates=tuple(candidates),
            genre=genre,
            category=record.get("category"),
            references=tuple(refs),
        )
    except IngestError as exc:
        raise IngestError(str(exc), line) from None


def passes_qa_filter(thread: Thread) -> bool:
    n = len(thread.candidates)
    if n < MIN_ANSWERS:
        return False
    mean_len = sum(len(a.text.split()) for a in thread.candidates) / n
    return mean_len > MIN_MEAN_ANSWER_WORDS


def ingest(path: str | Path, genre: str | None = None, filter_qa: bool = False) -> list[Thread]:
    """Read line-delimited thread records.

    Blank lines are skipped. A malformed line aborts with an ``IngestError``
    naming its line number. With ``filter_qa`` set, qa threads with fewer
    than 5 answers or a mean answer length of at most 20 words are dropped.
    """
    threads = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise IngestError(f"invalid JSON ({exc.msg})", lineno) from None
            thread = _parse_record(record, lineno, genre)
            if filter_qa and thread.genre == "qa" and not passes_qa_filter(thread):
                continue
            threads.append(thread)
    return threads


def thread_to_record(thread: Thread) -> dict:
    record = {
        "id": thread.id,
        "query": thread.query,
        "genre": thread.genre,
        "answers": [
            {"author": a.author, "text": a.text, "is_best": a.is_best} for a in thread.candidates
        ],
    }
    if thread.category is not None:
        record["category"] = thread.category
    if thread.references:
        record["references"] = list(thread.references)
    return record


def dump_threads(threads: Iterable[Thread], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for t in threads:
            fh.write(json.dumps(thread_to_record(t), ensure_ascii=False) + "\n")


def sentence_to_record(s: Sentence) -> dict:
    return {
        "sentence_id": s.id,
        "thread_id": s.thread_id,
        "answer_index": s.answer_index,
        "author": s.author,
        "raw": s.raw,
    }


# --------------------------------------------------------------------------
# sentence splitting


def split_text(text: str) -> list[str]:
    """Rule-based splitter: terminal punctuation followed by whitespace and
    an uppercase letter or digit, unless the preceding word is a known
    abbreviation or a single initial."""
    pieces = []
    start = 0
    for m in _BOUNDARY_RE.finditer(text):
        end = m.end()
        head = text[start:m.start()]
        last = head.split()[-1].lower() if head.split() else ""
        if m.group().startswith(".") and len(m.group().rstrip("\"')]")) == 1:
            word = last.strip("\"'([")
            if word in ABBREVIATIONS or (len(word) == 1 and word.isalpha()):
                continue
        pieces.append(text[start:end].strip())
        start = end
    tail = text[start:].strip()
    if tail:
        pieces.append(tail)
    return [p for p in pieces if p]


def sentence_split(thread: Thread) -> list[Sentence]:
    """Split every answer of ``thread`` into sentences with thread-local ids.

    Sentences with no tokens are dropped; ids stay contiguous.
    """
    out = []
    for ai, answer in enumerate(thread.candidates):
        for raw in split_text(answer.text):
            toks = tuple(tokenize(raw))
            if not toks:
                continue
            out.append(Sentence(len(out), thread.id, ai, answer.author, toks, raw))
    return out


# --------------------------------------------------------------------------
# term statistics


@dataclass(frozen=True)
class CorpusStats:
    vocabulary: Mapping[str, int]
    document_frequency: Mapping[str, int]
    n_documents: int
    background_unigram: Mapping[str, float]
    n_tokens: int = 0

    def idf(self, term: str) -> float:
        df = self.document_frequency.get(term, 0)
        return math.log((1 + self.n_documents) / (1 + df))

    def count(self, term: str) -> float:
        """Background token count of ``term`` (probability times corpus size)."""
        return self.background_unigram.get(term, 0.0) * self.n_tokens


def build_stats(documents: Iterable[Sequence[str]]) -> CorpusStats:
    """Document frequencies (unigrams and bigrams) plus the unigram
    distribution over all tokens of ``documents``."""
    df: Counter[str] = Counter()
    unigram: Counter[str] = Counter()
    n_docs = 0
    for doc in documents:
        n_docs += 1
        unigram.update(doc)
        df.update(set(doc))
        df.update(set(bigrams(doc)))
    total = sum(unigram.values())
    vocab = {t: i for i, t in enumerate(sorted(unigram))}
    background = {t: c / total for t, c in unigram.items()} if total else {}
    return CorpusStats(vocab, dict(df), n_docs, background, total)


@dataclass(frozen=True)
class TermVector:
    weights: Mapping[str, float]
    norm: float = field(init=False)
    sq_norm: float = field(init=False, repr=False)

    def __post_init__(self):
        clean = {t: float(w) for t, w in self.weights.items() if w != 0}
        if any(w < 0 for w in clean.values()):
            raise ValueError("term weights must be nonnegative")
        object.__setattr__(self, "weights", clean)
        sq = sum(w * w for w in clean.values())
        object.__setattr__(self, "sq_norm", sq)
        object.__setattr__(self, "norm", math.sqrt(sq))

    def __len__(self):
        return len(self.weights)


def tfidf_vector(
    tokens: Sequence[str] | Sentence | str,
    stats: CorpusStats,
    ngram: str = "uni",
    scheme: str = "tfidf",
) -> TermVector:
    """TF or TF-IDF weighted bag of unigrams or bigrams.

    ``tokens`` may be a token sequence, a ``Sentence`` or raw text (the
    query). IDF is the smoothed ``ln((1+N)/(1+df))``.
    """
    if isinstance(tokens, Sentence):
        tokens = tokens.tokens
    elif isinstance(tokens, str):
        tokens = tokenize(tokens)
    if ngram == "uni":
        terms = list(tokens)
    elif ngram == "bi":
        terms = bigrams(tokens)
    else:
        raise ValueError(f"ngram must be 'uni' or 'bi', got {ngram!r}")
    tf = Counter(terms)
    if scheme == "tf":
        return TermVector(dict(tf))
    if scheme == "tfidf":
        return TermVector({t: c * stats.idf(t) for t, c in tf.items()})
    raise ValueError(f"scheme must be 'tf' or 'tfidf', got {scheme!r}")


def thread_documents(thread: Thread, sentences: Sequence[Sentence] | None = None) -> list[list[str]]:
    """IDF documents for a thread: answers for qa, sentences for blog."""
    if thread.genre == "qa":
        return [tokenize(a.text) for a in thread.candidates]
    sentences = sentence_split(thread) if sentences is None else sentences
    return [list(s.tokens) for s in sentences]
