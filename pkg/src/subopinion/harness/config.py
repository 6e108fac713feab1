"""Flat ``key = value`` run configuration."""

from __future__ import annotations

import dataclasses
import hashlib
import json
from dataclasses import dataclass, fields
from importlib import resources
from pathlib import Path

from ..objective import ObjectiveSpec
from ..summarizer import Budget


class ConfigError(ValueError):
    pass


def data_path(name: str) -> Path:
    """Path of a file bundled under ``subopinion/data``."""
    return Path(str(resources.files("subopinion").joinpath("data").joinpath(name)))


@dataclass(frozen=True)
class RunConfig:
    # inputs; empty paths resolve to the bundled data
    corpus: str = ""
    genre: str = ""
    filter_qa: bool = False
    lexicon_dir: str = ""
    synset_graph: str = ""
    lda_model: str = ""
    ranker_model: str = ""
    seed: int = 0
    # topic model
    topics: int = 100
    lda_iters: int = 1000
    lda_infer_iters: int = 50
    lda_alpha: float = 0.0  # 0 means 50 / topics
    lda_beta: float = 0.01
    lda_by_category: bool = True
    # ranker
    ranker_epochs: int = 1500
    ranker_lr: float = 1e-5
    # lexicon / similarity
    polarity_window: int = 5
    max_path: int = 6
    # objective
    alpha: float = 5.0
    beta: float = 1.0
    gamma: float = 10.0
    eta: float = 5.0
    delta: float = 10.0
    theta: float = 0.1
    dispersion: str = "sum"
    dissimilarity: str = "lexical"
    content_sim: str = "tfidf"
    # budget: exactly one of the two is used; chars wins when positive
    budget_words: int = 100
    budget_chars: int = 0
    # ablation grid
    grid_dispersion: str = "sum,min"
    grid_content_sim: str = "tfidf,semantic"
    grid_dissimilarity: str = "lexical,topical,semantic"

    def __post_init__(self):
        self.objective_spec()  # validates coefficients and enum values
        self.budget()
        if self.topics < 2:
            raise ConfigError("topics must be >= 2")

    def objective_spec(self, **overrides) -> ObjectiveSpec:
        kw = {k: getattr(self, k) for k in ("alpha", "beta", "gamma", "eta", "delta", "theta",
                                            "dispersion", "dissimilarity", "content_sim")}
        kw.update(overrides)
        try:
            return ObjectiveSpec(**kw)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def budget(self) -> Budget:
        try:
            if self.budget_chars > 0:
                return Budget("nonwhite_chars", self.budget_chars)
            return Budget("words", self.budget_words)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def grid(self) -> list[tuple[str, str, str]]:
        def split(v):
            return [x.strip() for x in v.split(",") if x.strip()]

        return [
            (d, c, k)
            for d in split(self.grid_dispersion)
            for c in split(self.grid_content_sim)
            for k in split(self.grid_dissimilarity)
        ]

    def resolved(self, name: str) -> Path:
        defaults = {
            "corpus": "synthetic_threads.jsonl",
            "lexicon_dir": "lexicon",
            "synset_graph": "synsets.tsv",
        }
        value = getattr(self, name)
        return Path(value) if value else data_path(defaults[name])

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def digest(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def dumps(self) -> str:
        return "\n".join(f"{k} = {v}" for k, v in self.to_dict().items())

    def replace(self, **changes) -> "RunConfig":
        unknown = set(changes) - {f.name for f in fields(self)}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return dataclasses.replace(self, **changes)


def _convert(raw: str, typ: type, key: str):
    try:
        if typ is bool:
            low = raw.lower()
            if low in ("1", "true", "yes", "on"):
                return True
            if low in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
        return typ(raw)
    except ValueError:
        raise ConfigError(f"bad value for {key}: {raw!r}") from None


_FIELD_TYPES = {f.name: type(f.default) for f in fields(RunConfig)}


def parse_config(text: str, base: RunConfig | None = None) -> RunConfig:
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, raw = (x.strip() for x in line.split("=", 1))
        if key not in _FIELD_TYPES:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        values[key] = _convert(raw, _FIELD_TYPES[key], key)
    return (base or RunConfig()).replace(**values)


def load_config(path: str | Path | None) -> RunConfig:
    if path is None:
        return RunConfig()
    return parse_config(Path(path).read_text(encoding="utf-8"))
