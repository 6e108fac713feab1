"""dispersion x content similarity x dissimilarity grid runner."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from ..corpus import Thread
from .config import RunConfig
from .metrics import MetricsReport, aggregate
from .pipeline import PreparedThread, Resources, evaluate_summary, prepare_thread, summarize_prepared

log = logging.getLogger(__name__)


class AblationError(RuntimeError):
    pass


@dataclass
class AblationCell:
    dispersion: str
    content_sim: str
    dissimilarity: str
    report: MetricsReport
    per_thread: list[MetricsReport]

    @property
    def key(self) -> str:
        return f"{self.dispersion}/{self.content_sim}/{self.dissimilarity}"

    def to_dict(self, config_hash: str = "") -> dict:
        return {
            "dispersion": self.dispersion,
            "content_sim": self.content_sim,
            "dissimilarity": self.dissimilarity,
            "aggregate": self.report.to_dict(),
            "threads": [r.to_dict() for r in self.per_thread],
            "config_hash": config_hash,
        }


def run_ablation(
    threads: Sequence[Thread],
    res: Resources,
    config: RunConfig,
    prepared: Sequence[PreparedThread] | None = None,
) -> list[AblationCell]:
    """Summarize and evaluate every thread once per grid cell.

    Thread preparation (ranks, topic assignments, pairwise matrices) is
    shared across cells, so every cell sees the same seeded inputs.
    """
    prepared = list(prepared) if prepared is not None else [prepare_thread(t, res) for t in threads]
    budget = config.budget()
    cells = []
    for dispersion, content_sim, dissim in config.grid():
        key = f"{dispersion}/{content_sim}/{dissim}"
        try:
            spec = config.objective_spec(dispersion=dispersion, content_sim=content_sim, dissimilarity=dissim)
            reports = []
            for p in prepared:
                summary = summarize_prepared(p, spec, budget)
                reports.append(evaluate_summary(p.thread, p.sentences, summary))
        except Exception as exc:
            raise AblationError(f"ablation cell {key} failed: {exc}") from exc
        cell = AblationCell(dispersion, content_sim, dissim, aggregate(reports), reports)
        log.info("cell %s: jsd=%s", key, cell.report.jsd)
        cells.append(cell)
    return cells


def _metric(report: MetricsReport) -> str:
    if report.rouge2 is not None:
        return f"{report.rouge2[2]:.4f}"
    return "-" if report.jsd is None else f"{report.jsd:.4f}"


def format_table(cells: Sequence[AblationCell]) -> str:
    """Rows are dissimilarities, columns dispersion x content similarity.
    Cells show ROUGE-2 F1 when references exist, JSD otherwise."""
    cols = []
    rows = []
    for c in cells:
        if (c.dispersion, c.content_sim) not in cols:
            cols.append((c.dispersion, c.content_sim))
        if c.dissimilarity not in rows:
            rows.append(c.dissimilarity)
    lookup = {(c.dispersion, c.content_sim, c.dissimilarity): c for c in cells}
    header = ["dissimilarity"] + [f"{d}/{cs}" for d, cs in cols]
    lines = [" | ".join(header)]
    for r in rows:
        vals = [_metric(lookup[(d, cs, r)].report) if (d, cs, r) in lookup else "" for d, cs in cols]
        lines.append(" | ".join([r] + vals))
    return "\n".join(lines)
