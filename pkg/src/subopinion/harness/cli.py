"""Command line entry point: ``subopinion <verb> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from ..corpus import dump_threads, ingest, sentence_split, sentence_to_record
from ..lexicon import load_lexicon_dir
from ..ranker import load_rank_model, save_rank_model
from ..summarizer import Summary, render_summary
from ..topics import save_topic_models
from .ablation import format_table, run_ablation
from .config import ConfigError, RunConfig, load_config, parse_config
from .metrics import aggregate
from .pipeline import (
    evaluate_summary,
    load_corpus,
    load_resources,
    prepare_thread,
    ranker_report,
    summarize_prepared,
    train_lda_models,
    train_ranker,
)

log = logging.getLogger("subopinion")


def _write_jsonl(path: str | Path, records) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for r in records:
            fh.write(json.dumps(r, ensure_ascii=False) + "\n")


def _read_jsonl(path: str | Path) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


def resolve_config(args) -> RunConfig:
    cfg = load_config(args.config)
    overrides = "\n".join(args.set or [])
    if overrides:
        cfg = parse_config(overrides, cfg)
    flag_map = {
        "corpus": "corpus",
        "lexicon_dir": "lexicon_dir",
        "lda_model": "lda_model",
        "ranker_model": "ranker_model",
        "topics": "topics",
        "iters": "lda_iters",
        "seed": "seed",
        "epochs": "ranker_epochs",
        "lr": "ranker_lr",
        "genre": "genre",
    }
    changes = {}
    for attr, key in flag_map.items():
        val = getattr(args, attr, None)
        if val is not None:
            changes[key] = val
    if getattr(args, "filter_qa", False):
        changes["filter_qa"] = True
    if getattr(args, "budget_words", None) is not None:
        changes.update(budget_words=args.budget_words, budget_chars=0)
    if getattr(args, "budget_chars", None) is not None:
        changes["budget_chars"] = args.budget_chars
    cfg = cfg.replace(**changes)
    log.info("resolved config (hash %s):\n%s", cfg.digest(), cfg.dumps())
    return cfg


def cmd_ingest(args) -> int:
    threads = ingest(args.path, genre=args.genre, filter_qa=args.filter_qa)
    if args.out:
        dump_threads(threads, args.out)
    n_sent = 0
    if args.emit_sentences:
        records = [sentence_to_record(s) for t in threads for s in sentence_split(t)]
        n_sent = len(records)
        _write_jsonl(args.emit_sentences, records)
    print(f"threads={len(threads)}" + (f" sentences={n_sent}" if args.emit_sentences else ""))
    return 0


def cmd_train_lda(args) -> int:
    cfg = resolve_config(args)
    threads = load_corpus(cfg)
    models = train_lda_models(threads, cfg)
    save_topic_models(models, args.out)
    print(f"trained {len(models)} topic model(s): {', '.join(sorted(models))}")
    return 0


def cmd_train_ranker(args) -> int:
    cfg = resolve_config(args)
    threads = load_corpus(cfg)
    lex = load_lexicon_dir(cfg.resolved("lexicon_dir"))
    model = train_ranker(threads, lex, cfg)
    save_rank_model(model, args.out)
    hist = model.loss_history
    print(f"loss {hist[0]:.6f} -> {hist[-1]:.6f} over {len(hist) - 1} epochs")
    return 0


def cmd_eval_ranker(args) -> int:
    cfg = resolve_config(args)
    threads = load_corpus(cfg)
    if args.baseline:
        p1, mrr = ranker_report(threads, baseline=args.baseline, seed=cfg.seed)
    else:
        lex = load_lexicon_dir(cfg.resolved("lexicon_dir"))
        model = load_rank_model(cfg.ranker_model) if cfg.ranker_model else train_ranker(threads, lex, cfg)
        p1, mrr = ranker_report(threads, lex, model)
    name = args.baseline or "listnet"
    print(json.dumps({"ranker": name, "p_at_1": p1, "mrr": mrr, "config_hash": cfg.digest()}))
    return 0


def cmd_summarize(args) -> int:
    cfg = resolve_config(args)
    threads = load_corpus(cfg)
    res = load_resources(threads, cfg)
    spec, budget = cfg.objective_spec(), cfg.budget()
    out, traces = [], []
    for t in threads:
        p = prepare_thread(t, res)
        summary = summarize_prepared(p, spec, budget)
        out.append({
            "thread_id": t.id,
            "sentence_ids": list(summary.sentence_ids),
            "text": render_summary(summary, p.sentences),
            "objective_value": summary.objective_value,
            "total_cost": summary.total_cost,
            "budget": {"kind": budget.kind, "limit": budget.limit},
            "config_hash": cfg.digest(),
        })
        traces.extend(
            {"thread_id": t.id, "step": i, "candidate": s.candidate, "gain": s.gain, "objective": s.objective}
            for i, s in enumerate(summary.trace)
        )
    _write_jsonl(args.out, out)
    if args.trace:
        _write_jsonl(args.trace, traces)
    print(f"wrote {len(out)} summaries to {args.out}")
    return 0


def cmd_evaluate(args) -> int:
    cfg = resolve_config(args)
    threads = {t.id: t for t in load_corpus(cfg)}
    reports = []
    for rec in _read_jsonl(args.summaries):
        t = threads.get(rec["thread_id"])
        if t is None:
            raise ValueError(f"summary for unknown thread {rec['thread_id']!r}")
        sentences = sentence_split(t)
        summary = Summary(tuple(rec["sentence_ids"]), int(rec.get("total_cost", 0)), rec.get("objective_value"))
        reports.append(evaluate_summary(t, sentences, summary))
    agg = aggregate(reports)
    records = [dict(r.to_dict(), config_hash=cfg.digest(), summaries=str(args.summaries)) for r in reports]
    records.append(dict(agg.to_dict(), config_hash=cfg.digest(), summaries=str(args.summaries)))
    if args.out:
        _write_jsonl(args.out, records)
    print(json.dumps(records[-1]))
    return 0


def cmd_ablate(args) -> int:
    cfg = resolve_config(args)
    threads = load_corpus(cfg)
    res = load_resources(threads, cfg)
    cells = run_ablation(threads, res, cfg)
    _write_jsonl(args.out, [c.to_dict(cfg.digest()) for c in cells])
    table = format_table(cells)
    if args.table:
        Path(args.table).write_text(table + "\n", encoding="utf-8")
    print(table)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subopinion", description=__doc__)
    parser.add_argument("--log-level", default="INFO")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("--config", help="flat key = value config file")
        p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a config key")
        p.add_argument("--corpus", help="line-delimited thread file (default: bundled corpus)")
        p.add_argument("--genre", choices=["qa", "blog"])
        p.add_argument("--filter-qa", action="store_true")
        p.add_argument("--seed", type=int)

    p = sub.add_parser("ingest", help="validate a corpus, optionally emit sentences")
    p.add_argument("path")
    p.add_argument("--genre", choices=["qa", "blog"])
    p.add_argument("--filter-qa", action="store_true")
    p.add_argument("--out", help="write normalized threads here")
    p.add_argument("--emit-sentences", metavar="PATH")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("train-lda", help="train topic model(s)")
    common(p)
    p.add_argument("--topics", type=int)
    p.add_argument("--iters", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train_lda)

    p = sub.add_parser("train-ranker", help="train the ListNet ranker")
    common(p)
    p.add_argument("--lexicon-dir")
    p.add_argument("--epochs", type=int)
    p.add_argument("--lr", type=float)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train_ranker)

    p = sub.add_parser("eval-ranker", help="best-answer prediction metrics")
    common(p)
    p.add_argument("--lexicon-dir")
    p.add_argument("--ranker-model")
    p.add_argument("--baseline", choices=["random", "length", "jsd"])
    p.set_defaults(func=cmd_eval_ranker)

    p = sub.add_parser("summarize", help="greedy summaries for every thread")
    common(p)
    p.add_argument("--lexicon-dir")
    p.add_argument("--lda-model")
    p.add_argument("--ranker-model")
    budget = p.add_mutually_exclusive_group()
    budget.add_argument("--budget-words", type=int)
    budget.add_argument("--budget-chars", type=int)
    p.add_argument("--out", required=True)
    p.add_argument("--trace")
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("evaluate", help="JSD / ROUGE of a summaries file")
    common(p)
    p.add_argument("--summaries", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("ablate", help="run the dispersion x content x dissimilarity grid")
    common(p)
    p.add_argument("--lexicon-dir")
    p.add_argument("--lda-model")
    p.add_argument("--ranker-model")
    p.add_argument("--out", required=True)
    p.add_argument("--table")
    p.set_defaults(func=cmd_ablate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
