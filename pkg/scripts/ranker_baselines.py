"""Best-answer prediction on a qa corpus: trained ranker against the
random, length and JSD baselines.

    python scripts/ranker_baselines.py [--config CONF] [--corpus FILE]
"""

import argparse
import json

from subopinion.harness.config import data_path, load_config
from subopinion.harness.pipeline import load_corpus, ranker_report, train_ranker
from subopinion.lexicon import load_lexicon_dir


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--config", default=str(data_path("synthetic.conf")))
    ap.add_argument("--corpus")
    args = ap.parse_args()
    cfg = load_config(args.config)
    if args.corpus:
        cfg = cfg.replace(corpus=args.corpus)
    threads = load_corpus(cfg)
    lex = load_lexicon_dir(cfg.resolved("lexicon_dir"))
    rows = {"listnet": ranker_report(threads, lex, train_ranker(threads, lex, cfg))}
    for kind in ("random", "length", "jsd"):
        rows[kind] = ranker_report(threads, baseline=kind, seed=cfg.seed)
    for name, (p1, mrr) in rows.items():
        print(json.dumps({"ranker": name, "p_at_1": round(p1, 4), "mrr": round(mrr, 4)}))


if __name__ == "__main__":
    main()
