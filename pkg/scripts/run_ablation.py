"""Run the dispersion x content similarity x dissimilarity grid on a corpus
and write the cells plus a text table.

    python scripts/run_ablation.py [--config CONF] [--corpus FILE] [--out-dir DIR]

Defaults to the bundled synthetic corpus at desk-scale settings.
"""

import argparse
import logging
from pathlib import Path

from subopinion.harness import cli
from subopinion.harness.config import data_path


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--config", default=str(data_path("synthetic.conf")))
    ap.add_argument("--corpus")
    ap.add_argument("--out-dir", default="ablation_out")
    args = ap.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    argv = ["--log-level", "INFO", "ablate", "--config", args.config,
            "--out", str(out / "cells.jsonl"), "--table", str(out / "table.txt")]
    if args.corpus:
        argv += ["--corpus", args.corpus]
    logging.getLogger().setLevel(logging.INFO)
    raise SystemExit(cli.main(argv))


if __name__ == "__main__":
    main()
