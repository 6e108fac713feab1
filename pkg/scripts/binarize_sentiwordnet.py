"""Turn a SentiWordNet 3.0 dump into a two-column lexicon table.

    python scripts/binarize_sentiwordnet.py SentiWordNet_3.0.txt > lexicon/sentiwordnet.tsv

A word is positive when its PosScore - NegScore averaged over senses is
above zero and negative when below; words averaging exactly zero are left
out. Drop the output next to the other tables in a lexicon directory.
"""

import sys

from subopinion.lexicon import binarize_sentiwordnet


def main():
    if len(sys.argv) != 2:
        sys.exit(__doc__)
    with open(sys.argv[1], encoding="utf-8") as fh:
        for term, pol in binarize_sentiwordnet(fh):
            print(f"{term}\t{pol}")


if __name__ == "__main__":
    main()
