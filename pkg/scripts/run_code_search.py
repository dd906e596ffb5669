#!/usr/bin/env python3
"""Run the full 10,000-sample random code search at (p=0.01, eta=100).

Writes results/search.json ranked by logical error rate.  Takes on the
order of ten minutes single-threaded; pass --samples for a quicker look.
"""
import argparse
import pathlib
import sys

from smallqec.cli import main as cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results/search.json")
    parser.add_argument("--samples", type=int, default=10_000)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--p", default="0.01")
    parser.add_argument("--eta", default="100")
    args = parser.parse_args()
    pathlib.Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    return cli(
        [
            "search",
            "--samples", str(args.samples),
            "--seed", str(args.seed),
            "--p", args.p,
            "--eta", args.eta,
            "--out", args.out,
        ]
    )


if __name__ == "__main__":
    sys.exit(main())
