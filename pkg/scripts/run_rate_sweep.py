#!/usr/bin/env python3
"""Sweep logical error rates over total error probability at fixed biases.

Writes results/rate_sweep.csv with p log-spaced over [1e-4, 0.1] at
eta in {1, 100}, the input for the rate-sweep plot mode.
"""
import argparse
import pathlib
import sys

import numpy as np

from smallqec.cli import main as cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results/rate_sweep.csv")
    parser.add_argument("--codes", default="steane,cyclic7")
    parser.add_argument("--eta", default="1,100")
    parser.add_argument("--points", type=int, default=13)
    args = parser.parse_args()
    grid = np.logspace(-4, -1, args.points)
    pathlib.Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    return cli(
        [
            "sweep",
            "--codes", args.codes,
            "--p", ",".join(repr(float(p)) for p in grid),
            "--eta", args.eta,
            "--out", args.out,
        ]
    )


if __name__ == "__main__":
    sys.exit(main())
