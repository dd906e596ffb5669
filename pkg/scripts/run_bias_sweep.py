#!/usr/bin/env python3
"""Sweep logical error rates over the bias grid for the built-in 7-qubit codes.

Writes results/bias_sweep.csv, the input for the bias-sweep plot mode.
"""
import argparse
import pathlib
import sys

from smallqec.cli import main as cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results/bias_sweep.csv")
    parser.add_argument("--codes", default="steane,cyclic7")
    parser.add_argument("--p", default="0.001,0.01")
    parser.add_argument("--eta", default="1,2,5,10,20,50,100,200,500,1000")
    args = parser.parse_args()
    pathlib.Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    return cli(
        [
            "sweep",
            "--codes", args.codes,
            "--p", args.p,
            "--eta", args.eta,
            "--out", args.out,
        ]
    )


if __name__ == "__main__":
    sys.exit(main())
