#!/usr/bin/env python3
"""Evaluate the tau-series fixtures under all three pair-channel lifts.

Runs ingest once per extrapolation over the synthetic dephasing fixtures
and concatenates the rows into results/extrapolation_comparison.csv, a
tau-sweep plot input covering convex, convex-product and product.
"""
import argparse
import pathlib
import sys

from smallqec.cli import main as cli

FIXTURES = ("ptm_dephasing_tau010.json", "ptm_dephasing_tau040.json", "ptm_dephasing_tau120.json")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results/extrapolation_comparison.csv")
    parser.add_argument("--codes", default="steane,cyclic7")
    parser.add_argument(
        "--fixtures-dir",
        default=str(pathlib.Path(__file__).parent.parent / "fixtures"),
    )
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    files = [str(pathlib.Path(args.fixtures_dir) / name) for name in FIXTURES]
    lines = ["code,tau_ms,extrapolation,logical_error_rate\n"]
    for extrapolation in ("convex", "convex-product", "product"):
        part = out.with_suffix(f".{extrapolation}.csv")
        status = cli(
            [
                "ingest",
                "--ptm", *files,
                "--extrapolation", extrapolation,
                "--codes", args.codes,
                "--out", str(part),
            ]
        )
        if status != 0:
            return status
        lines.extend(part.read_text(encoding="utf-8").splitlines(keepends=True)[1:])
        part.unlink()
    out.write_text("".join(lines), encoding="utf-8")
    print(f"wrote {len(lines) - 1} rows to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
