"""Command-line driver wiring codes, channels, decoding, ingestion and search.

Every command is deterministic given its flags: grids are evaluated in
sorted order, search candidates are seeded by counter, and floats are
written in shortest round-trip form, so repeated invocations produce
byte-identical files.

Exit codes: 0 success, 2 usage error (bad flags or flag values), 3 data or
validation error (bad files, unknown codes, constraint violations).
"""

from __future__ import annotations

import argparse
import json
import sys

from .channel import (
    ChannelError,
    EXTRAPOLATIONS,
    PauliChannel,
    iid_biased,
    load_channel,
)
from .code import BUILTIN_CODES, CodeError, StabilizerCode, distance, resolve_code
from .decoder import DecoderError, logical_error_rate, optimal_decoder, save_table
from .ingest import IngestError, load_estimate, pauli_twirl_with_report
from .search import SearchConfig, SearchError, run_search, save_result

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3

DEFAULT_P_GRID = (0.001, 0.01)
DEFAULT_ETA_GRID = (1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0, 500.0, 1000.0)


def _probability(text: str) -> float:
    value = float(text)
    if not 0.0 <= value < 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1), got {text}")
    return value


def _positive(text: str) -> float:
    value = float(text)
    if not value > 0.0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _grid(element):
    def parse(text: str) -> tuple:
        items = [piece for piece in text.split(",") if piece != ""]
        if not items:
            raise argparse.ArgumentTypeError("grid must be non-empty")
        return tuple(element(piece) for piece in items)

    return parse


def _code_list(text: str) -> tuple[str, ...]:
    labels = [piece for piece in text.split(",") if piece != ""]
    if not labels:
        raise argparse.ArgumentTypeError("need at least one code")
    return tuple(labels)


def _fmt(value: float) -> str:
    return repr(float(value))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smallqec",
        description="Exact decoding workbench for small stabilizer codes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    names = ", ".join(sorted(BUILTIN_CODES))

    ev = sub.add_parser(
        "eval", help="print the logical error rate of one code under one channel"
    )
    ev.add_argument("--code", required=True, help=f"built-in name ({names}) or code file")
    src = ev.add_mutually_exclusive_group(required=True)
    src.add_argument("--p", type=_probability, help="total error probability")
    src.add_argument("--channel-file", help="Pauli-probability JSON instead of --p/--eta")
    ev.add_argument("--eta", type=_positive, default=1.0, help="bias (default 1)")
    ev.add_argument("--table-out", help="also export the decoder table as JSON")
    ev.set_defaults(func=cmd_eval)

    sw = sub.add_parser("sweep", help="rate CSV over a (code, p, eta) grid")
    sw.add_argument(
        "--codes",
        type=_code_list,
        default=("steane", "cyclic7"),
        help="comma-separated code names or files (default steane,cyclic7)",
    )
    sw.add_argument(
        "--p",
        type=_grid(_probability),
        default=DEFAULT_P_GRID,
        help="comma-separated total error probabilities (default 0.001,0.01)",
    )
    sw.add_argument(
        "--eta",
        type=_grid(_positive),
        default=DEFAULT_ETA_GRID,
        help="comma-separated biases (default 1,2,5,10,20,50,100,200,500,1000)",
    )
    sw.add_argument("--out", required=True, help="output CSV path")
    sw.set_defaults(func=cmd_sweep)

    se = sub.add_parser("search", help="random code search ranked by rate")
    se.add_argument("--samples", type=int, default=10_000, help="codes to draw")
    se.add_argument("--seed", type=int, default=0, help="master seed")
    ssrc = se.add_mutually_exclusive_group(required=True)
    ssrc.add_argument("--p", type=_probability, help="total error probability")
    ssrc.add_argument("--channel-file", help="Pauli-probability JSON for n=7")
    se.add_argument("--eta", type=_positive, default=1.0, help="bias (default 1)")
    se.add_argument("--max-weight", type=int, default=4, help="generator weight cap")
    se.add_argument("--min-distance", type=int, default=3, help="distance floor")
    se.add_argument("--dedup", action="store_true", help="drop group duplicates")
    se.add_argument(
        "--include-low-weight",
        action="store_true",
        help="also draw generators with support below 3",
    )
    se.add_argument(
        "--redraw-per-channel",
        action="store_true",
        help="mix the channel into the candidate seeds instead of reusing one pool",
    )
    se.add_argument("--out", help="write the ranked results as JSON")
    se.set_defaults(func=cmd_search)

    ing = sub.add_parser("ingest", help="twirl PTM estimates, extrapolate, rate CSV")
    ing.add_argument("--ptm", nargs="+", required=True, help="estimate files")
    ing.add_argument(
        "--extrapolation",
        choices=sorted(EXTRAPOLATIONS),
        default="convex",
        help="2-qubit to 7-qubit lift (default convex)",
    )
    ing.add_argument(
        "--codes",
        type=_code_list,
        default=("steane", "cyclic7"),
        help="comma-separated code names or files (default steane,cyclic7)",
    )
    ing.add_argument("--out", required=True, help="output CSV path")
    ing.add_argument(
        "--skip-bad",
        action="store_true",
        help="skip estimates the sanitizer rejects instead of aborting",
    )
    ing.add_argument(
        "--clip-bound",
        type=_positive,
        default=0.05,
        help="largest negative mass the sanitizer may clip (default 0.05)",
    )
    ing.set_defaults(func=cmd_ingest)

    co = sub.add_parser("codes", help="inspect built-in codes")
    cosub = co.add_subparsers(dest="codes_command", required=True)
    show = cosub.add_parser("show", help="print a code's derived data")
    show.add_argument("label", help=f"built-in name ({names}) or code file")
    show.set_defaults(func=cmd_codes_show)

    return parser


def _codes_for(labels: tuple[str, ...]) -> list[StabilizerCode]:
    codes = []
    seen = set()
    for label in labels:
        code = resolve_code(label)
        name = code.label or label
        if name in seen:
            raise CodeError(f"duplicate code label {name!r}")
        seen.add(name)
        codes.append(code)
    return sorted(codes, key=lambda c: c.label)


def _channel_from_args(args, n: int) -> PauliChannel:
    if args.channel_file is not None:
        ch = load_channel(args.channel_file)
        if ch.n != n:
            raise ChannelError(
                f"{args.channel_file}: channel has n={ch.n}, expected n={n}"
            )
        return ch
    return iid_biased(n, args.p, args.eta)


def cmd_eval(args) -> int:
    code = resolve_code(args.code)
    ch = _channel_from_args(args, code.n)
    rate = logical_error_rate(code, ch)
    if args.table_out:
        save_table(optimal_decoder(code, ch), args.table_out)
    print(f"{rate:.17g}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    codes = _codes_for(args.codes)
    rows = []
    for code in codes:
        for p in sorted(args.p):
            for eta in sorted(args.eta):
                rate = logical_error_rate(code, iid_biased(code.n, p, eta))
                rows.append(f"{code.label},{_fmt(p)},{_fmt(eta)},{_fmt(rate)}\n")
    with open(args.out, "w", encoding="utf-8") as f:
        f.write("code,p,eta,logical_error_rate\n")
        f.writelines(rows)
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def cmd_search(args) -> int:
    if args.samples < 1:
        raise _UsageError("--samples must be at least 1")
    config = SearchConfig(
        num_samples=args.samples,
        max_generator_weight=args.max_weight,
        min_distance=args.min_distance,
        seed=args.seed,
        dedup=args.dedup,
        include_low_weight=args.include_low_weight,
    )
    ch = _channel_from_args(args, config.n)
    result = run_search(config, ch, redraw_per_channel=args.redraw_per_channel)
    best_code, best_rate = result.ranked[0]
    print(f"best rate: {best_rate:.17g}")
    print("best generators: " + " ".join(str(g) for g in best_code.generators))
    print(f"retained: {len(result.ranked)} of {config.num_samples} samples")
    rej = result.rejections.as_dict()
    print("rejections: " + " ".join(f"{k}={v}" for k, v in rej.items()))
    sizes = ",".join(str(s) for s in config.support_sizes)
    print(
        f"sampler: generator support sizes {{{sizes}}}"
        + ("" if args.include_low_weight else " (low-weight draws excluded)")
    )
    if args.out:
        save_result(result, args.out)
        print(f"wrote {len(result.ranked)} results to {args.out}")
    return EXIT_OK


def _load_pair_channel(path: str, clip_bound: float):
    """A (2-qubit channel, tau_ms, label) triple from a PTM or probability file."""
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    if isinstance(data, dict) and "ptm" in data:
        est = load_estimate(path)
        ch, report = pauli_twirl_with_report(est, clip_bound=clip_bound)
        if report.clipped_mass > 1e-12:
            print(
                f"note: {path}: clipped {report.clipped_mass:.3g}"
                " negative twirl mass",
                file=sys.stderr,
            )
        return ch, est.tau_ms, est.label
    ch = load_channel(path)
    if ch.n != 2:
        raise IngestError(f"{path}: pair channel must have n=2, got n={ch.n}")
    tau = data.get("tau_ms", 0.0) if isinstance(data, dict) else 0.0
    label = data.get("label", "") if isinstance(data, dict) else ""
    return ch, float(tau), str(label)


def cmd_ingest(args) -> int:
    codes = _codes_for(args.codes)
    extrapolate = EXTRAPOLATIONS[args.extrapolation]
    loaded = []
    for path in args.ptm:
        try:
            pair, tau, label = _load_pair_channel(path, args.clip_bound)
        except (IngestError, ChannelError) as exc:
            if args.skip_bad:
                print(f"skipping {path}: {exc}", file=sys.stderr)
                continue
            raise
        loaded.append((tau, path, pair, label))
    if not loaded:
        raise IngestError("no usable estimates")
    loaded.sort(key=lambda item: item[0])
    rows = []
    for tau, _path, pair, _label in loaded:
        big = extrapolate(pair)
        for code in codes:
            rate = logical_error_rate(code, big)
            rows.append(
                f"{code.label},{_fmt(tau)},{args.extrapolation},{_fmt(rate)}\n"
            )
    with open(args.out, "w", encoding="utf-8") as f:
        f.write("code,tau_ms,extrapolation,logical_error_rate\n")
        f.writelines(rows)
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def cmd_codes_show(args) -> int:
    code = resolve_code(args.label)
    print(f"{code.label or args.label} [[{code.n},{code.k}]] distance {distance(code)}")
    print("generators:")
    for g in code.generators:
        print(f"  {g}")
    print(f"logical_x: {code.logical_x}")
    print(f"logical_z: {code.logical_z}")
    print("destabilizers:")
    for d in code.destabilizers:
        print(f"  {d}")
    return EXIT_OK


class _UsageError(Exception):
    pass


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CodeError, ChannelError, DecoderError, IngestError, SearchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
