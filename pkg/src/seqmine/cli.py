"""Command-line entry points.

Subcommands: ``mine`` (check-ins file -> pattern and report CSVs),
``generate`` (deterministic synthetic check-ins), ``bench`` (both miners
across support levels).  Exit codes: 0 success, 2 configuration error,
3 input error, 4 miner disagreement in bench.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import format_table, run_bench, write_bench_csv
from .checkins import (
    DEFAULT_WINDOWS,
    default_config,
    load_config,
    parse_checkins,
    resolve_timezone,
    run_pipeline,
)
from .errors import FormatError, InvalidConfigError, MinerMismatchError
from .prefixspan import MinerConfig, mine
from .rules import VALID_SORT_KEYS, build_report, write_report_csv, write_report_jsonl
from .spam import mine_spam
from .synth import GeneratorConfig, bms_shape, generate_synthetic, serialize_checkins

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INPUT = 3
EXIT_MISMATCH = 4

_MINERS = {"prefixspan": mine, "spam": mine_spam}


def _min_support(text: str) -> int | float:
    """Integer = absolute count, decimal = fraction of the database."""
    try:
        if "." not in text and "e" not in text.lower():
            value = int(text)
            if value < 1:
                raise argparse.ArgumentTypeError("min-support count must be >= 1")
            return value
        fraction = float(text)
    except argparse.ArgumentTypeError:
        raise
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"min-support must be a count or fraction, got {text!r}"
        )
    if not 0.0 < fraction <= 1.0:
        raise argparse.ArgumentTypeError("min-support fraction must be in (0,1]")
    return fraction


def _support_list(text: str) -> list[int | float]:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise argparse.ArgumentTypeError("need at least one support level")
    return [_min_support(p.strip()) for p in parts]


def _detect_format(path: str, explicit: str | None) -> str:
    if explicit:
        return explicit
    return "jsonl" if Path(path).suffix.lower() in (".jsonl", ".ndjson", ".json") else "csv"


def _load_analysis_config(args) -> tuple:
    """Resolve the activity map and windows from flags or packaged defaults."""
    try:
        if args.activity_map:
            amap, file_windows = load_config(args.activity_map)
        else:
            amap, file_windows = default_config()
        if args.windows:
            _, windows = load_config(args.windows)
            if not windows:
                raise InvalidConfigError(
                    f"--windows: {args.windows} defines no windows"
                )
        else:
            windows = file_windows or DEFAULT_WINDOWS
        return amap, windows
    except FileNotFoundError as exc:
        raise InvalidConfigError(f"--activity-map/--windows: {exc}")
    except FormatError as exc:
        raise InvalidConfigError(f"--activity-map/--windows: {exc}")


def cmd_mine(args) -> int:
    amap, windows = _load_analysis_config(args)
    tz = resolve_timezone(args.tz)
    fmt = _detect_format(args.input, args.format)
    try:
        parsed = parse_checkins(args.input, fmt)
    except FileNotFoundError:
        print(f"error: --input: no such file: {args.input}", file=sys.stderr)
        return EXIT_INPUT
    except FormatError as exc:
        print(f"error: --input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    for reject in parsed.rejects[:20]:
        print(f"rejected line {reject.line_no}: {reject.reason}", file=sys.stderr)
    if len(parsed.rejects) > 20:
        print(f"... {len(parsed.rejects) - 20} more rejects", file=sys.stderr)

    result = run_pipeline(
        parsed.checkins,
        amap,
        windows=windows,
        tz=tz,
        grouping=args.grouping,
    )
    db = result.database
    cfg = MinerConfig(min_support=args.min_support, max_length=args.max_length)
    patterns = _MINERS[args.miner](db, cfg)
    report = build_report(
        patterns, db, top_k=args.top_k, sort_key=args.sort
    )

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "patterns.csv", "w", encoding="utf-8", newline="") as fp:
        patterns.to_csv(fp)
    with open(out_dir / "patterns.jsonl", "w", encoding="utf-8") as fp:
        patterns.to_jsonl(fp)
    with open(out_dir / "report.csv", "w", encoding="utf-8", newline="") as fp:
        write_report_csv(report, fp)
    with open(out_dir / "report.jsonl", "w", encoding="utf-8") as fp:
        write_report_jsonl(report, fp)
    print(
        f"sequences={len(db)} dropped={result.tag_result.dropped} "
        f"rejected={len(parsed.rejects)} patterns={len(patterns)} "
        f"report_rows={len(report)} out={out_dir}"
    )
    return EXIT_OK


def cmd_generate(args) -> int:
    if args.checkins_min > args.checkins_max:
        print(
            "error: --checkins-min must be <= --checkins-max", file=sys.stderr
        )
        return EXIT_CONFIG
    if args.shape == "bms":
        cfg = bms_shape(args.users if args.users is not None else 30000)
    else:
        cfg = GeneratorConfig(
            n_users=args.users if args.users is not None else 1057,
            checkins_min=args.checkins_min,
            checkins_max=args.checkins_max,
        )
    checkins = generate_synthetic(cfg, args.seed)
    fmt = _detect_format(args.out, args.format)
    with open(args.out, "w", encoding="utf-8", newline="") as fp:
        serialize_checkins(checkins, fp, fmt)
    print(
        f"wrote {len(checkins)} check-ins for {cfg.n_users} users "
        f"to {args.out} (seed={args.seed}, shape={args.shape})"
    )
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.shape == "bms":
        cfg = bms_shape(args.users if args.users is not None else 30000)
    else:
        cfg = GeneratorConfig(
            n_users=args.users if args.users is not None else 1057
        )
    checkins = generate_synthetic(cfg, args.seed)
    amap, _ = default_config()
    result = run_pipeline(checkins, amap, grouping="trip")
    db = result.database
    results = run_bench(
        db,
        args.supports,
        repeats=args.repeats,
        workers=(4 if args.parallel else None),
    )
    print(format_table(results))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fp:
            write_bench_csv(results, fp)
        print(f"wrote {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqmine",
        description="Sequential activity pattern mining over check-in data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_mine = sub.add_parser("mine", help="mine patterns from a check-ins file")
    p_mine.add_argument("--input", required=True, help="check-ins CSV or JSONL file")
    p_mine.add_argument("--format", choices=("csv", "jsonl"), default=None,
                        help="input format (default: by file extension)")
    p_mine.add_argument("--min-support", type=_min_support, default=0.01,
                        help="count (int) or fraction (0,1] (default 0.01)")
    p_mine.add_argument("--max-length", type=int, default=3,
                        help="max items per pattern (default 3)")
    p_mine.add_argument("--windows", default=None,
                        help="config file with 'window NAME HH:MM HH:MM' lines")
    p_mine.add_argument("--activity-map", default=None,
                        help="config file with 'pattern = activity' lines")
    p_mine.add_argument("--tz", default="+08:00",
                        help="timezone for window assignment (default +08:00)")
    p_mine.add_argument("--grouping", choices=("window", "trip"), default="window")
    p_mine.add_argument("--miner", choices=sorted(_MINERS), default="prefixspan")
    p_mine.add_argument("--top-k", type=int, default=None,
                        help="truncate the report to the top K rows")
    p_mine.add_argument("--sort", choices=VALID_SORT_KEYS, default="frequency")
    p_mine.add_argument("--out", default="out", help="output directory")
    p_mine.set_defaults(func=cmd_mine)

    p_gen = sub.add_parser("generate", help="write a synthetic check-ins file")
    p_gen.add_argument("--users", type=int, default=None,
                       help="number of users (default: shape default)")
    p_gen.add_argument("--checkins-min", type=int, default=8)
    p_gen.add_argument("--checkins-max", type=int, default=10)
    p_gen.add_argument("--seed", type=int, default=7)
    p_gen.add_argument("--shape", choices=("singapore", "bms"), default="singapore")
    p_gen.add_argument("--format", choices=("csv", "jsonl"), default=None)
    p_gen.add_argument("--out", required=True, help="output file")
    p_gen.set_defaults(func=cmd_generate)

    p_bench = sub.add_parser("bench", help="compare both miners on one dataset")
    p_bench.add_argument("--shape", choices=("singapore", "bms"), default="bms")
    p_bench.add_argument("--users", type=int, default=None)
    p_bench.add_argument("--supports", type=_support_list,
                         default=[0.005, 0.01, 0.02],
                         help="comma-separated counts or fractions")
    p_bench.add_argument("--repeats", type=int, default=3)
    p_bench.add_argument("--seed", type=int, default=7)
    p_bench.add_argument("--parallel", action="store_true",
                         help="fan miners out over threads (throughput mode)")
    p_bench.add_argument("--out", default=None, help="results CSV path")
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InvalidConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except MinerMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
