"""End-to-end check-in analysis: generate, ingest, window, mine, report.

A synthetic tourist corpus flows through the full pipeline: category
blocklisting (airport-style transit categories never reach the miner),
activity tagging, morning/afternoon windowing in local time, sequence
assembly, and finally a ranked three-activity report.
"""

import io
import sys

from seqmine import (
    MinerConfig,
    SINGAPORE_SHAPE,
    build_report,
    default_config,
    generate_synthetic,
    mine,
    parse_checkins,
    run_pipeline,
    serialize_checkins,
    write_report_csv,
)
from seqmine.checkins import resolve_timezone


def main() -> None:
    corpus = generate_synthetic(SINGAPORE_SHAPE, seed=42)
    users = {c.user_id for c in corpus}
    print(f"generated {len(corpus)} check-ins for {len(users)} tourists")

    # round trip through the on-disk format, as a real ingest would
    buf = io.StringIO()
    serialize_checkins(corpus, buf)
    parsed = parse_checkins(io.StringIO(buf.getvalue()))
    print(f"parsed back {len(parsed)} records, {len(parsed.rejects)} rejects")

    activity_map, windows = default_config()
    result = run_pipeline(
        parsed.checkins,
        activity_map,
        windows=windows,
        tz=resolve_timezone("+08:00"),
    )
    print(f"dropped {result.tag_result.dropped} blocklisted check-ins; "
          f"{len(result.database)} (tourist, window) sequences")

    patterns = mine(result.database, MinerConfig(min_support=0.01, max_length=3))
    report = build_report(patterns, result.database, top_k=10)
    print(f"mined {len(patterns)} patterns; top {len(report)} activity chains:\n")
    write_report_csv(report, sys.stdout)


if __name__ == "__main__":
    main()
