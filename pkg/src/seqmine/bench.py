"""Benchmark harness: run both miners over support levels on one database.

Runtimes are recorded, never judged: which miner wins depends on hardware
and data shape.  Pattern counts, however, must agree at every support level;
a mismatch means a correctness bug and is raised as a hard error.
"""

from __future__ import annotations

import csv
import resource
import statistics
import sys
import time
from dataclasses import dataclass
from typing import IO, Callable, Iterable, Sequence as SequenceABC

from .core import SequenceDatabase
from .errors import InvalidConfigError, MinerMismatchError
from .prefixspan import MinerConfig, PatternSet, mine
from .spam import mine_spam

MINERS: dict[str, Callable[..., PatternSet]] = {
    "prefixspan": mine,
    "spam": mine_spam,
}


@dataclass(frozen=True)
class BenchResult:
    """One (miner, support) measurement."""

    miner: str
    n_sequences: int
    avg_elements: float
    alphabet_size: int
    min_support: int | float
    min_count: int
    wall_time_s: float  # median over repeats
    peak_rss_kb: int
    pattern_count: int


def dataset_stats(db: SequenceDatabase) -> tuple[int, float, int]:
    """(sequence count, mean elements per sequence, alphabet size)."""
    n = len(db)
    avg = sum(len(s.elements) for s in db.sequences) / n if n else 0.0
    return n, avg, len(db.dictionary)


def _peak_rss_kb() -> int:
    # ru_maxrss is KiB on Linux, bytes on macOS; normalize to KiB.
    rss = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    return rss // 1024 if sys.platform == "darwin" else rss


def run_bench(
    db: SequenceDatabase,
    supports: SequenceABC[int | float],
    repeats: int = 3,
    miners: Iterable[str] = ("prefixspan", "spam"),
    workers: int | None = None,
) -> list[BenchResult]:
    """Median wall time and pattern count per (miner, support).

    Passing ``workers`` fans the miners out over top-level items; the
    resulting times measure throughput, not single-thread latency, so keep
    it off when comparing miners.
    """
    miner_names = list(miners)
    if repeats < 1:
        raise InvalidConfigError("repeats must be >= 1")
    if not supports:
        raise InvalidConfigError("need at least one support level")
    unknown = [m for m in miner_names if m not in MINERS]
    if unknown:
        raise InvalidConfigError(f"unknown miners: {unknown}; choose from {sorted(MINERS)}")
    n, avg, alphabet = dataset_stats(db)
    results: list[BenchResult] = []
    for support in supports:
        cfg = MinerConfig(min_support=support)
        min_count = cfg.resolve_min_count(n)
        counts: dict[str, int] = {}
        for name in miner_names:
            fn = MINERS[name]
            times = []
            count = 0
            for _ in range(repeats):
                t0 = time.perf_counter()
                patterns = fn(db, cfg, workers=workers)
                times.append(time.perf_counter() - t0)
                count = len(patterns)
            counts[name] = count
            results.append(
                BenchResult(
                    miner=name,
                    n_sequences=n,
                    avg_elements=avg,
                    alphabet_size=alphabet,
                    min_support=support,
                    min_count=min_count,
                    wall_time_s=statistics.median(times),
                    peak_rss_kb=_peak_rss_kb(),
                    pattern_count=count,
                )
            )
        if len(set(counts.values())) > 1:
            raise MinerMismatchError(
                f"pattern counts disagree at support {support}: {counts}"
            )
    return results


def write_bench_csv(results: Iterable[BenchResult], fp: IO[str]) -> None:
    writer = csv.writer(fp)
    writer.writerow(
        [
            "miner",
            "n_sequences",
            "avg_elements",
            "alphabet_size",
            "min_support",
            "min_count",
            "wall_time_s",
            "peak_rss_kb",
            "pattern_count",
        ]
    )
    for r in results:
        writer.writerow(
            [
                r.miner,
                r.n_sequences,
                f"{r.avg_elements:.4f}",
                r.alphabet_size,
                r.min_support,
                r.min_count,
                f"{r.wall_time_s:.4f}",
                r.peak_rss_kb,
                r.pattern_count,
            ]
        )


def format_table(results: SequenceABC[BenchResult]) -> str:
    """Aligned text table of the results."""
    headers = ["miner", "support", "min_count", "time_s", "rss_kb", "patterns"]
    rows = [
        [
            r.miner,
            str(r.min_support),
            str(r.min_count),
            f"{r.wall_time_s:.3f}",
            str(r.peak_rss_kb),
            str(r.pattern_count),
        ]
        for r in results
    ]
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)),
        "  ".join("-" * w for w in widths),
    ]
    lines.extend(
        "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row))
        for row in rows
    )
    return "\n".join(lines)
