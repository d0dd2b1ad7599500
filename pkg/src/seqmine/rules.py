"""Rule statistics over mined patterns: support, confidence, occurrence counts.

Three numbers describe a pattern here:

* support: fraction of sequences containing it (the miner's count, relative);
* confidence: support of the full pattern over support of the pattern minus
  its last element, reading "A > B > C" as the rule (A > B) implies C;
* frequency: total occurrences, counted as distinct minimal windows so a
  sequence that performs the pattern several times contributes several times,
  while overlapping restatements of the same occurrence do not inflate it.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import IO, Iterable

from .core import Sequence, SequenceDatabase, contains_subsequence
from .errors import UndefinedConfidenceError
from .prefixspan import Pattern, PatternSet

VALID_SORT_KEYS = ("frequency", "support", "confidence")


@dataclass(frozen=True)
class RuleRow:
    """One report line for a mined activity pattern."""

    pattern: Pattern
    activity_sequence: str
    frequency: int
    support: float
    confidence: float


def pattern_support(db: SequenceDatabase, p: Sequence) -> tuple[int, float]:
    """(containing-sequence count, relative support) of p in db."""
    if not p.elements:
        raise ValueError("pattern must be non-empty")
    count = sum(1 for s in db.sequences if contains_subsequence(s, p))
    return count, (count / len(db) if len(db) else 0.0)


def rule_confidence(db: SequenceDatabase, p: Sequence) -> float:
    """support(p) / support(p without its last element)."""
    if len(p.elements) < 2:
        raise ValueError("confidence needs a pattern of at least two elements")
    numer, _ = pattern_support(db, p)
    denom, _ = pattern_support(db, Sequence(p.elements[:-1]))
    if denom == 0:
        raise UndefinedConfidenceError(
            f"antecedent {Sequence(p.elements[:-1]).elements!r} never occurs"
        )
    return numer / denom


def count_minimal_occurrences(s: Sequence, p: Sequence) -> int:
    """Number of windows of s that contain p but no proper subwindow does.

    Anchoring p's first element at each possible position and completing
    greedily yields the earliest end for that anchor; distinct ends are in
    one-to-one correspondence with minimal windows (the latest anchor
    reaching a given end is the window start).
    """
    if not p.elements:
        raise ValueError("pattern must be non-empty")
    esets = [frozenset(e) for e in s.elements]
    psets = [frozenset(e) for e in p.elements]
    ends: set[int] = set()
    for anchor in range(len(esets)):
        if not psets[0] <= esets[anchor]:
            continue
        j = anchor
        ok = True
        for pe in psets[1:]:
            j += 1
            while j < len(esets) and not pe <= esets[j]:
                j += 1
            if j == len(esets):
                ok = False
                break
        if ok:
            ends.add(j)
    return len(ends)


def pattern_frequency(db: SequenceDatabase, p: Sequence) -> int:
    """Total minimal occurrences of p across all sequences."""
    return sum(count_minimal_occurrences(s, p) for s in db.sequences)


def _render_activities(p: Pattern, patterns: PatternSet) -> str:
    return " > ".join(
        "+".join(patterns.dictionary.decode(i) for i in elem)
        for elem in p.sequence.elements
    )


def build_report(
    patterns: PatternSet,
    db: SequenceDatabase,
    top_k: int | None = None,
    sort_key: str = "frequency",
    n_activities: int | None = 3,
) -> list[RuleRow]:
    """Report rows for patterns shaped like activity chains.

    With ``n_activities`` set (default 3) only patterns of exactly that many
    single-item elements qualify; with None, any pattern of at least two
    elements does.  Rows sort by ``sort_key`` descending, ties broken by the
    rendered activity string, truncated to ``top_k``.
    """
    if sort_key not in VALID_SORT_KEYS:
        raise ValueError(f"sort_key must be one of {VALID_SORT_KEYS}")
    supports = patterns.as_dict()

    def antecedent_count(p: Pattern) -> int:
        ante = p.sequence.elements[:-1]
        hit = supports.get(ante)
        if hit is not None:
            return hit
        return pattern_support(db, Sequence(ante))[0]

    rows = []
    for p in patterns:
        elems = p.sequence.elements
        if n_activities is not None:
            if len(elems) != n_activities or any(len(e) != 1 for e in elems):
                continue
        elif len(elems) < 2:
            continue
        denom = antecedent_count(p)
        if denom == 0:
            raise UndefinedConfidenceError(
                f"antecedent of {p.sequence.elements!r} never occurs"
            )
        rows.append(
            RuleRow(
                pattern=p,
                activity_sequence=_render_activities(p, patterns),
                frequency=pattern_frequency(db, p.sequence),
                support=p.support_count / len(db) if len(db) else 0.0,
                confidence=p.support_count / denom,
            )
        )
    rows.sort(key=lambda r: (-getattr(r, sort_key), r.activity_sequence))
    return rows if top_k is None else rows[:top_k]


def write_report_csv(rows: Iterable[RuleRow], fp: IO[str]) -> None:
    writer = csv.writer(fp)
    writer.writerow(["activity_sequence", "frequency", "support", "confidence"])
    for r in rows:
        writer.writerow(
            [r.activity_sequence, r.frequency, f"{r.support:.6f}", f"{r.confidence:.6f}"]
        )


def write_report_jsonl(rows: Iterable[RuleRow], fp: IO[str]) -> None:
    for r in rows:
        fp.write(
            json.dumps(
                {
                    "activity_sequence": r.activity_sequence,
                    "frequency": r.frequency,
                    "support": r.support,
                    "confidence": r.confidence,
                }
            )
            + "\n"
        )
