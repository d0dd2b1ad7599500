"""Pattern-growth mining: recursive prefix extension over pseudo-projected databases.

The projected database of a prefix is represented by positions into the
original sequences (pseudo-projection) instead of copied suffixes, since
building physical projections is the dominant cost of pattern growth.  Each
entry records where the earliest occurrence of the prefix ends; growing the
prefix by one item (an S-extension opening a new element, or an I-extension
enlarging the last one) only ever advances these positions.
"""

from __future__ import annotations

import csv
import json
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import IO, Collection, Iterator, NamedTuple

from .core import (
    Element,
    Item,
    ItemDictionary,
    Sequence,
    SequenceDatabase,
    Suffix,
)
from .errors import InvalidConfigError

#: Extension kinds: new element vs. item added to the prefix's last element.
S_EXTENSION = "S"
I_EXTENSION = "I"


class ProjectionEntry(NamedTuple):
    """Where the suffix of one database sequence begins.

    ``open_element`` is set when the suffix starts inside a partially
    consumed element (the "_" case); ``item_offset`` is then the first
    unconsumed item position within that element.
    """

    seq_index: int
    elem_offset: int
    item_offset: int
    open_element: bool


class Extension(NamedTuple):
    """A frequent one-item growth of a prefix inside its projected database."""

    item: Item
    kind: str  # S_EXTENSION or I_EXTENSION
    count: int


@dataclass(frozen=True)
class MinerConfig:
    """Mining parameters.

    ``min_support`` is an absolute sequence count when given as an int and a
    relative fraction in (0, 1] when given as a float (converted once via
    ceil(fraction * database size)).  ``max_length`` caps the total item
    count of a pattern; ``min_pattern_length`` is a reporting floor.
    """

    min_support: int | float = 2
    max_length: int | None = None
    min_pattern_length: int = 1

    def __post_init__(self) -> None:
        if self.max_length is not None and self.max_length < 1:
            raise InvalidConfigError("max_length must be >= 1 when set")
        if self.min_pattern_length < 1:
            raise InvalidConfigError("min_pattern_length must be >= 1")

    def resolve_min_count(self, n_sequences: int) -> int:
        """Convert min_support to an absolute count for a given database size."""
        if isinstance(self.min_support, bool) or not isinstance(
            self.min_support, (int, float)
        ):
            raise InvalidConfigError("min_support must be an int count or a fraction")
        if isinstance(self.min_support, int):
            if self.min_support < 1:
                raise InvalidConfigError("min_support count must be >= 1")
            return self.min_support
        if not 0.0 < self.min_support <= 1.0:
            raise InvalidConfigError("min_support fraction must be in (0,1]")
        return max(1, math.ceil(self.min_support * n_sequences))


@dataclass(frozen=True)
class Pattern:
    """A frequent sequence with the number of distinct sequences containing it."""

    sequence: Sequence
    support_count: int

    def render(self, dictionary: ItemDictionary) -> str:
        return self.sequence.render(dictionary)


@dataclass(frozen=True)
class PatternSet:
    """Complete mining result in canonical (lexicographic) order."""

    patterns: tuple[Pattern, ...]
    n_sequences: int
    dictionary: ItemDictionary

    def __len__(self) -> int:
        return len(self.patterns)

    def __iter__(self) -> Iterator[Pattern]:
        return iter(self.patterns)

    def relative_support(self, pattern: Pattern) -> float:
        return pattern.support_count / self.n_sequences if self.n_sequences else 0.0

    def as_dict(self) -> dict[tuple[Element, ...], int]:
        """{canonical elements: support count} view for set comparisons."""
        return {p.sequence.elements: p.support_count for p in self.patterns}

    def to_csv(self, fp: IO[str]) -> None:
        writer = csv.writer(fp)
        writer.writerow(["pattern", "support_count", "relative_support"])
        for p in self.patterns:
            writer.writerow(
                [p.render(self.dictionary), p.support_count,
                 f"{self.relative_support(p):.6f}"]
            )

    def to_jsonl(self, fp: IO[str]) -> None:
        for p in self.patterns:
            record = {
                "pattern": [
                    [self.dictionary.decode(i) for i in elem]
                    for elem in p.sequence.elements
                ],
                "support_count": p.support_count,
                "relative_support": self.relative_support(p),
            }
            fp.write(json.dumps(record) + "\n")


@dataclass(frozen=True)
class ProjectedDatabase:
    """Pseudo-projection of a database with respect to a prefix."""

    prefix: Sequence
    entries: tuple[ProjectionEntry, ...]
    base: SequenceDatabase = field(repr=False)

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def root(cls, db: SequenceDatabase) -> "ProjectedDatabase":
        entries = tuple(
            ProjectionEntry(i, 0, 0, False)
            for i, s in enumerate(db.sequences)
            if s.elements
        )
        return cls(Sequence(), entries, db)

    def suffixes(self, include: Collection[int] | None = None) -> list[Suffix]:
        """Materialize entry suffixes, optionally restricted to `include` items.

        Restricting to the run's frequent items reproduces the projected
        databases as conventionally tabulated: infrequent items can never
        join a pattern, so they are elided.  Elements emptied by the filter
        vanish; entries whose whole suffix vanishes are dropped.
        """
        keep = None if include is None else set(include)
        out = []
        for si, eo, io, open_ in self.entries:
            elements = self.base.sequences[si].elements
            partial: Element | None = elements[eo][io:] if open_ else None
            rest = elements[eo + 1 :] if open_ else elements[eo:]
            if keep is not None:
                if partial is not None:
                    partial = tuple(i for i in partial if i in keep) or None
                rest = tuple(
                    filtered
                    for e in rest
                    if (filtered := tuple(i for i in e if i in keep))
                )
            if partial is None and not rest:
                continue
            out.append(Suffix(partial, tuple(rest)))
        return out

    def render(self, include: Collection[int] | None = None) -> str:
        """Comma-joined suffixes, each wrapped in parentheses (table notation)."""
        dictionary = self.base.dictionary
        return ", ".join(
            "(" + s.render(dictionary) + ")" for s in self.suffixes(include)
        )


# ---------------------------------------------------------------------------
# engine


class _Engine:
    """Shared scan state for one database: raw elements plus per-element sets."""

    def __init__(self, db: SequenceDatabase):
        self.db = db
        self.seqs = [s.elements for s in db.sequences]
        self.esets = [[frozenset(e) for e in s] for s in self.seqs]

    def count_extensions(
        self, entries: Collection[ProjectionEntry], last_elem: Element
    ) -> tuple[Counter, Counter]:
        """Distinct-sequence counts of every S- and I-extension candidate.

        An S-candidate is any item in a full element of a suffix.  An
        I-candidate must be ordered after the prefix's last element and occur
        either in the open partial or in a later element that also contains
        the whole last element (the pattern's enlarged element has to sit in
        a single database element).
        """
        s_counts: Counter = Counter()
        i_counts: Counter = Counter()
        lset = frozenset(last_elem)
        lmax = last_elem[-1] if last_elem else -1
        for si, eo, io, open_ in entries:
            seq = self.seqs[si]
            esets = self.esets[si]
            s_seen: set[int] = set()
            i_seen: set[int] = set()
            if open_:
                i_seen.update(seq[eo][io:])
            start = eo + 1 if open_ else eo
            for j in range(start, len(seq)):
                elem = seq[j]
                s_seen.update(elem)
                if last_elem and lset <= esets[j]:
                    for x in reversed(elem):
                        if x > lmax:
                            i_seen.add(x)
                        else:
                            break
            for x in s_seen:
                s_counts[x] += 1
            for x in i_seen:
                i_counts[x] += 1
        return s_counts, i_counts

    def project_entries(
        self,
        entries: Collection[ProjectionEntry],
        kind: str,
        item: int,
        last_elem: Element,
    ) -> tuple[ProjectionEntry, ...]:
        """Advance entries past the earliest occurrence of the extension item.

        Entries whose suffix has no occurrence (or nothing left after it)
        are dropped.
        """
        grown = frozenset(last_elem) | {item}
        out = []
        for si, eo, io, open_ in entries:
            seq = self.seqs[si]
            esets = self.esets[si]
            hit: tuple[int, int] | None = None
            if kind == I_EXTENSION and open_ and item in esets[eo]:
                idx = seq[eo].index(item)
                if idx >= io:
                    hit = (eo, idx)
            if hit is None:
                start = eo + 1 if open_ else eo
                for j in range(start, len(seq)):
                    if kind == S_EXTENSION:
                        ok = item in esets[j]
                    else:
                        ok = grown <= esets[j]
                    if ok:
                        hit = (j, seq[j].index(item))
                        break
            if hit is None:
                continue
            j, idx = hit
            if idx + 1 < len(seq[j]):
                out.append(ProjectionEntry(si, j, idx + 1, True))
            elif j + 1 < len(seq):
                out.append(ProjectionEntry(si, j + 1, 0, False))
            # else: suffix empty, entry dropped
        return tuple(out)


def _dfs(
    engine: _Engine,
    prefix: list[Element],
    support: int,
    entries: tuple[ProjectionEntry, ...],
    min_count: int,
    max_length: int | None,
    min_pattern_length: int,
    out: list[Pattern],
) -> None:
    item_count = sum(len(e) for e in prefix)
    if item_count >= min_pattern_length:
        out.append(Pattern(Sequence(tuple(prefix)), support))
    if max_length is not None and item_count >= max_length:
        return
    if not entries:
        return
    last = prefix[-1]
    s_counts, i_counts = engine.count_extensions(entries, last)
    # S-extensions sort before I-extensions in the canonical order, and both
    # ascend by item id, so plain DFS emits patterns already sorted.
    for item in sorted(x for x, c in s_counts.items() if c >= min_count):
        child = engine.project_entries(entries, S_EXTENSION, item, last)
        prefix.append((item,))
        _dfs(engine, prefix, s_counts[item], child, min_count, max_length,
             min_pattern_length, out)
        prefix.pop()
    for item in sorted(x for x, c in i_counts.items() if c >= min_count):
        child = engine.project_entries(entries, I_EXTENSION, item, last)
        prefix[-1] = last + (item,)
        _dfs(engine, prefix, i_counts[item], child, min_count, max_length,
             min_pattern_length, out)
        prefix[-1] = last


# ---------------------------------------------------------------------------
# public operations


def frequent_items(
    db: SequenceDatabase, min_count: int
) -> list[tuple[Item, int]]:
    """Items contained in at least min_count distinct sequences, by id."""
    counts: Counter = Counter()
    for s in db.sequences:
        for item in {i for e in s.elements for i in e}:
            counts[item] += 1
    return [
        (Item(i, db.dictionary.decode(i)), counts[i])
        for i in sorted(counts)
        if counts[i] >= min_count
    ]


def frequent_extensions(
    pdb: ProjectedDatabase, min_count: int
) -> list[Extension]:
    """Frequent S- and I-extensions of pdb's prefix (S first, ids ascending)."""
    engine = _Engine(pdb.base)
    last = pdb.prefix.elements[-1] if pdb.prefix else ()
    s_counts, i_counts = engine.count_extensions(pdb.entries, last)
    dictionary = pdb.base.dictionary
    exts = [
        Extension(Item(i, dictionary.decode(i)), S_EXTENSION, s_counts[i])
        for i in sorted(s_counts)
        if s_counts[i] >= min_count
    ]
    if last:
        exts.extend(
            Extension(Item(i, dictionary.decode(i)), I_EXTENSION, i_counts[i])
            for i in sorted(i_counts)
            if i_counts[i] >= min_count
        )
    return exts


def project(pdb: ProjectedDatabase, ext: Extension) -> ProjectedDatabase:
    """Projected database of pdb's prefix grown by one extension."""
    last = pdb.prefix.elements[-1] if pdb.prefix else ()
    if ext.kind == I_EXTENSION:
        if not last:
            raise ValueError("cannot I-extend an empty prefix")
        if ext.item.id <= last[-1]:
            raise ValueError("I-extension item must be ordered after the last element")
        new_elems = pdb.prefix.elements[:-1] + (last + (ext.item.id,),)
    elif ext.kind == S_EXTENSION:
        new_elems = pdb.prefix.elements + ((ext.item.id,),)
    else:
        raise ValueError(f"unknown extension kind: {ext.kind!r}")
    engine = _Engine(pdb.base)
    entries = engine.project_entries(pdb.entries, ext.kind, ext.item.id, last)
    return ProjectedDatabase(Sequence(new_elems), entries, pdb.base)


def projection_table(
    db: SequenceDatabase, min_count: int
) -> dict[str, str]:
    """Rendered single-item projected databases, keyed by item label.

    Suffixes are restricted to the frequent items of the run, matching the
    conventional tabulation where infrequent items are elided.
    """
    root = ProjectedDatabase.root(db)
    freq = frequent_items(db, min_count)
    include = [item.id for item, _ in freq]
    return {
        item.label: project(root, Extension(item, S_EXTENSION, count)).render(include)
        for item, count in freq
    }


def mine(
    db: SequenceDatabase, cfg: MinerConfig, workers: int | None = None
) -> PatternSet:
    """Complete set of sequential patterns above the support threshold.

    Output is canonical, duplicate-free and lexicographically ordered.  With
    ``workers`` > 1 the top-level frequent items are mined in parallel; the
    result is identical to the serial run (branches are independent and the
    merge re-normalizes order).
    """
    min_count = cfg.resolve_min_count(len(db))
    engine = _Engine(db)
    root_entries = tuple(
        ProjectionEntry(i, 0, 0, False) for i, s in enumerate(engine.seqs) if s
    )
    s_counts, _ = engine.count_extensions(root_entries, ())
    top_items = sorted(x for x, c in s_counts.items() if c >= min_count)

    def mine_branch(item: int) -> list[Pattern]:
        branch: list[Pattern] = []
        child = engine.project_entries(root_entries, S_EXTENSION, item, ())
        _dfs(engine, [(item,)], s_counts[item], child, min_count,
             cfg.max_length, cfg.min_pattern_length, branch)
        return branch

    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            branches = list(pool.map(mine_branch, top_items))
    else:
        branches = [mine_branch(item) for item in top_items]

    patterns = [p for branch in branches for p in branch]
    patterns.sort(key=lambda p: p.sequence.elements)
    return PatternSet(tuple(patterns), len(db), db.dictionary)
