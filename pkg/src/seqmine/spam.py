"""Vertical bitmap mining: depth-first search over per-item position bitmaps.

Each database sequence occupies one lane column; bit j of an item's column is
set when the item occurs in element j.  A pattern's bitmap marks every element
position at which an occurrence of the pattern can end, so support is just the
number of non-zero columns.  Growing the pattern is pure word arithmetic:
an I-step ANDs the item bitmap at the same positions, an S-step first
transforms the pattern bitmap so that only positions strictly after the
earliest end survive.

Sequences are bucketed into lanes of 8/16/32/64-bit words by element count, so
short sequences (the common case in click-stream shaped data) do not pay for
a uniform maximum width.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import Element, Sequence, SequenceDatabase
from .errors import CapacityExceededError, InvalidConfigError
from .prefixspan import MinerConfig, Pattern, PatternSet

#: Supported lane widths and their word types.
_LANE_DTYPES = {8: np.uint8, 16: np.uint16, 32: np.uint32, 64: np.uint64}

DEFAULT_LANE_WIDTHS = (8, 16, 32, 64)

#: One numpy vector per lane, aligned with VerticalBitmapIndex.lanes.
Bitmap = tuple[np.ndarray, ...]


@dataclass(frozen=True)
class _Lane:
    width: int
    seq_indices: tuple[int, ...]  # database positions of the member sequences
    item_bits: np.ndarray  # shape (n_items, len(seq_indices))


class VerticalBitmapIndex:
    """Per-item occurrence bitmaps for one database, immutable after build."""

    def __init__(
        self,
        db: SequenceDatabase,
        lane_widths: tuple[int, ...] = DEFAULT_LANE_WIDTHS,
    ):
        widths = tuple(sorted(set(lane_widths)))
        if not widths or any(w not in _LANE_DTYPES for w in widths):
            raise InvalidConfigError(
                f"lane widths must be drawn from {sorted(_LANE_DTYPES)}"
            )
        self.db = db
        self.n_items = len(db.dictionary)
        buckets: dict[int, list[int]] = {w: [] for w in widths}
        for si, s in enumerate(db.sequences):
            n_elems = len(s.elements)
            if n_elems == 0:
                continue
            for w in widths:
                if n_elems <= w:
                    buckets[w].append(si)
                    break
            else:
                raise CapacityExceededError(
                    f"sequence {db.seq_ids[si]!r} has {n_elems} elements; "
                    f"largest lane holds {widths[-1]}"
                )
        lanes = []
        for w in widths:
            members = buckets[w]
            if not members:
                continue
            bits = np.zeros((self.n_items, len(members)), dtype=_LANE_DTYPES[w])
            for col, si in enumerate(members):
                masks: dict[int, int] = {}
                for pos, elem in enumerate(db.sequences[si].elements):
                    for item in elem:
                        masks[item] = masks.get(item, 0) | (1 << pos)
                for item, mask in masks.items():
                    bits[item, col] = mask
            lanes.append(_Lane(w, tuple(members), bits))
        self.lanes = tuple(lanes)

    def item_bitmap(self, item_id: int) -> Bitmap:
        if not 0 <= item_id < self.n_items:
            raise IndexError(f"item id {item_id} out of range")
        return tuple(lane.item_bits[item_id] for lane in self.lanes)

    def support(self, bitmap: Bitmap) -> int:
        """Number of sequences with at least one surviving position."""
        return sum(int(np.count_nonzero(vec)) for vec in bitmap)

    def s_transform(self, bitmap: Bitmap) -> Bitmap:
        """Set exactly the bits strictly above each column's lowest set bit.

        Per column: isolate the lowest set bit, double it, subtract one to
        get the mask of positions at or below it, invert.  All-zero columns
        stay all-zero through the unsigned wraparound.
        """
        out = []
        for vec in bitmap:
            one = vec.dtype.type(1)
            low = vec & (~vec + one)
            out.append(~((low + low) - one))
        return tuple(out)

    def and_bitmaps(self, a: Bitmap, b: Bitmap) -> Bitmap:
        return tuple(x & y for x, y in zip(a, b))

    def containing_sequences(self, bitmap: Bitmap) -> list[int]:
        """Database indices of sequences with a surviving position, sorted."""
        hits = []
        for lane, vec in zip(self.lanes, bitmap):
            hits.extend(lane.seq_indices[c] for c in np.nonzero(vec)[0])
        return sorted(hits)

    def decode(self, bitmap: Bitmap) -> dict[int, tuple[int, ...]]:
        """{database sequence index: set positions}, omitting empty columns."""
        out: dict[int, tuple[int, ...]] = {}
        for lane, vec in zip(self.lanes, bitmap):
            for col, word in enumerate(vec):
                w = int(word)
                if w:
                    out[lane.seq_indices[col]] = tuple(
                        p for p in range(lane.width) if w >> p & 1
                    )
        return dict(sorted(out.items()))


def build_bitmaps(
    db: SequenceDatabase, lane_widths: tuple[int, ...] = DEFAULT_LANE_WIDTHS
) -> VerticalBitmapIndex:
    """Index a database for bitmap mining."""
    return VerticalBitmapIndex(db, lane_widths)


def s_step(
    index: VerticalBitmapIndex, pattern_bitmap: Bitmap, item: int
) -> tuple[Bitmap, int]:
    """Grow by a new element holding `item`; returns (bitmap, support)."""
    grown = index.and_bitmaps(index.s_transform(pattern_bitmap), index.item_bitmap(item))
    return grown, index.support(grown)


def i_step(
    index: VerticalBitmapIndex, pattern_bitmap: Bitmap, item: int
) -> tuple[Bitmap, int]:
    """Add `item` into the pattern's last element; returns (bitmap, support)."""
    grown = index.and_bitmaps(pattern_bitmap, index.item_bitmap(item))
    return grown, index.support(grown)


def mine_spam(
    db: SequenceDatabase,
    cfg: MinerConfig,
    workers: int | None = None,
    lane_widths: tuple[int, ...] = DEFAULT_LANE_WIDTHS,
) -> PatternSet:
    """Complete pattern set, identical to the pattern-growth miner's output.

    Candidate lists shrink down the search tree: an item that fails as an
    extension of a pattern cannot succeed for any descendant, because the
    descendant's bitmap is a subset and the S-transform is monotone under
    bit removal.
    """
    min_count = cfg.resolve_min_count(len(db))
    if len(db) == 0:
        return PatternSet((), 0, db.dictionary)
    index = VerticalBitmapIndex(db, lane_widths)
    item_bms = [index.item_bitmap(i) for i in range(index.n_items)]
    supports = [index.support(bm) for bm in item_bms]
    top = [i for i in range(index.n_items) if supports[i] >= min_count]
    max_length = cfg.max_length
    min_len = cfg.min_pattern_length

    def dfs(
        elems: list[Element],
        bm: Bitmap,
        support: int,
        s_cands: list[int],
        i_cands: list[int],
        out: list[Pattern],
    ) -> None:
        item_count = sum(len(e) for e in elems)
        if item_count >= min_len:
            out.append(Pattern(Sequence(tuple(elems)), support))
        if max_length is not None and item_count >= max_length:
            return
        trans = index.s_transform(bm)
        s_next = []
        for x in s_cands:
            nb = index.and_bitmaps(trans, item_bms[x])
            c = index.support(nb)
            if c >= min_count:
                s_next.append((x, nb, c))
        s_keep = [x for x, _, _ in s_next]
        for x, nb, c in s_next:
            dfs(elems + [(x,)], nb, c, s_keep, [y for y in s_keep if y > x], out)
        i_next = []
        for y in i_cands:
            nb = index.and_bitmaps(bm, item_bms[y])
            c = index.support(nb)
            if c >= min_count:
                i_next.append((y, nb, c))
        i_keep = [y for y, _, _ in i_next]
        last = elems[-1]
        for y, nb, c in i_next:
            dfs(elems[:-1] + [last + (y,)], nb, c, s_keep,
                [z for z in i_keep if z > y], out)

    def mine_branch(item: int) -> list[Pattern]:
        branch: list[Pattern] = []
        dfs([(item,)], item_bms[item], supports[item], top,
            [y for y in top if y > item], branch)
        return branch

    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            branches = list(pool.map(mine_branch, top))
    else:
        branches = [mine_branch(item) for item in top]

    patterns = [p for branch in branches for p in branch]
    patterns.sort(key=lambda p: p.sequence.elements)
    return PatternSet(tuple(patterns), len(db), db.dictionary)
