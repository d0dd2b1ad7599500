import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from seqmine import (
    CapacityExceededError,
    InvalidConfigError,
    MinerConfig,
    SequenceDatabase,
    build_bitmaps,
    mine,
    mine_spam,
)
from seqmine.spam import i_step, s_step

import oracle
from conftest import as_database


def item_id(db, label):
    return db.dictionary.item(label).id


class TestIndexConstruction:
    def test_item_bitmap_positions(self, digits_db):
        # item 1 occurs at elements 0/2/4 of S1, 3 of S2, 4 of S3, 2/6 of S4
        idx = build_bitmaps(digits_db)
        bm = idx.item_bitmap(item_id(digits_db, "1"))
        assert idx.decode(bm) == {0: (0, 2, 4), 1: (3,), 2: (4,), 3: (2, 6)}
        assert idx.support(bm) == 4

    def test_every_incidence_is_one_bit(self, digits_db):
        idx = build_bitmaps(digits_db)
        incidences = sum(
            len(e) for s in digits_db.sequences for e in s.elements
        )
        popcount = sum(
            bin(int(word)).count("1")
            for lane in idx.lanes
            for row in lane.item_bits
            for word in row
        )
        assert popcount == incidences == 33

    def test_lane_tiering_by_element_count(self):
        rows = [[["x"]] * n for n in (5, 12, 20, 40)]
        idx = build_bitmaps(SequenceDatabase.from_raw(rows))
        assert [(l.width, l.seq_indices) for l in idx.lanes] == [
            (8, (0,)), (16, (1,)), (32, (2,)), (64, (3,)),
        ]
        assert [l.item_bits.dtype for l in idx.lanes] == [
            np.uint8, np.uint16, np.uint32, np.uint64,
        ]

    def test_widest_lane_is_exercised(self):
        rows = [[["x"], ["y"]] * 32]  # 64 elements exactly
        idx = build_bitmaps(SequenceDatabase.from_raw(rows))
        assert idx.lanes[0].width == 64
        bm = idx.item_bitmap(item_id(idx.db, "y"))
        assert idx.decode(bm) == {0: tuple(range(1, 64, 2))}

    def test_sequence_too_long_raises(self):
        rows = [[["x"]] * 65]
        with pytest.raises(CapacityExceededError) as exc:
            build_bitmaps(SequenceDatabase.from_raw(rows, seq_ids=["big"]))
        assert "big" in str(exc.value)
        assert "64" in str(exc.value)

    def test_restricted_lane_widths(self, digits_db):
        idx = build_bitmaps(digits_db, lane_widths=(8,))
        assert [l.width for l in idx.lanes] == [8]
        rows = [[["x"]] * 9]
        with pytest.raises(CapacityExceededError):
            build_bitmaps(SequenceDatabase.from_raw(rows), lane_widths=(8,))

    def test_invalid_lane_widths(self, digits_db):
        with pytest.raises(InvalidConfigError):
            build_bitmaps(digits_db, lane_widths=(12,))
        with pytest.raises(InvalidConfigError):
            build_bitmaps(digits_db, lane_widths=())

    def test_item_id_out_of_range(self, digits_db):
        idx = build_bitmaps(digits_db)
        with pytest.raises(IndexError):
            idx.item_bitmap(99)


class TestSteps:
    """Growth steps on the digit fixture, checked against hand-computed
    positions (reference: tests/oracle.py containment)."""

    def test_item_step_intersects_same_element(self, digits_db):
        idx = build_bitmaps(digits_db)
        bm4 = idx.item_bitmap(item_id(digits_db, "4"))
        assert idx.decode(bm4) == {0: (5,), 1: (0, 3), 2: (0, 2), 3: (0,)}
        bm45, sup = i_step(idx, bm4, item_id(digits_db, "5"))
        # 4 and 5 share an element only in S1 (element 5) and S3 (element 0)
        assert idx.decode(bm45) == {0: (5,), 2: (0,)}
        assert sup == 2

    def test_sequence_step_requires_strictly_later_element(self, digits_db):
        idx = build_bitmaps(digits_db)
        bm4 = idx.item_bitmap(item_id(digits_db, "4"))
        bm45, _ = i_step(idx, bm4, item_id(digits_db, "5"))
        grown, sup = s_step(idx, bm45, item_id(digits_db, "2"))
        # only S3 has a 2 after its earliest (4 5); S1's (4 5) is past its 2s
        assert sup == 1
        assert idx.containing_sequences(grown) == [2]

    def test_sequence_step_from_single_item(self, digits_db):
        idx = build_bitmaps(digits_db)
        bm5 = idx.item_bitmap(item_id(digits_db, "5"))
        grown, sup = s_step(idx, bm5, item_id(digits_db, "2"))
        assert sup == 2
        assert idx.containing_sequences(grown) == [2, 3]

    def test_transform_of_empty_column_stays_empty(self):
        rows = [[["x"], ["y"]], [["y"]]]
        db = SequenceDatabase.from_raw(rows)
        idx = build_bitmaps(db)
        bm_x = idx.item_bitmap(item_id(db, "x"))
        transformed = idx.s_transform(bm_x)
        # second sequence has no x: its column must stay zero
        assert idx.support(idx.and_bitmaps(transformed, idx.item_bitmap(item_id(db, "y")))) == 1

    def test_transform_handles_high_bit(self):
        # occurrence in the last word position must not wrap into garbage
        rows = [[["x"]] * 8]
        db = SequenceDatabase.from_raw(rows)
        idx = build_bitmaps(db)
        bm = idx.item_bitmap(item_id(db, "x"))
        stepped, sup = s_step(idx, bm, item_id(db, "x"))
        assert sup == 1
        assert idx.decode(stepped) == {0: tuple(range(1, 8))}


class TestMineSpam:
    def test_matches_pattern_growth_on_letters(self, letters_db):
        for min_support in (1, 2, 3):
            a = mine(letters_db, MinerConfig(min_support=min_support))
            b = mine_spam(letters_db, MinerConfig(min_support=min_support))
            assert list(a) == list(b)

    def test_matches_pattern_growth_on_digits(self, digits_db):
        cfg = MinerConfig(min_support=3, max_length=3)
        assert list(mine(digits_db, cfg)) == list(mine_spam(digits_db, cfg))

    def test_reporting_floor(self, letters_db):
        cfg = MinerConfig(min_support=2, min_pattern_length=3)
        assert list(mine(letters_db, cfg)) == list(mine_spam(letters_db, cfg))

    def test_empty_database(self):
        db = SequenceDatabase.from_raw([])
        assert len(mine_spam(db, MinerConfig(min_support=1))) == 0

    def test_threshold_above_database_size(self, digits_db):
        assert len(mine_spam(digits_db, MinerConfig(min_support=9))) == 0

    def test_workers_do_not_change_result(self, letters_db):
        cfg = MinerConfig(min_support=1)
        assert list(mine_spam(letters_db, cfg)) == list(
            mine_spam(letters_db, cfg, workers=4)
        )

    def test_narrow_lanes_do_not_change_result(self, digits_db):
        cfg = MinerConfig(min_support=2)
        assert list(mine_spam(digits_db, cfg, lane_widths=(8,))) == list(
            mine_spam(digits_db, cfg)
        )

    @given(seed=st.integers(0, 10_000), min_count=st.integers(1, 3))
    @settings(max_examples=60, deadline=None)
    def test_matches_exhaustive_reference(self, seed, min_count):
        raw = oracle.random_db(random.Random(seed))
        db = as_database(raw)
        expected = oracle.mine_exhaustive(raw, min_count)
        got = mine_spam(db, MinerConfig(min_support=min_count)).as_dict()
        assert got == expected
