import io
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from seqmine import (
    InvalidConfigError,
    MinerConfig,
    ProjectedDatabase,
    SequenceDatabase,
    frequent_extensions,
    frequent_items,
    mine,
    project,
    projection_table,
)
from seqmine.prefixspan import Extension, I_EXTENSION, S_EXTENSION

import oracle
from conftest import LETTER_ROWS, as_database

# Expected values below were frozen from exhaustive reference runs
# (tests/oracle.py) before the miner existed; see the class docstrings.


class TestMinerConfig:
    def test_int_support_is_absolute(self):
        assert MinerConfig(min_support=3).resolve_min_count(100) == 3

    def test_float_support_is_fraction_ceil(self):
        assert MinerConfig(min_support=0.5).resolve_min_count(4) == 2
        assert MinerConfig(min_support=0.5).resolve_min_count(5) == 3
        assert MinerConfig(min_support=1.0).resolve_min_count(7) == 7

    def test_tiny_fraction_floors_at_one(self):
        assert MinerConfig(min_support=0.001).resolve_min_count(10) == 1

    @pytest.mark.parametrize("bad", [0, -1, 0.0, -0.5, 1.5, "2", None, True])
    def test_invalid_support_rejected(self, bad):
        with pytest.raises(InvalidConfigError):
            MinerConfig(min_support=bad).resolve_min_count(10)

    def test_invalid_lengths_rejected(self):
        with pytest.raises(InvalidConfigError):
            MinerConfig(max_length=0)
        with pytest.raises(InvalidConfigError):
            MinerConfig(min_pattern_length=0)


class TestFrequentItems:
    """Item supports in the digit fixture: 1-4 occur in all four sequences,
    5 in three, 6 in two, 7 in one."""

    def test_threshold_two(self, digits_db):
        got = {item.label: c for item, c in frequent_items(digits_db, 2)}
        assert got == {"1": 4, "2": 4, "3": 4, "4": 4, "5": 3, "6": 2}

    def test_threshold_one_includes_singleton(self, digits_db):
        got = {item.label: c for item, c in frequent_items(digits_db, 1)}
        assert got["7"] == 1
        assert len(got) == 7

    def test_ids_ascending(self, digits_db):
        ids = [item.id for item, _ in frequent_items(digits_db, 1)]
        assert ids == sorted(ids)


class TestFrequentExtensions:
    def test_extensions_of_single_item_prefix(self, letters_db):
        # reference counts: sequences containing <(a),(x)> resp. <(a x)>
        root = ProjectedDatabase.root(letters_db)
        a = letters_db.dictionary.item("a")
        pdb = project(root, Extension(a, S_EXTENSION, 4))
        got = [(e.item.label, e.kind, e.count) for e in frequent_extensions(pdb, 2)]
        assert got == [
            ("a", S_EXTENSION, 2),
            ("b", S_EXTENSION, 4),
            ("c", S_EXTENSION, 4),
            ("d", S_EXTENSION, 2),
            ("f", S_EXTENSION, 2),
            ("b", I_EXTENSION, 2),
        ]

    def test_root_has_no_item_extensions(self, letters_db):
        root = ProjectedDatabase.root(letters_db)
        kinds = {e.kind for e in frequent_extensions(root, 1)}
        assert kinds == {S_EXTENSION}

    def test_item_extension_must_be_ordered(self, letters_db):
        root = ProjectedDatabase.root(letters_db)
        b = letters_db.dictionary.item("b")
        a = letters_db.dictionary.item("a")
        pdb = project(root, Extension(b, S_EXTENSION, 4))
        with pytest.raises(ValueError):
            project(pdb, Extension(a, I_EXTENSION, 2))

    def test_cannot_item_extend_empty_prefix(self, letters_db):
        root = ProjectedDatabase.root(letters_db)
        a = letters_db.dictionary.item("a")
        with pytest.raises(ValueError):
            project(root, Extension(a, I_EXTENSION, 4))


class TestProjectionTable:
    """Single-item projections of the letter fixture, with items below the
    support threshold elided from the rendered suffixes."""

    GOLDEN = {
        "a": "((abc)(ac)d(cf)), ((_d)c(bc)(ae)), ((_b)(df)cb), ((_f)cbc)",
        "b": "((_c)(ac)d(cf)), ((_c)(ae)), ((df)cb), (c)",
        "c": "((ac)d(cf)), ((bc)(ae)), (b), (bc)",
        "d": "((cf)), (c(bc)(ae)), ((_f)cb)",
        "e": "((_f)(ab)(df)cb), ((af)cbc)",
        "f": "((ab)(df)cb), (cbc)",
    }

    def test_rendered_tables(self, letters_db):
        assert projection_table(letters_db, 2) == self.GOLDEN

    def test_keys_follow_frequent_items(self, letters_db):
        # g occurs once, so it gets no projection at min_count=2
        assert "g" not in projection_table(letters_db, 2)
        assert "g" in projection_table(letters_db, 1)

    def test_empty_suffixes_dropped(self, letters_db):
        # e is the last item of sequence 2; that projection entry is empty
        root = ProjectedDatabase.root(letters_db)
        e = letters_db.dictionary.item("e")
        pdb = project(root, Extension(e, S_EXTENSION, 2))
        assert len(pdb.suffixes()) == 2


# Complete mining result on the letter fixture at min_count=2, grouped by
# first item.  53 patterns; single-letter elements render bare, multi-item
# elements parenthesized, a leading "_" marks an open element.
LETTER_GROUPS = {
    "a": ["a", "aa", "ab", "aba", "abc", "a(bc)", "a(bc)a", "ac", "aca",
          "acb", "acc", "ad", "adc", "af", "(ab)", "(ab)c", "(ab)d",
          "(ab)dc", "(ab)f"],
    "b": ["b", "ba", "bc", "bd", "bdc", "bf", "(bc)", "(bc)a"],
    "c": ["c", "ca", "cb", "cc"],
    "d": ["d", "db", "dc", "dcb"],
    "e": ["e", "ea", "eab", "eac", "eacb", "eb", "ebc", "ec", "ecb", "ef",
          "efb", "efc", "efcb"],
    "f": ["f", "fb", "fbc", "fc", "fcb"],
}


class TestMineLetters:
    def test_full_pattern_set(self, letters_db):
        ps = mine(letters_db, MinerConfig(min_support=2))
        groups: dict[str, list[str]] = {}
        for p in ps:
            first = letters_db.dictionary.decode(p.sequence.elements[0][0])
            groups.setdefault(first, []).append(p.render(letters_db.dictionary))
        assert groups == LETTER_GROUPS
        assert len(ps) == 53

    def test_matches_exhaustive_reference(self, letters_db):
        raw = [
            [tuple(sorted(letters_db.dictionary.encode(lb) for lb in e)) for e in s]
            for s in LETTER_ROWS
        ]
        expected = oracle.mine_exhaustive(raw, min_count=2)
        assert mine(letters_db, MinerConfig(min_support=2)).as_dict() == expected

    def test_output_is_lexicographic(self, letters_db):
        ps = mine(letters_db, MinerConfig(min_support=2))
        elems = [p.sequence.elements for p in ps]
        assert elems == sorted(elems)

    def test_no_duplicates(self, letters_db):
        ps = mine(letters_db, MinerConfig(min_support=1))
        elems = [p.sequence.elements for p in ps]
        assert len(elems) == len(set(elems))


class TestMineDigits:
    """Digit fixture at min_count=3 capped at three items per pattern."""

    GOLDEN = {
        "(1)": 4,
        "(2)": 4,
        "(2),(1)": 4,
        "(2),(4)": 3,
        "(3)": 4,
        "(3),(1)": 4,
        "(3),(3)": 3,
        "(4)": 4,
        "(4),(1)": 3,
        "(4),(2)": 3,
        "(4),(2),(1)": 3,
        "(4),(3)": 3,
        "(4),(3),(1)": 3,
        "(5)": 3,
    }

    def test_pattern_set(self, digits_db):
        ps = mine(digits_db, MinerConfig(min_support=3, max_length=3))
        got = {p.render(digits_db.dictionary): p.support_count for p in ps}
        assert got == self.GOLDEN

    def test_fraction_threshold_equivalent(self, digits_db):
        # 0.75 of 4 sequences == count of 3
        a = mine(digits_db, MinerConfig(min_support=3, max_length=3))
        b = mine(digits_db, MinerConfig(min_support=0.75, max_length=3))
        assert a.as_dict() == b.as_dict()


class TestConfigEffects:
    def test_max_length_counts_items_not_elements(self, letters_db):
        ps = mine(letters_db, MinerConfig(min_support=2, max_length=2))
        sizes = {sum(len(e) for e in p.sequence.elements) for p in ps}
        assert max(sizes) == 2
        rendered = {p.render(letters_db.dictionary) for p in ps}
        assert "(ab)" in rendered  # two items in one element count as two
        assert "(ab)c" not in rendered

    def test_max_length_one_yields_items_only(self, letters_db):
        ps = mine(letters_db, MinerConfig(min_support=2, max_length=1))
        assert {p.render(letters_db.dictionary) for p in ps} == set("abcdef")

    def test_min_pattern_length_is_reporting_floor(self, letters_db):
        full = mine(letters_db, MinerConfig(min_support=2))
        floored = mine(letters_db, MinerConfig(min_support=2, min_pattern_length=2))
        long_only = {
            k: v for k, v in full.as_dict().items()
            if sum(len(e) for e in k) >= 2
        }
        assert floored.as_dict() == long_only

    def test_threshold_above_database_size(self, letters_db):
        assert len(mine(letters_db, MinerConfig(min_support=5))) == 0

    def test_empty_database(self):
        db = SequenceDatabase.from_raw([])
        assert len(mine(db, MinerConfig(min_support=1))) == 0

    def test_workers_do_not_change_result(self, letters_db):
        serial = mine(letters_db, MinerConfig(min_support=1))
        parallel = mine(letters_db, MinerConfig(min_support=1), workers=4)
        assert [p for p in serial] == [p for p in parallel]


class TestPatternSet:
    def test_relative_support(self, letters_db):
        ps = mine(letters_db, MinerConfig(min_support=2))
        for p in ps:
            assert ps.relative_support(p) == p.support_count / 4

    def test_csv_output(self, letters_db):
        ps = mine(letters_db, MinerConfig(min_support=2))
        buf = io.StringIO()
        ps.to_csv(buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "pattern,support_count,relative_support"
        assert lines[1] == "a,4,1.000000"
        assert len(lines) == 54

    def test_jsonl_round_trip(self, digits_db):
        ps = mine(digits_db, MinerConfig(min_support=3, max_length=3))
        buf = io.StringIO()
        ps.to_jsonl(buf)
        records = [json.loads(line) for line in buf.getvalue().splitlines()]
        assert len(records) == len(ps)
        rebuilt = {
            tuple(tuple(digits_db.dictionary.encode(lb) for lb in e)
                  for e in r["pattern"]): r["support_count"]
            for r in records
        }
        assert rebuilt == ps.as_dict()


class TestAgainstExhaustiveReference:
    """Randomized equivalence against the brute-force reference miner."""

    @given(seed=st.integers(0, 10_000), min_count=st.integers(1, 3))
    @settings(max_examples=60, deadline=None)
    def test_full_mining(self, seed, min_count):
        raw = oracle.random_db(random.Random(seed))
        db = as_database(raw)
        expected = oracle.mine_exhaustive(raw, min_count)
        got = mine(db, MinerConfig(min_support=min_count)).as_dict()
        assert got == expected

    @given(seed=st.integers(0, 10_000), max_length=st.sampled_from([1, 2, 3]))
    @settings(max_examples=40, deadline=None)
    def test_length_capped_mining(self, seed, max_length):
        raw = oracle.random_db(random.Random(seed))
        db = as_database(raw)
        expected = oracle.mine_exhaustive(raw, 2, max_items=max_length)
        got = mine(db, MinerConfig(min_support=2, max_length=max_length)).as_dict()
        assert got == expected
