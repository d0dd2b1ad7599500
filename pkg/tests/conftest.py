import pytest

from seqmine import ItemDictionary, SequenceDatabase

# Two standing fixtures: a single-character alphabet database whose one-item
# projections exercise open elements and interleaved itemsets, and a digit
# database with wider elements.  Expected values asserted against them were
# frozen from exhaustive reference runs (tests/oracle.py).

LETTER_ROWS = [
    [["a"], ["a", "b", "c"], ["a", "c"], ["d"], ["c", "f"]],
    [["a", "d"], ["c"], ["b", "c"], ["a", "e"]],
    [["e", "f"], ["a", "b"], ["d", "f"], ["c"], ["b"]],
    [["e"], ["g"], ["a", "f"], ["c"], ["b"], ["c"]],
]

DIGIT_ROWS = [
    [["1"], ["2"], ["1", "2"], ["3"], ["1", "3"], ["4", "5"], ["6"]],
    [["3", "4"], ["3"], ["2", "3"], ["1", "4"]],
    [["4", "5"], ["2"], ["2", "3", "4"], ["3"], ["1"]],
    [["4"], ["5"], ["1", "6"], ["3"], ["2"], ["7"], ["1"]],
]


@pytest.fixture(scope="session")
def letters_db() -> SequenceDatabase:
    return SequenceDatabase.from_raw(LETTER_ROWS)


@pytest.fixture(scope="session")
def digits_db() -> SequenceDatabase:
    return SequenceDatabase.from_raw(DIGIT_ROWS)


def as_database(raw_db, alphabet: int = 8) -> SequenceDatabase:
    """Lift an oracle-style tuple database into a SequenceDatabase.

    Single-digit labels sort like their values, so dictionary ids equal the
    raw ints and patterns compare directly against oracle tuples.
    """
    assert alphabet <= 10
    dictionary = ItemDictionary.from_labels([str(i) for i in range(alphabet)])
    rows = [[[str(i) for i in elem] for elem in seq] for seq in raw_db]
    return SequenceDatabase.from_raw(rows, dictionary=dictionary)
