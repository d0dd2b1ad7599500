"""Inspect the vertical bitmap representation behind the second miner.

Every item gets one bit per element position per sequence.  Growing a
pattern is word arithmetic: an I-step ANDs bitmaps at the same positions,
an S-step first shifts the pattern's bitmap past its earliest match.  The
demo builds a pattern step by step and confirms both miners agree.
"""

from seqmine import MinerConfig, SequenceDatabase, build_bitmaps, mine, mine_spam
from seqmine.spam import i_step, s_step

ROWS = [
    [["1"], ["2"], ["1", "2"], ["3"], ["1", "3"], ["4", "5"], ["6"]],
    [["3", "4"], ["3"], ["2", "3"], ["1", "4"]],
    [["4", "5"], ["2"], ["2", "3", "4"], ["3"], ["1"]],
    [["4"], ["5"], ["1", "6"], ["3"], ["2"], ["7"], ["1"]],
]


def show(index, name, bitmap):
    positions = index.decode(bitmap)
    pretty = ", ".join(f"S{si + 1}@{list(pos)}" for si, pos in positions.items())
    print(f"  {name}: support={index.support(bitmap)}  [{pretty}]")


def main() -> None:
    db = SequenceDatabase.from_raw(ROWS)
    index = build_bitmaps(db)
    item = lambda label: db.dictionary.item(label).id

    print("item bitmaps (positions are element offsets):")
    bm4 = index.item_bitmap(item("4"))
    show(index, "<(4)>", bm4)

    bm45, _ = i_step(index, bm4, item("5"))
    show(index, "<(4 5)>   after I-step with 5", bm45)

    bm45_2, _ = s_step(index, bm45, item("2"))
    show(index, "<(4 5),(2)> after S-step with 2", bm45_2)

    cfg = MinerConfig(min_support=3, max_length=3)
    growth, bitmap = mine(db, cfg), mine_spam(db, cfg)
    assert list(growth) == list(bitmap)
    print(f"\nboth miners agree: {len(growth)} patterns at min_count=3, "
          f"max 3 items")
    for p in growth:
        print(f"  {p.render(db.dictionary)}  support={p.support_count}")


if __name__ == "__main__":
    main()
