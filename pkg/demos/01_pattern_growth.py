"""Walk through pattern-growth mining on a tiny four-sequence database.

Shows the single-item projected databases (the core data structure of the
search) and the complete mined pattern set, grouped by first item.
"""

from seqmine import MinerConfig, SequenceDatabase, mine, projection_table

ROWS = [
    [["a"], ["a", "b", "c"], ["a", "c"], ["d"], ["c", "f"]],
    [["a", "d"], ["c"], ["b", "c"], ["a", "e"]],
    [["e", "f"], ["a", "b"], ["d", "f"], ["c"], ["b"]],
    [["e"], ["g"], ["a", "f"], ["c"], ["b"], ["c"]],
]


def main() -> None:
    db = SequenceDatabase.from_raw(ROWS)
    print(f"database: {len(db)} sequences over alphabet {db.dictionary.labels}")
    for seq_id, seq in zip(db.seq_ids, db.sequences):
        print(f"  {seq_id}: {seq.render(db.dictionary)}")

    print("\nsingle-item projected databases at min_count=2")
    print("(a leading '_' marks a partially consumed element;")
    print(" items below the threshold are elided):")
    for label, rendered in projection_table(db, 2).items():
        print(f"  {label}: {rendered}")

    patterns = mine(db, MinerConfig(min_support=2))
    print(f"\ncomplete pattern set at min_count=2: {len(patterns)} patterns")
    groups: dict[str, list[str]] = {}
    for p in patterns:
        first = db.dictionary.decode(p.sequence.elements[0][0])
        groups.setdefault(first, []).append(
            f"{p.render(db.dictionary)}:{p.support_count}"
        )
    for label, members in groups.items():
        print(f"  {label} ({len(members)}): {', '.join(members)}")


if __name__ == "__main__":
    main()
