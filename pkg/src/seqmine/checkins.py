"""Check-in ingestion: parse, tag with activities, segment by time window,
and assemble per-tourist sequence databases.

The stages are deliberately separable: parsing yields validated records plus
a reject report, activity tagging applies an ordered first-match-wins rule
list (with a drop marker for categories excluded from analysis), window
segmentation buckets records by local time of day, and sequence building
turns each (user, window) group into one time-ordered sequence whose
near-simultaneous check-ins merge into a single element.
"""

from __future__ import annotations

import csv
import io
import json
import re
from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from fnmatch import fnmatchcase
from pathlib import Path
from typing import IO, Iterable, Iterator

from .core import ItemDictionary, SequenceDatabase, canonicalize
from .errors import FormatError, InvalidConfigError

CSV_HEADER = (
    "checkin_id",
    "user_id",
    "timestamp",
    "lat",
    "lon",
    "category",
    "subcategory",
    "gender",
    "origin",
)

#: Label applied to categories no rule matches.
DEFAULT_ACTIVITY = "Other"

#: Rule target that drops a category instead of labelling it.
DROP_MARKER = "-"


@dataclass(frozen=True)
class CheckIn:
    """One validated check-in record; timestamp is a UTC instant."""

    checkin_id: str
    user_id: str
    timestamp: datetime
    lat: float
    lon: float
    category: str
    subcategory: str = ""
    gender: str | None = None
    origin: str | None = None


@dataclass(frozen=True)
class RejectedRow:
    line_no: int
    reason: str


@dataclass(frozen=True)
class ParseResult:
    """Valid records in file order plus per-line rejects."""

    checkins: tuple[CheckIn, ...]
    rejects: tuple[RejectedRow, ...]

    def __iter__(self) -> Iterator[CheckIn]:
        return iter(self.checkins)

    def __len__(self) -> int:
        return len(self.checkins)


def _parse_timestamp(raw: str) -> datetime:
    text = raw.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    ts = datetime.fromisoformat(text)
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def _as_text(source: str | Path | bytes | IO) -> IO[str]:
    if isinstance(source, (str, Path)):
        return open(source, "r", encoding="utf-8", newline="")
    if isinstance(source, bytes):
        return io.StringIO(source.decode("utf-8"))
    if isinstance(source, io.TextIOBase):
        return source
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return io.StringIO(data)


def _validate_row(
    fields: dict[str, str], seen_ids: set[str]
) -> tuple[CheckIn | None, str | None]:
    for name in ("checkin_id", "user_id", "timestamp", "lat", "lon", "category"):
        if not str(fields.get(name, "")).strip():
            return None, f"missing {name}"
    cid = str(fields["checkin_id"]).strip()
    if cid in seen_ids:
        return None, f"duplicate checkin_id {cid!r}"
    try:
        ts = _parse_timestamp(str(fields["timestamp"]))
    except ValueError:
        return None, f"bad timestamp {fields['timestamp']!r}"
    try:
        lat = float(fields["lat"])
        lon = float(fields["lon"])
    except (TypeError, ValueError):
        return None, "non-numeric coordinates"
    if not -90.0 <= lat <= 90.0:
        return None, "lat out of range"
    if not -180.0 <= lon <= 180.0:
        return None, "lon out of range"
    gender = str(fields.get("gender") or "").strip() or None
    origin = str(fields.get("origin") or "").strip() or None
    checkin = CheckIn(
        checkin_id=cid,
        user_id=str(fields["user_id"]).strip(),
        timestamp=ts,
        lat=lat,
        lon=lon,
        category=str(fields["category"]).strip(),
        subcategory=str(fields.get("subcategory") or "").strip(),
        gender=gender,
        origin=origin,
    )
    seen_ids.add(cid)
    return checkin, None


def parse_checkins(
    source: str | Path | bytes | IO, format: str = "csv"
) -> ParseResult:
    """Read check-ins from a CSV or JSONL source.

    Valid rows come back in file order; rows failing validation (bad
    timestamp, out-of-range coordinates, missing fields, duplicate ids) are
    collected with their line numbers instead of being silently dropped.
    An unusable CSV header raises FormatError.
    """
    if format not in ("csv", "jsonl"):
        raise ValueError("format must be 'csv' or 'jsonl'")
    fp = _as_text(source)
    close = isinstance(source, (str, Path))
    try:
        checkins: list[CheckIn] = []
        rejects: list[RejectedRow] = []
        seen: set[str] = set()
        if format == "csv":
            reader = csv.reader(fp)
            try:
                header = next(reader)
            except StopIteration:
                raise FormatError("empty input: missing CSV header")
            if tuple(h.strip() for h in header) != CSV_HEADER:
                raise FormatError(
                    f"bad CSV header: expected {','.join(CSV_HEADER)}"
                )
            for row in reader:
                line_no = reader.line_num
                if not row or all(not c.strip() for c in row):
                    continue
                if len(row) != len(CSV_HEADER):
                    rejects.append(
                        RejectedRow(line_no, f"expected {len(CSV_HEADER)} fields, got {len(row)}")
                    )
                    continue
                fields = dict(zip(CSV_HEADER, row))
                checkin, reason = _validate_row(fields, seen)
                if checkin is None:
                    rejects.append(RejectedRow(line_no, reason or "invalid"))
                else:
                    checkins.append(checkin)
        else:
            for line_no, line in enumerate(fp, start=1):
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError:
                    rejects.append(RejectedRow(line_no, "invalid JSON"))
                    continue
                if not isinstance(obj, dict):
                    rejects.append(RejectedRow(line_no, "expected a JSON object"))
                    continue
                checkin, reason = _validate_row(
                    {k: ("" if v is None else v) for k, v in obj.items()}, seen
                )
                if checkin is None:
                    rejects.append(RejectedRow(line_no, reason or "invalid"))
                else:
                    checkins.append(checkin)
        return ParseResult(tuple(checkins), tuple(rejects))
    finally:
        if close:
            fp.close()


# ---------------------------------------------------------------------------
# activity mapping


@dataclass(frozen=True)
class ActivityRule:
    """One 'category glob -> activity' line; activity None means drop."""

    pattern: str
    activity: str | None


@dataclass(frozen=True)
class ActivityMap:
    """Ordered first-match-wins category classifier."""

    rules: tuple[ActivityRule, ...]
    default_activity: str = DEFAULT_ACTIVITY

    @property
    def blocklist(self) -> tuple[str, ...]:
        return tuple(r.pattern for r in self.rules if r.activity is None)

    def activity_labels(self) -> tuple[str, ...]:
        labels = {r.activity for r in self.rules if r.activity is not None}
        labels.add(self.default_activity)
        return tuple(sorted(labels))

    def first_match(self, category: str) -> ActivityRule | None:
        folded = category.casefold()
        for rule in self.rules:
            if fnmatchcase(folded, rule.pattern.casefold()):
                return rule
        return None

    def match(self, category: str) -> str | None:
        """First matching rule's activity; None when dropped; default when unmatched."""
        rule = self.first_match(category)
        return self.default_activity if rule is None else rule.activity


@dataclass(frozen=True)
class TagResult:
    """Tagged (check-in, activity) pairs plus drop/unmatched accounting."""

    tagged: tuple[tuple[CheckIn, str], ...]
    dropped: int
    unmatched: Counter

    def __iter__(self) -> Iterator[tuple[CheckIn, str]]:
        return iter(self.tagged)

    def __len__(self) -> int:
        return len(self.tagged)


def apply_activity_map(
    checkins: Iterable[CheckIn], activity_map: ActivityMap
) -> TagResult:
    """Drop blocklisted categories, tag the rest with their activity."""
    tagged: list[tuple[CheckIn, str]] = []
    dropped = 0
    unmatched: Counter = Counter()
    for c in checkins:
        rule = activity_map.first_match(c.category)
        if rule is None:
            unmatched[c.category] += 1
            tagged.append((c, activity_map.default_activity))
        elif rule.activity is None:
            dropped += 1
        else:
            tagged.append((c, rule.activity))
    return TagResult(tuple(tagged), dropped, unmatched)


# ---------------------------------------------------------------------------
# time windows


_TIME_RE = re.compile(r"^(\d{1,2}):(\d{2})$")


def _parse_minute(text: str) -> int:
    m = _TIME_RE.match(text.strip())
    if not m:
        raise ValueError(f"bad time of day {text!r}, expected HH:MM")
    hour, minute = int(m.group(1)), int(m.group(2))
    if minute > 59 or hour > 24 or (hour == 24 and minute != 0):
        raise ValueError(f"bad time of day {text!r}")
    return hour * 60 + minute


@dataclass(frozen=True)
class WindowSpec:
    """Half-open local-time window [start, end); end may be 24:00."""

    name: str
    start_minute: int
    end_minute: int

    def __post_init__(self) -> None:
        if not (0 <= self.start_minute < self.end_minute <= 24 * 60):
            raise InvalidConfigError(
                f"window {self.name!r}: need 0 <= start < end <= 24:00"
            )

    @classmethod
    def parse(cls, name: str, start: str, end: str) -> "WindowSpec":
        return cls(name, _parse_minute(start), _parse_minute(end))

    def contains(self, minute_of_day: int) -> bool:
        return self.start_minute <= minute_of_day < self.end_minute


DEFAULT_WINDOWS = (
    WindowSpec("morning", 7 * 60, 14 * 60),
    WindowSpec("afternoon", 14 * 60, 24 * 60),
)

GroupKey = tuple[str, str | None]
Groups = dict[GroupKey, list[tuple[CheckIn, str]]]


def resolve_timezone(name: str) -> timezone:
    """'UTC', a fixed offset like '+08:00', or an IANA zone name."""
    text = name.strip()
    if text.upper() in ("UTC", "Z"):
        return timezone.utc
    m = re.match(r"^([+-])(\d{2}):(\d{2})$", text)
    if m:
        sign = 1 if m.group(1) == "+" else -1
        return timezone(sign * timedelta(hours=int(m.group(2)), minutes=int(m.group(3))))
    try:
        from zoneinfo import ZoneInfo

        return ZoneInfo(text)  # type: ignore[return-value]
    except Exception:
        raise InvalidConfigError(f"unknown timezone {name!r}")


def segment_windows(
    tagged: Iterable[tuple[CheckIn, str]],
    windows: Iterable[WindowSpec] = DEFAULT_WINDOWS,
    tz: timezone = timezone.utc,
) -> Groups:
    """Bucket tagged check-ins into (user, window-name) groups by local time.

    A check-in joins every window containing its local time (windows may
    overlap); one outside all windows joins the (user, None) group.
    """
    window_list = list(windows)
    groups: Groups = {}
    for c, activity in tagged:
        local = c.timestamp.astimezone(tz)
        minute = local.hour * 60 + local.minute
        hits = [w.name for w in window_list if w.contains(minute)]
        for key in [(c.user_id, h) for h in hits] or [(c.user_id, None)]:
            groups.setdefault(key, []).append((c, activity))
    return groups


def group_by_user(tagged: Iterable[tuple[CheckIn, str]]) -> Groups:
    """Whole-trip grouping: one (user, None) group per user."""
    groups: Groups = {}
    for c, activity in tagged:
        groups.setdefault((c.user_id, None), []).append((c, activity))
    return groups


# ---------------------------------------------------------------------------
# sequence building


@dataclass(frozen=True)
class TouristSequence:
    """Time-ordered activity elements for one (user, window) group."""

    user_id: str
    window: str | None
    activities: tuple[tuple[str, ...], ...]

    @property
    def seq_id(self) -> str:
        return self.user_id if self.window is None else f"{self.user_id}|{self.window}"


def _coerce_resolution(merge_resolution: timedelta | float) -> timedelta:
    if not isinstance(merge_resolution, timedelta):
        merge_resolution = timedelta(seconds=merge_resolution)
    if merge_resolution < timedelta(0):
        raise InvalidConfigError("merge_resolution must be >= 0")
    return merge_resolution


def build_tourist_sequences(
    groups: Groups, merge_resolution: timedelta | float = timedelta(0)
) -> list[TouristSequence]:
    """One TouristSequence per group, groups ordered by (user, window).

    Within a group, check-ins sort by timestamp (id as tie-break for
    determinism); a check-in lands in the current element while its
    timestamp is within merge_resolution of the element's first (anchor)
    timestamp, otherwise it opens a new element.
    """
    resolution = _coerce_resolution(merge_resolution)
    out = []
    for user_id, window in sorted(groups, key=lambda k: (k[0], k[1] or "")):
        records = sorted(
            groups[(user_id, window)], key=lambda r: (r[0].timestamp, r[0].checkin_id)
        )
        elements: list[tuple[str, ...]] = []
        current: set[str] = set()
        anchor: datetime | None = None
        for c, activity in records:
            if anchor is not None and c.timestamp - anchor <= resolution:
                current.add(activity)
            else:
                if current:
                    elements.append(tuple(sorted(current)))
                current = {activity}
                anchor = c.timestamp
        if current:
            elements.append(tuple(sorted(current)))
        out.append(TouristSequence(user_id, window, tuple(elements)))
    return out


def build_sequences(
    groups: Groups,
    merge_resolution: timedelta | float = timedelta(0),
    dictionary: ItemDictionary | None = None,
) -> SequenceDatabase:
    """Assemble the groups into a SequenceDatabase of activity sequences."""
    tourist_seqs = build_tourist_sequences(groups, merge_resolution)
    if dictionary is None:
        labels = sorted({a for t in tourist_seqs for e in t.activities for a in e})
        dictionary = ItemDictionary.from_labels(labels)
    sequences = tuple(
        canonicalize([list(e) for e in t.activities], dictionary)
        for t in tourist_seqs
    )
    return SequenceDatabase(
        sequences, tuple(t.seq_id for t in tourist_seqs), dictionary
    )


# ---------------------------------------------------------------------------
# config files


def parse_config(text: str) -> tuple[ActivityMap, tuple[WindowSpec, ...]]:
    """Read 'pattern = activity' rules and 'window NAME HH:MM HH:MM' lines.

    Rule order is match order; an activity of '-' drops the category.  Blank
    lines and '#' comments are skipped.  Raises FormatError with the line
    number for anything else.
    """
    rules: list[ActivityRule] = []
    windows: list[WindowSpec] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("window "):
            parts = line.split()
            if len(parts) != 4:
                raise FormatError(
                    f"line {line_no}: expected 'window NAME HH:MM HH:MM'"
                )
            try:
                windows.append(WindowSpec.parse(parts[1], parts[2], parts[3]))
            except (ValueError, InvalidConfigError) as exc:
                raise FormatError(f"line {line_no}: {exc}")
            continue
        if "=" in line:
            pattern, _, activity = line.partition("=")
            pattern = pattern.strip()
            activity = activity.strip()
            if not pattern or not activity:
                raise FormatError(
                    f"line {line_no}: expected 'pattern = activity'"
                )
            rules.append(
                ActivityRule(pattern, None if activity == DROP_MARKER else activity)
            )
            continue
        raise FormatError(f"line {line_no}: unrecognized directive {line!r}")
    return ActivityMap(tuple(rules)), tuple(windows)


def load_config(path: str | Path) -> tuple[ActivityMap, tuple[WindowSpec, ...]]:
    return parse_config(Path(path).read_text(encoding="utf-8"))


def default_config() -> tuple[ActivityMap, tuple[WindowSpec, ...]]:
    """The packaged category map and analysis windows."""
    from importlib.resources import files

    text = files("seqmine.data").joinpath("default.cfg").read_text(encoding="utf-8")
    return parse_config(text)


# ---------------------------------------------------------------------------
# end-to-end convenience


@dataclass(frozen=True)
class PipelineResult:
    database: SequenceDatabase
    tag_result: TagResult = field(repr=False)
    n_groups: int = 0


def run_pipeline(
    checkins: Iterable[CheckIn],
    activity_map: ActivityMap,
    windows: Iterable[WindowSpec] = DEFAULT_WINDOWS,
    tz: timezone = timezone.utc,
    grouping: str = "window",
    merge_resolution: timedelta | float = timedelta(0),
    include_unwindowed: bool = False,
) -> PipelineResult:
    """Tag, group and assemble check-ins into a sequence database.

    grouping 'window' produces one sequence per (user, window); 'trip' one
    per user across the whole stay.  Windowed mode discards the outside-all-
    windows group unless include_unwindowed is set.
    """
    if grouping not in ("window", "trip"):
        raise InvalidConfigError("grouping must be 'window' or 'trip'")
    tag_result = apply_activity_map(checkins, activity_map)
    if grouping == "trip":
        groups = group_by_user(tag_result.tagged)
    else:
        groups = segment_windows(tag_result.tagged, windows, tz)
        if not include_unwindowed:
            groups = {k: v for k, v in groups.items() if k[1] is not None}
    db = build_sequences(groups, merge_resolution)
    return PipelineResult(db, tag_result, len(groups))
