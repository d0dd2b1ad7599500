"""Deterministic synthetic check-in generation.

Two built-in shapes: the default tourist corpus (1057 users, 8-10 check-ins
each, categories weighted toward transit hubs, food and shopping, timestamps
concentrated in waking hours of a +08:00 day) and a click-stream shape
(tens of thousands of short sequences, geometric length, mean about 2.3
elements) for miner benchmarking.  All randomness flows from one seeded
generator, so a (config, seed) pair fully determines the output.
"""

from __future__ import annotations

import csv
import json
import random
from dataclasses import dataclass
from datetime import date, datetime, timedelta, timezone
from typing import IO, Iterable

from .checkins import CSV_HEADER, CheckIn
from .errors import InvalidConfigError

GENDERS = ("female", "male", "undisclosed")

DEFAULT_GENDER_WEIGHTS = (3830.0, 3577.0, 207.0)

DEFAULT_ORIGINS = (
    "Indonesia",
    "Malaysia",
    "China",
    "India",
    "Australia",
    "Japan",
    "South Korea",
    "Philippines",
    "Thailand",
    "Vietnam",
    "United Kingdom",
    "United States",
    "Germany",
    "France",
)

#: (category, subcategory, weight); transit hubs lead, food/shopping close.
DEFAULT_CATEGORIES = (
    ("Changi Airport", "Airport", 6.5),
    ("Airport Terminal", "Airport", 2.5),
    ("Airport-Gate", "Airport", 1.8),
    ("Asian Restaurant", "Food", 5.5),
    ("Seafood Restaurant", "Food", 2.5),
    ("Food Court", "Food", 3.2),
    ("Hawker Centre", "Food", 3.4),
    ("Ramen Restaurant", "Food", 1.2),
    ("Coffee Shop", "Food", 3.0),
    ("Juice Bar", "Food", 0.8),
    ("Dessert Shop", "Food", 1.1),
    ("Bubble Tea Shop", "Food", 1.4),
    ("Shopping Mall", "Shop & Service", 6.0),
    ("Department Store", "Shop & Service", 1.8),
    ("Boutique", "Shop & Service", 1.2),
    ("Electronics Store", "Shop & Service", 0.9),
    ("Night Market", "Shop & Service", 1.6),
    ("Wet Market", "Shop & Service", 0.5),
    ("Flea Market", "Shop & Service", 0.4),
    ("Botanical Garden", "Outdoors", 2.8),
    ("Nature Reserve", "Outdoors", 1.4),
    ("Bird Sanctuary", "Outdoors", 0.6),
    ("Nature Trail", "Outdoors", 1.0),
    ("Park", "Outdoors", 4.2),
    ("Hiking Trail", "Outdoors", 1.0),
    ("Mountain Trail", "Outdoors", 0.4),
    ("Promenade", "Outdoors", 1.8),
    ("Boardwalk", "Outdoors", 0.8),
    ("Riverside Walk", "Outdoors", 0.7),
    ("Scenic Lookout", "Outdoors", 1.7),
    ("Observation Deck", "Arts & Entertainment", 1.3),
    ("Campground", "Outdoors", 0.3),
    ("Outdoor Plaza", "Outdoors", 0.6),
    ("Buddhist Temple", "Spiritual", 1.5),
    ("Hindu Temple", "Spiritual", 0.8),
    ("Mosque", "Spiritual", 0.7),
    ("Church", "Spiritual", 0.6),
    ("Theme Park", "Arts & Entertainment", 3.3),
    ("Cinema", "Arts & Entertainment", 1.2),
    ("Night Club", "Nightlife", 1.4),
    ("Concert Hall", "Arts & Entertainment", 0.6),
    ("Casino", "Arts & Entertainment", 1.3),
    ("Video Arcade", "Arts & Entertainment", 0.6),
    ("Museum", "Arts & Entertainment", 2.2),
    ("Art Gallery", "Arts & Entertainment", 1.0),
    ("Convention Center", "Professional", 0.7),
    ("National Archives", "Professional", 0.3),
    ("Library", "Professional", 0.4),
    ("Heritage Site", "Arts & Entertainment", 1.5),
    ("Historic Site", "Arts & Entertainment", 1.1),
    ("Stadium", "Arts & Entertainment", 0.8),
    ("Sports Club", "Recreation", 0.5),
    ("Gym", "Recreation", 0.6),
    ("Fitness Center", "Recreation", 0.4),
    ("Playing Field", "Recreation", 0.5),
    ("Open Field", "Recreation", 0.3),
    ("Spa", "Recreation", 0.9),
    ("Beach", "Outdoors", 2.6),
    ("Recreation Center", "Recreation", 0.5),
    ("Water Park", "Recreation", 0.9),
    ("Hotel", "Travel & Transport", 5.0),
    ("Hostel", "Travel & Transport", 1.2),
    ("Resort", "Travel & Transport", 1.1),
    ("Train Station", "Travel & Transport", 2.4),
    ("MRT Station", "Travel & Transport", 3.0),
    ("Bus Terminal", "Travel & Transport", 1.4),
    ("Cruise Terminal", "Travel & Transport", 0.7),
    ("Tour Agency", "Travel & Transport", 0.5),
    ("Office Building", "Professional", 0.3),
    ("University Campus", "Education", 0.3),
)

#: Relative likelihood of a check-in per local hour (0..23).
DEFAULT_HOUR_WEIGHTS = (
    0.2, 0.1, 0.1, 0.1, 0.1, 0.3, 0.8,
    2.0, 3.0, 4.0, 5.0, 5.5, 5.5, 5.0,
    4.5, 4.0, 4.0, 4.5, 5.0, 5.5, 5.0, 4.0,
    2.5, 1.0,
)


@dataclass(frozen=True)
class GeneratorConfig:
    """Knobs for the synthetic corpus; defaults give the tourist shape."""

    n_users: int = 1057
    checkins_min: int = 8
    checkins_max: int = 10
    length_weights: tuple[tuple[int, float], ...] | None = None
    categories: tuple[tuple[str, str, float], ...] = DEFAULT_CATEGORIES
    origins: tuple[str, ...] = DEFAULT_ORIGINS
    gender_weights: tuple[float, float, float] = DEFAULT_GENDER_WEIGHTS
    start_date: date = date(2017, 3, 1)
    n_days: int = 120
    max_trip_days: int = 3
    hour_weights: tuple[float, ...] = DEFAULT_HOUR_WEIGHTS
    lat_range: tuple[float, float] = (1.24, 1.46)
    lon_range: tuple[float, float] = (103.60, 104.04)
    utc_offset_minutes: int = 480

    def __post_init__(self) -> None:
        if self.n_users < 0:
            raise InvalidConfigError("n_users must be >= 0")
        if self.length_weights is None:
            if not 1 <= self.checkins_min <= self.checkins_max:
                raise InvalidConfigError(
                    "need 1 <= checkins_min <= checkins_max"
                )
        else:
            if not self.length_weights or any(
                k < 1 or w <= 0 for k, w in self.length_weights
            ):
                raise InvalidConfigError(
                    "length_weights needs positive counts and weights"
                )
        if not self.categories or any(w <= 0 for _, _, w in self.categories):
            raise InvalidConfigError("categories need positive weights")
        if len(self.hour_weights) != 24 or any(w < 0 for w in self.hour_weights):
            raise InvalidConfigError("hour_weights must be 24 non-negative values")
        if sum(self.hour_weights) <= 0:
            raise InvalidConfigError("hour_weights must not be all zero")
        if len(self.gender_weights) != len(GENDERS) or any(
            w <= 0 for w in self.gender_weights
        ):
            raise InvalidConfigError("gender_weights must be three positive values")
        if not self.origins:
            raise InvalidConfigError("origins must be non-empty")
        if self.n_days < 1 or self.max_trip_days < 1:
            raise InvalidConfigError("n_days and max_trip_days must be >= 1")
        if not (-90 <= self.lat_range[0] <= self.lat_range[1] <= 90):
            raise InvalidConfigError("bad lat_range")
        if not (-180 <= self.lon_range[0] <= self.lon_range[1] <= 180):
            raise InvalidConfigError("bad lon_range")


SINGAPORE_SHAPE = GeneratorConfig()


def bms_shape(n_sequences: int = 30000) -> GeneratorConfig:
    """Click-stream shape: many short sequences, geometric length, mean ~2.3.

    Length k gets weight q^(k-1) with q chosen so the untruncated mean is
    2.3; truncation at 12 shifts the realized mean by well under 1%.
    """
    q = 1.0 - 1.0 / 2.3
    weights = tuple((k, q ** (k - 1)) for k in range(1, 13))
    return GeneratorConfig(n_users=n_sequences, length_weights=weights)


def generate_synthetic(cfg: GeneratorConfig, seed: int) -> list[CheckIn]:
    """The full check-in list for (cfg, seed); same inputs, same output."""
    rng = random.Random(seed)
    cat_weights = [w for _, _, w in cfg.categories]
    hour_choices = range(24)
    if cfg.length_weights is not None:
        length_values = [k for k, _ in cfg.length_weights]
        length_weights = [w for _, w in cfg.length_weights]
    offset = timedelta(minutes=cfg.utc_offset_minutes)
    base = datetime.combine(cfg.start_date, datetime.min.time())
    out: list[CheckIn] = []
    counter = 0
    for u in range(cfg.n_users):
        user_id = f"u{u:05d}"
        gender = rng.choices(GENDERS, weights=cfg.gender_weights)[0]
        origin = rng.choice(cfg.origins)
        if cfg.length_weights is None:
            n = rng.randint(cfg.checkins_min, cfg.checkins_max)
        else:
            n = rng.choices(length_values, weights=length_weights)[0]
        first_day = rng.randrange(cfg.n_days)
        trip_days = rng.randint(1, cfg.max_trip_days)
        stamps = []
        for _ in range(n):
            day = first_day + rng.randrange(trip_days)
            hour = rng.choices(hour_choices, weights=cfg.hour_weights)[0]
            minute = rng.randrange(60)
            stamps.append(base + timedelta(days=day, hours=hour, minutes=minute))
        stamps.sort()
        for local in stamps:
            counter += 1
            category, subcategory, _ = cfg.categories[
                rng.choices(range(len(cfg.categories)), weights=cat_weights)[0]
            ]
            lat = round(rng.uniform(*cfg.lat_range), 6)
            lon = round(rng.uniform(*cfg.lon_range), 6)
            out.append(
                CheckIn(
                    checkin_id=f"c{counter:07d}",
                    user_id=user_id,
                    timestamp=(local - offset).replace(tzinfo=timezone.utc),
                    lat=lat,
                    lon=lon,
                    category=category,
                    subcategory=subcategory,
                    gender=gender,
                    origin=origin,
                )
            )
    return out


def serialize_checkins(
    checkins: Iterable[CheckIn], fp: IO[str], format: str = "csv"
) -> None:
    """Write check-ins in the exact on-disk format parse_checkins reads."""
    if format not in ("csv", "jsonl"):
        raise ValueError("format must be 'csv' or 'jsonl'")
    if format == "csv":
        writer = csv.writer(fp)
        writer.writerow(CSV_HEADER)
        for c in checkins:
            writer.writerow(
                [
                    c.checkin_id,
                    c.user_id,
                    c.timestamp.astimezone(timezone.utc).isoformat(),
                    f"{c.lat:.6f}",
                    f"{c.lon:.6f}",
                    c.category,
                    c.subcategory,
                    c.gender or "",
                    c.origin or "",
                ]
            )
    else:
        for c in checkins:
            fp.write(
                json.dumps(
                    {
                        "checkin_id": c.checkin_id,
                        "user_id": c.user_id,
                        "timestamp": c.timestamp.astimezone(timezone.utc).isoformat(),
                        "lat": round(c.lat, 6),
                        "lon": round(c.lon, 6),
                        "category": c.category,
                        "subcategory": c.subcategory,
                        "gender": c.gender,
                        "origin": c.origin,
                    }
                )
                + "\n"
            )
