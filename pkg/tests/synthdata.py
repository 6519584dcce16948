"""Synthetic multi-year dataset with planted cluster structure.

Each day draws one of three pollutant archetypes (well separated in every
dimension); its hourly readings wobble a few percent around the archetype,
and its temperature sits in a band determined by the archetype. Bands are
12 degrees apart with +/-0.5 degree noise, so a pipeline that actually uses
cluster-matched history predicts almost every day, while shuffled
temperatures leave nothing to match on.
"""

from __future__ import annotations

import math
from datetime import date as Date
from datetime import timedelta
from pathlib import Path

import numpy as np

from hullcast.ingest import POLLUTANTS

ARCHETYPES = np.array(
    [
        [1.0, 60.0, 8.0, 70.0, 3.0],
        [2.5, 130.0, 17.0, 150.0, 4.8],
        [4.0, 200.0, 26.0, 220.0, 6.5],
    ]
)
# middle band centered, outer bands one spread either side; the 0.35/0.30/0.35
# draw keeps ~70% of days outside +/- one global standard deviation
TEMP_BANDS = (10.0, 22.0, 34.0)
CLUSTER_PROBS = (0.35, 0.30, 0.35)


def planted_cluster(rng: np.random.Generator) -> int:
    return int(rng.choice(len(ARCHETYPES), p=CLUSTER_PROBS))


def day_readings(day: Date, cluster: int, rng: np.random.Generator, hours: int = 24):
    """CSV rows for one day's hourly readings of all five pollutants."""
    rows = []
    for hour in range(hours):
        swing = 1.0 + 0.05 * math.sin(2.0 * math.pi * hour / 24.0)
        for p, base in zip(POLLUTANTS, ARCHETYPES[cluster]):
            value = base * (swing + rng.normal(0.0, 0.02))
            rows.append(f"{day.isoformat()},{hour:02d},{p},{max(value, 0.0):.3f}")
    return rows


def day_temperature(cluster: int, rng: np.random.Generator) -> float:
    return TEMP_BANDS[cluster] + rng.uniform(-0.5, 0.5)


def generate_dataset(
    target_dir: Path,
    start_year: int = 2014,
    years: int = 3,
    seed: int = 1234,
    hours: int = 24,
    day_step: int = 1,
) -> tuple[Path, Path]:
    """Write readings.csv and temps.csv covering the given whole years."""
    rng = np.random.default_rng(seed)
    target_dir.mkdir(parents=True, exist_ok=True)
    reading_lines = ["date,hour,pollutant,value"]
    temp_lines = ["date,temp_c"]
    day = Date(start_year, 1, 1)
    end = Date(start_year + years - 1, 12, 31)
    while day <= end:
        cluster = planted_cluster(rng)
        reading_lines += day_readings(day, cluster, rng, hours=hours)
        temp_lines.append(f"{day.isoformat()},{day_temperature(cluster, rng):.2f}")
        day += timedelta(days=day_step)
    readings_csv = target_dir / "readings.csv"
    temps_csv = target_dir / "temps.csv"
    readings_csv.write_text("\n".join(reading_lines) + "\n", encoding="utf-8")
    temps_csv.write_text("\n".join(temp_lines) + "\n", encoding="utf-8")
    return readings_csv, temps_csv


def write_config(
    target_dir: Path,
    *,
    k: int = 3,
    seed: int = 97,
    out_dir: str = "out",
    temperature_csv: str = "temps.csv",
    ga_population: int = 20,
    ga_generations: int = 40,
    extra: str = "",
    name: str = "pipeline.toml",
) -> Path:
    """A workable TOML config next to the generated CSVs."""
    text = f"""\
readings_csv = "readings.csv"
temperature_csv = "{temperature_csv}"
out_dir = "{out_dir}"
k = {k}
alpha = 0.25
min_hours = 12
match_window_days = 7
half_width_floor_c = 1.5
seed = {seed}
thresholds = [[16.0, "cold and dry"], [28.0, "mild with haze"], [inf, "hot and humid"]]

[ga]
population = {ga_population}
generations = {ga_generations}
{extra}"""
    path = target_dir / name
    path.write_text(text, encoding="utf-8")
    return path
