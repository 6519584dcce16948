"""Temperature-range prediction from priority-weighted cluster history.

Up to three previous years contribute, weighted by the triple
``[(1/3 - alpha), alpha, 1/3]`` for years one, two and three back. The raw
triple sums to 2/3, so weights are renormalized to sum 1 over the years that
actually have matching history. A year's pool is the observed temperatures
of same-region, same-cluster days within a +/- window of the target's
anniversary date.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from datetime import date as Date
from datetime import timedelta
from pathlib import Path
from typing import Iterable, Mapping, Sequence

YEARS_BACK = (1, 2, 3)
DEFAULT_ALPHA = 0.25
DEFAULT_WINDOW_DAYS = 7
DEFAULT_HALF_WIDTH_FLOOR_C = 1.5


class NoHistoryError(ValueError):
    """Raised when every candidate year's history pool is empty."""


@dataclass(frozen=True)
class PriorityWeights:
    """Raw and normalized weights keyed by years-back, over available years."""

    alpha: float
    raw: dict[int, float]
    normalized: dict[int, float]


def priority_weights(alpha: float, available_years: Iterable[int]) -> PriorityWeights:
    """Restrict the weight triple to the available years and normalize.

    ``alpha`` must lie in [0, 1/3] so every raw weight is nonnegative. The
    degenerate corner (alpha = 1/3 with only last year available) leaves zero
    total weight and is rejected.
    """
    if not 0.0 <= alpha <= 1.0 / 3.0:
        raise ValueError(f"alpha must be in [0, 1/3], got {alpha}")
    years = sorted(set(available_years))
    if not years:
        raise ValueError("no available years")
    if any(y not in YEARS_BACK for y in years):
        raise ValueError(f"available years must be within {YEARS_BACK}, got {years}")
    full = {1: 1.0 / 3.0 - alpha, 2: alpha, 3: 1.0 / 3.0}
    raw = {y: full[y] for y in years}
    total = sum(raw.values())
    if total <= 0.0:
        # boundary alphas zero out a year's weight; if only zero-weight years
        # are available there is nothing to normalize over
        raise ValueError(f"available years {years} carry zero total weight at alpha={alpha}")
    normalized = {y: w / total for y, w in raw.items()}
    return PriorityWeights(alpha=alpha, raw=raw, normalized=normalized)


@dataclass(frozen=True)
class ArchiveDay:
    """One historical day: its region, assigned cluster, and observed temp."""

    date: Date
    region: str
    cluster: int
    temp: float


def _anniversary(day: Date, years_back: int) -> Date:
    try:
        return day.replace(year=day.year - years_back)
    except ValueError:  # Feb 29 anchored to Feb 28 in non-leap years
        return day.replace(year=day.year - years_back, day=28)


def historical_pool(
    target: Date,
    region: str,
    cluster_id: int,
    archive: Iterable[ArchiveDay],
    years_back: int,
    window_days: int = DEFAULT_WINDOW_DAYS,
) -> list[float]:
    """Temperatures of matching archive days near the target's anniversary.

    Matching means same region and same cluster id, dated within
    ``window_days`` either side of the target's month-day ``years_back``
    years ago; the window runs on real dates, so it wraps year boundaries.
    """
    if years_back not in YEARS_BACK:
        raise ValueError(f"years_back must be one of {YEARS_BACK}, got {years_back}")
    anchor = _anniversary(target, years_back)
    lo = anchor - timedelta(days=window_days)
    hi = anchor + timedelta(days=window_days)
    return [
        day.temp
        for day in archive
        if day.region == region and day.cluster == cluster_id and lo <= day.date <= hi
    ]


def _mean(xs: Sequence[float]) -> float:
    return sum(xs) / len(xs)


def _pstd(xs: Sequence[float]) -> float:
    m = _mean(xs)
    return math.sqrt(sum((x - m) ** 2 for x in xs) / len(xs))


def predict_temp_range(
    weights: PriorityWeights,
    pools: Mapping[int, Sequence[float]],
    half_width_floor: float = DEFAULT_HALF_WIDTH_FLOOR_C,
) -> tuple[float, float]:
    """Weighted center +/- half-width from the per-year temperature pools.

    The center is the weighted mean of per-year pool means; the half-width is
    the weighted mean of per-year pool standard deviations, floored at
    ``half_width_floor`` so degenerate pools still produce a usable span.
    ``weights`` must be normalized over exactly the non-empty pools.
    """
    non_empty = {y: list(p) for y, p in pools.items() if len(p) > 0}
    if not non_empty:
        raise NoHistoryError("all history pools are empty")
    if set(weights.normalized) != set(non_empty):
        raise ValueError(
            f"weights cover years {sorted(weights.normalized)} but non-empty pools are {sorted(non_empty)}"
        )
    center = sum(w * _mean(non_empty[y]) for y, w in weights.normalized.items())
    spread = sum(w * _pstd(non_empty[y]) for y, w in weights.normalized.items())
    half_width = max(half_width_floor, spread)
    return center - half_width, center + half_width


def report_range(low: float, high: float) -> tuple[int, int]:
    """Truncate a predicted range to whole degrees for reporting."""
    return math.trunc(low), math.trunc(high)


@dataclass(frozen=True)
class ForecastRecord:
    """A reported (integer-degree) range and weather category for one date."""

    date: Date
    region: str
    cluster: int
    low_c: int
    high_c: int
    category: str

    def __post_init__(self):
        if self.low_c > self.high_c:
            raise ValueError(f"low {self.low_c} exceeds high {self.high_c}")


CategoryMap = Mapping[tuple[str, int], str]


def categorize(region: str, cluster_id: int, category_map: CategoryMap) -> str:
    """Look up the configured label for a (region, cluster) pair, verbatim."""
    try:
        return category_map[(region, cluster_id)]
    except KeyError:
        raise KeyError(
            f"no category configured for region {region!r} cluster {cluster_id}"
        ) from None


FORECAST_HEADER = ("date", "region", "cluster", "low_c", "high_c", "category")


def write_forecast_csv(records: Iterable[ForecastRecord], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(FORECAST_HEADER)
        for r in sorted(records, key=lambda r: r.date):
            writer.writerow(
                [r.date.isoformat(), r.region, r.cluster, r.low_c, r.high_c, r.category]
            )


def read_forecast_csv(path: str | Path) -> list[ForecastRecord]:
    records = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip().lower() for h in header) != FORECAST_HEADER:
            raise ValueError(f"{path}: expected header {','.join(FORECAST_HEADER)!r}")
        for row in reader:
            if not row:
                continue
            records.append(
                ForecastRecord(
                    date=Date.fromisoformat(row[0]),
                    region=row[1],
                    cluster=int(row[2]),
                    low_c=int(row[3]),
                    high_c=int(row[4]),
                    category=row[5],
                )
            )
    return records


def threshold_condition(
    low: float, high: float, thresholds: Sequence[tuple[float, str]]
) -> str:
    """Label of the first threshold whose bound covers the range center.

    ``thresholds`` is an ascending list of (max_center_c, label); the final
    entry acts as the catch-all.
    """
    if not thresholds:
        raise ValueError("empty threshold table")
    bounds = [b for b, _ in thresholds]
    if any(b1 > b2 for b1, b2 in zip(bounds, bounds[1:])):
        raise ValueError("thresholds must be sorted ascending by bound")
    center = (low + high) / 2.0
    for bound, label in thresholds:
        if center <= bound:
            return label
    return thresholds[-1][1]
