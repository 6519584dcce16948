"""Parsing and per-day grouping of hourly pollutant readings.

Input is a CSV with header ``date,hour,pollutant,value`` (ISO dates, hour
0-23, one of the five pollutant codes, nonnegative concentration in the
unit configured for that pollutant). Observed daily temperatures arrive
through a second CSV with header ``date,temp_c``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from datetime import date as Date
from pathlib import Path
from typing import IO, Iterable, Union

POLLUTANTS = ("CO", "NO2", "O3", "PM10", "SO2")

READINGS_HEADER = ("date", "hour", "pollutant", "value")
TEMPERATURE_HEADER = ("date", "temp_c")

Source = Union[str, Path, IO[str]]


class IngestError(ValueError):
    """Invalid input data. ``line`` is the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class HourlyReading:
    """One pollutant concentration measured at a given hour of a day."""

    date: Date
    hour: int
    pollutant: str
    value: float


@dataclass(frozen=True)
class DaySeries:
    """One day's measurements of one pollutant, as (hour, value) pairs.

    Hours are strictly increasing; between 1 and 24 points.
    """

    date: Date
    pollutant: str
    points: tuple[tuple[int, float], ...]

    def values(self) -> list[float]:
        return [v for _, v in self.points]


def _rows(source: Source):
    if isinstance(source, (str, Path)):
        with open(source, newline="", encoding="utf-8") as fh:
            yield from csv.reader(fh)
    else:
        yield from csv.reader(source)


def _check_header(row: list[str], expected: tuple[str, ...]) -> None:
    if tuple(h.strip().lower() for h in row) != expected:
        raise IngestError(f"expected header {','.join(expected)!r}, got {','.join(row)!r}", line=1)


def parse_hourly_csv(source: Source) -> list[HourlyReading]:
    """Parse a readings CSV into validated readings.

    Duplicate (date, hour, pollutant) keys are resolved last-row-wins, keeping
    the position of the first occurrence; any malformed row, negative or
    non-finite value, or unknown pollutant code raises :class:`IngestError`
    naming the offending line.
    """
    readings: dict[tuple[Date, int, str], HourlyReading] = {}
    header_seen = False
    for lineno, row in enumerate(_rows(source), start=1):
        if not header_seen:
            _check_header(row, READINGS_HEADER)
            header_seen = True
            continue
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != 4:
            raise IngestError(f"expected 4 columns, got {len(row)}", line=lineno)
        raw_date, raw_hour, pollutant, raw_value = (c.strip() for c in row)
        try:
            day = Date.fromisoformat(raw_date)
        except ValueError:
            raise IngestError(f"unparsable date {raw_date!r}", line=lineno) from None
        try:
            hour = int(raw_hour)
        except ValueError:
            raise IngestError(f"unparsable hour {raw_hour!r}", line=lineno) from None
        if not 0 <= hour <= 23:
            raise IngestError(f"hour {hour} outside 0-23", line=lineno)
        if pollutant not in POLLUTANTS:
            raise IngestError(f"unknown pollutant code {pollutant!r}", line=lineno)
        try:
            value = float(raw_value)
        except ValueError:
            raise IngestError(f"unparsable value {raw_value!r}", line=lineno) from None
        if not math.isfinite(value):
            raise IngestError(f"non-finite value {raw_value!r}", line=lineno)
        if value < 0:
            raise IngestError(f"negative value {value}", line=lineno)
        # last row wins; dict assignment keeps the first occurrence's position
        readings[(day, hour, pollutant)] = HourlyReading(day, hour, pollutant, value)
    if not header_seen:
        raise IngestError("empty input, header row required", line=1)
    return list(readings.values())


def parse_temperature_csv(source: Source) -> dict[Date, float]:
    """Parse a ``date,temp_c`` CSV into a date -> Celsius map (last row wins)."""
    temps: dict[Date, float] = {}
    header_seen = False
    for lineno, row in enumerate(_rows(source), start=1):
        if not header_seen:
            _check_header(row, TEMPERATURE_HEADER)
            header_seen = True
            continue
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != 2:
            raise IngestError(f"expected 2 columns, got {len(row)}", line=lineno)
        raw_date, raw_temp = (c.strip() for c in row)
        try:
            day = Date.fromisoformat(raw_date)
        except ValueError:
            raise IngestError(f"unparsable date {raw_date!r}", line=lineno) from None
        try:
            temp = float(raw_temp)
        except ValueError:
            raise IngestError(f"unparsable temperature {raw_temp!r}", line=lineno) from None
        if not math.isfinite(temp):
            raise IngestError(f"non-finite temperature {raw_temp!r}", line=lineno)
        temps[day] = temp
    if not header_seen:
        raise IngestError("empty input, header row required", line=1)
    return temps


def group_daily(
    readings: Iterable[HourlyReading], min_hours: int = 12
) -> tuple[dict[tuple[Date, str], DaySeries], list[tuple[Date, str]]]:
    """Group validated readings into per-(date, pollutant) series.

    Series with fewer than ``min_hours`` points are reported in the returned
    incomplete-key list and left out of the map. Each series is sorted by
    hour; output order is sorted by (date, pollutant) so downstream artifacts
    are deterministic regardless of input order.
    """
    if not 1 <= min_hours <= 24:
        raise ValueError(f"min_hours must be in 1-24, got {min_hours}")
    buckets: dict[tuple[Date, str], dict[int, float]] = {}
    for r in readings:
        buckets.setdefault((r.date, r.pollutant), {})[r.hour] = r.value
    series: dict[tuple[Date, str], DaySeries] = {}
    incomplete: list[tuple[Date, str]] = []
    for key in sorted(buckets):
        by_hour = buckets[key]
        if len(by_hour) < min_hours:
            incomplete.append(key)
            continue
        day, pollutant = key
        points = tuple(sorted(by_hour.items()))
        series[key] = DaySeries(day, pollutant, points)
    return series, incomplete
