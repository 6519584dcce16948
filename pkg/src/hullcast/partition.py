"""Month-based seasonal regions A-D and the per-region database split.

The four regions are part of the published method and are compiled in:
A (Dec, Jan, Feb) winter; B (Mar, Apr) and D (Aug-Nov) temperate;
C (May, Jun, Jul) summer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .hull import DailySummary

REGION_CODES = ("A", "B", "C", "D")


@dataclass(frozen=True)
class SeasonRegion:
    code: str
    months: frozenset[int]


REGIONS: dict[str, SeasonRegion] = {
    "A": SeasonRegion("A", frozenset({12, 1, 2})),
    "B": SeasonRegion("B", frozenset({3, 4})),
    "C": SeasonRegion("C", frozenset({5, 6, 7})),
    "D": SeasonRegion("D", frozenset({8, 9, 10, 11})),
}

_MONTH_TO_REGION = {m: region for region in REGIONS.values() for m in region.months}


def region_of(month: int) -> SeasonRegion:
    """The unique region owning a calendar month (1-12)."""
    if not 1 <= int(month) <= 12:
        raise ValueError(f"month must be in 1-12, got {month}")
    return _MONTH_TO_REGION[int(month)]


def split_by_region(summaries: Iterable[DailySummary]) -> dict[str, list[DailySummary]]:
    """Split summaries into the four regions, preserving in-region order."""
    split: dict[str, list[DailySummary]] = {code: [] for code in REGION_CODES}
    for summary in summaries:
        split[region_of(summary.date.month).code].append(summary)
    return split
