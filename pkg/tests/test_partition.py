from __future__ import annotations

from collections import Counter
from datetime import date as Date

import pytest

from hullcast import DailySummary, region_of, split_by_region
from hullcast.partition import REGION_CODES, REGIONS

from oracles import enumerate_year_dates


class TestRegionOf:
    @pytest.mark.parametrize(
        "month,code",
        [(1, "A"), (2, "A"), (12, "A"), (3, "B"), (4, "B"), (5, "C"), (6, "C"),
         (7, "C"), (8, "D"), (9, "D"), (10, "D"), (11, "D")],
    )
    def test_month_mapping(self, month, code):
        assert region_of(month).code == code

    @pytest.mark.parametrize("month", [0, 13, -1])
    def test_out_of_range(self, month):
        with pytest.raises(ValueError, match="month"):
            region_of(month)

    def test_regions_cover_all_months_disjointly(self):
        seen = Counter(m for r in REGIONS.values() for m in r.months)
        assert set(seen) == set(range(1, 13))
        assert all(count == 1 for count in seen.values())


def _summaries(dates):
    return [DailySummary(d) for d in dates]


class TestSplitByRegion:
    def test_empty_input(self):
        split = split_by_region([])
        assert set(split) == set(REGION_CODES)
        assert all(split[code] == [] for code in REGION_CODES)

    def test_single_january_summary(self):
        split = split_by_region(_summaries([Date(2014, 1, 2)]))
        assert len(split["A"]) == 1
        assert all(split[code] == [] for code in "BCD")

    def test_full_2014_sizes_match_calendar_enumeration(self):
        dates = list(enumerate_year_dates(2014))
        split = split_by_region(_summaries(dates))
        sizes = {code: len(split[code]) for code in REGION_CODES}
        expected = Counter(region_of(d.month).code for d in dates)
        assert sizes == dict(expected)
        assert sizes == {"A": 90, "B": 61, "C": 92, "D": 122}
        assert sum(sizes.values()) == 365

    def test_partition_conserves_and_reorders_nothing(self):
        dates = sorted(enumerate_year_dates(2015), key=lambda d: (d.day, d.month))
        summaries = _summaries(dates)
        split = split_by_region(summaries)
        for code in REGION_CODES:
            in_order = [s for s in summaries if region_of(s.date.month).code == code]
            assert split[code] == in_order
        recombined = sorted((s.date for part in split.values() for s in part))
        assert recombined == sorted(dates)
