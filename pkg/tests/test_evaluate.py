from __future__ import annotations

import json
import random
from datetime import date as Date
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hullcast import ForecastRecord, accuracy, build_report, score_day
from hullcast.evaluate import write_report_csv, write_report_json


class TestScoreDay:
    def test_inside_range_hits(self):
        assert score_day(24, 27, 26.0) is True

    def test_boundary_inclusive(self):
        assert score_day(22, 26, 22.0) is True
        assert score_day(22, 26, 26.0) is True

    def test_outside_misses(self):
        assert score_day(24, 27, 23.0) is False

    def test_inverted_range_rejected(self):
        with pytest.raises(ValueError, match="exceeds"):
            score_day(27, 24, 25.0)


class TestAccuracy:
    def test_headline_value(self):
        pct, display = accuracy(284, 365)
        assert pct == Fraction(28400, 365)
        assert float(pct) == pytest.approx(77.808, abs=1e-3)
        assert display == "78%"

    def test_zero_hits(self):
        assert accuracy(0, 10) == (Fraction(0), "0%")

    def test_all_hits(self):
        assert accuracy(10, 10) == (Fraction(100), "100%")

    def test_empty_total(self):
        assert accuracy(0, 0) == (Fraction(0), "n/a")

    def test_hits_beyond_total_rejected(self):
        with pytest.raises(ValueError, match="hits"):
            accuracy(11, 10)
        with pytest.raises(ValueError, match="hits"):
            accuracy(-1, 10)

    @settings(deadline=None, max_examples=200)
    @given(st.integers(min_value=1, max_value=10_000), st.data())
    def test_complement_identity_exact(self, total, data):
        hits = data.draw(st.integers(min_value=0, max_value=total))
        assert accuracy(hits, total)[0] + accuracy(total - hits, total)[0] == 100


def _forecast(day, low, high, category="mild"):
    return ForecastRecord(day, "A", 0, low, high, category)


FOUR_DAYS = [
    _forecast(Date(2014, 1, 1), 24, 27, "smog, fog and haze"),
    _forecast(Date(2014, 1, 2), 24, 27, "smog and mist"),
    _forecast(Date(2014, 1, 3), 22, 26, "dry mist"),
    _forecast(Date(2014, 1, 4), 22, 26, "haze and smoke"),
]
FOUR_ACTUALS = {
    Date(2014, 1, 1): 26.0,
    Date(2014, 1, 2): 27.0,
    Date(2014, 1, 3): 23.0,
    Date(2014, 1, 4): 24.0,
}


class TestBuildReport:
    def test_result_table_fixture_all_hits(self):
        # four early-January rows, every actual inside its range
        report = build_report(FOUR_DAYS, FOUR_ACTUALS)
        assert report.hits == 4
        assert report.total == 4
        assert report.accuracy_percent == 100.0
        assert [r.hit for r in report.rows] == [True] * 4

    def test_empty_join(self):
        report = build_report([], {Date(2014, 1, 1): 20.0})
        assert report.total == 0
        assert report.accuracy_display == "n/a"
        assert report.unmatched_actuals == 1

    def test_unmatched_counted_separately(self):
        forecasts = FOUR_DAYS + [_forecast(Date(2014, 2, 1), 20, 24)]
        report = build_report(forecasts, FOUR_ACTUALS)
        assert report.total == 4
        assert report.unmatched_forecasts == 1
        assert report.unmatched_actuals == 0

    def test_shuffled_input_identical_report(self):
        shuffled = list(FOUR_DAYS)
        random.Random(3).shuffle(shuffled)
        assert build_report(shuffled, FOUR_ACTUALS) == build_report(FOUR_DAYS, FOUR_ACTUALS)

    def test_aggregates_consistent_with_rows(self):
        actuals = dict(FOUR_ACTUALS)
        actuals[Date(2014, 1, 3)] = 10.0  # force one miss
        report = build_report(FOUR_DAYS, actuals)
        assert report.hits == sum(1 for r in report.rows if r.hit) == 3
        assert report.accuracy_percent == pytest.approx(75.0)
        assert report.accuracy_display == "75%"

    def test_duplicate_forecast_dates_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            build_report([FOUR_DAYS[0], FOUR_DAYS[0]], FOUR_ACTUALS)


class TestReportArtifacts:
    def test_csv_rows_and_trailing_summary(self, tmp_path):
        report = build_report(FOUR_DAYS, FOUR_ACTUALS)
        path = tmp_path / "report.csv"
        write_report_csv(report, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "date,predicted_range_c,actual_c,hit,miss,category"
        assert lines[1] == '2014-01-01,24-27,26.0,*,,"smog, fog and haze"'
        assert lines[-1] == "accuracy,4/4,,,,100%"

    def test_json_twin_matches(self, tmp_path):
        report = build_report(FOUR_DAYS, FOUR_ACTUALS)
        path = tmp_path / "report.json"
        write_report_json(report, path)
        doc = json.loads(path.read_text())
        assert doc["hits"] == 4
        assert doc["total"] == 4
        assert doc["accuracy_display"] == "100%"
        assert doc["rows"][0]["date"] == "2014-01-01"
        assert doc["rows"][0]["hit"] is True
