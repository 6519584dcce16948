"""Hit/miss scoring of forecasts against observed temperatures.

A day is a hit when the observed temperature falls inside the predicted
range, inclusive at both ends. Accuracy is the exact rational
100 * hits / total, displayed rounded to the nearest whole percent.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from datetime import date as Date
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping

from .forecast import ForecastRecord


def score_day(low: float, high: float, actual: float) -> bool:
    """True iff low <= actual <= high."""
    if low > high:
        raise ValueError(f"low {low} exceeds high {high}")
    return low <= actual <= high


def accuracy(hits: int, total: int) -> tuple[Fraction, str]:
    """Exact percentage plus its display string.

    Returns the exact rational 100*hits/total (a :class:`Fraction`; call
    ``float()`` on it for a decimal) and the display form rounded to the
    nearest integer percent. An empty total is defined as 0 with "n/a".
    """
    if total < 0:
        raise ValueError(f"total must be >= 0, got {total}")
    if hits < 0 or hits > total:
        raise ValueError(f"hits must be in [0, total], got hits={hits} total={total}")
    if total == 0:
        return Fraction(0), "n/a"
    pct = Fraction(100 * hits, total)
    return pct, f"{round(pct)}%"


@dataclass(frozen=True)
class ReportRow:
    date: Date
    low_c: float
    high_c: float
    actual_c: float
    hit: bool
    category: str


@dataclass(frozen=True)
class EvaluationReport:
    rows: tuple[ReportRow, ...]
    hits: int
    total: int
    accuracy_percent: float
    accuracy_display: str
    unmatched_forecasts: int
    unmatched_actuals: int


def build_report(
    forecasts: Iterable[ForecastRecord], actuals: Mapping[Date, float]
) -> EvaluationReport:
    """Join forecasts with observations on date and aggregate hit/miss.

    Dates present on only one side are excluded from the rows and counted
    separately. Rows come out sorted by date, so the report is invariant
    under permutation of its inputs.
    """
    forecasts = list(forecasts)
    by_date = {f.date: f for f in forecasts}
    if len(by_date) != len(forecasts):
        raise ValueError("duplicate forecast dates")
    rows = []
    for day in sorted(by_date):
        if day not in actuals:
            continue
        f = by_date[day]
        actual = actuals[day]
        rows.append(
            ReportRow(
                date=day,
                low_c=f.low_c,
                high_c=f.high_c,
                actual_c=actual,
                hit=score_day(f.low_c, f.high_c, actual),
                category=f.category,
            )
        )
    hits = sum(1 for r in rows if r.hit)
    total = len(rows)
    pct, display = accuracy(hits, total)
    return EvaluationReport(
        rows=tuple(rows),
        hits=hits,
        total=total,
        accuracy_percent=float(pct),
        accuracy_display=display,
        unmatched_forecasts=len(by_date) - total,
        unmatched_actuals=len(set(actuals) - set(by_date)),
    )


REPORT_HEADER = ("date", "predicted_range_c", "actual_c", "hit", "miss", "category")


def write_report_csv(report: EvaluationReport, path: str | Path) -> None:
    """Result-table CSV: one row per scored day plus a trailing summary line."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(REPORT_HEADER)
        for r in report.rows:
            writer.writerow(
                [
                    r.date.isoformat(),
                    f"{r.low_c:.0f}-{r.high_c:.0f}",
                    repr(float(r.actual_c)),
                    "*" if r.hit else "",
                    "" if r.hit else "*",
                    r.category,
                ]
            )
        writer.writerow(
            ["accuracy", f"{report.hits}/{report.total}", "", "", "", report.accuracy_display]
        )


def report_to_dict(report: EvaluationReport) -> dict:
    return {
        "rows": [
            {
                "date": r.date.isoformat(),
                "low_c": float(r.low_c),
                "high_c": float(r.high_c),
                "actual_c": float(r.actual_c),
                "hit": r.hit,
                "category": r.category,
            }
            for r in report.rows
        ],
        "hits": report.hits,
        "total": report.total,
        "accuracy_percent": report.accuracy_percent,
        "accuracy_display": report.accuracy_display,
        "unmatched_forecasts": report.unmatched_forecasts,
        "unmatched_actuals": report.unmatched_actuals,
    }


def write_report_json(report: EvaluationReport, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
