"""Strict 2-D convex hulls of (hour, value) series and daily summaries.

A day's pollutant series is plotted as (hour, value) points, its convex hull
is taken, and the mean of the hull vertices' values becomes that pollutant's
single daily "structural" value. Hulls are strict: collinear boundary points
are not vertices, and an all-collinear series reduces to its two extreme
points (one point if all coincide).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from datetime import date as Date
from decimal import ROUND_DOWN, Decimal
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .ingest import POLLUTANTS, DaySeries

Point = tuple[float, float]


def _cross(o: Point, a: Point, b: Point) -> float:
    """z-component of (a-o) x (b-o); positive when o->a->b turns left."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class HullPolygon:
    """Strict convex hull, counterclockwise from the lowest-x vertex.

    Every vertex is one of the input points and no three consecutive
    vertices are collinear. Degenerate inputs yield a 2-vertex segment or a
    single point.
    """

    vertices: tuple[Point, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def contains(self, point: Sequence[float], eps: float = 0.0) -> bool:
        """Inside-or-on test via cross-product signs against each edge."""
        p = (float(point[0]), float(point[1]))
        verts = self.vertices
        if len(verts) == 1:
            return abs(p[0] - verts[0][0]) <= eps and abs(p[1] - verts[0][1]) <= eps
        if len(verts) == 2:
            a, b = verts
            if abs(_cross(a, b, p)) > eps:
                return False
            lo_x, hi_x = min(a[0], b[0]), max(a[0], b[0])
            lo_y, hi_y = min(a[1], b[1]), max(a[1], b[1])
            return lo_x - eps <= p[0] <= hi_x + eps and lo_y - eps <= p[1] <= hi_y + eps
        return all(
            _cross(verts[i], verts[(i + 1) % len(verts)], p) >= -eps
            for i in range(len(verts))
        )


def monotone_chain_hull(points: Iterable[Sequence[float]]) -> HullPolygon:
    """Compute the strict convex hull with Andrew's monotone chain.

    Points may repeat and need not be sorted. Collinear pops use a
    cross-product >= 0 test so boundary points strictly between vertices are
    rejected; the polygon comes out counterclockwise starting at the
    lexicographically smallest vertex.
    """
    pts = sorted({(float(p[0]), float(p[1])) for p in points})
    if not pts:
        raise ValueError("convex hull of an empty point set")
    if len(pts) == 1:
        return HullPolygon((pts[0],))
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return HullPolygon(tuple(lower[:-1] + upper[:-1]))


def hull_vertex_values(series: DaySeries) -> list[float]:
    """Values at the hull vertices of the (hour, value) plot.

    Each vertex contributes once; shared endpoints of the upper and lower
    chains are not double counted. A constant series keeps its two extreme
    hour endpoints, so its value appears twice.
    """
    polygon = monotone_chain_hull(series.points)
    return [y for _, y in polygon.vertices]


def daily_hull_mean(series: DaySeries) -> float:
    """Arithmetic mean of the hull vertex values, full precision."""
    values = hull_vertex_values(series)
    return sum(values) / len(values)


def format_truncated(x: float, places: int = 2) -> str:
    """Display formatting: truncate (toward zero) to the given decimals."""
    quantum = Decimal(1).scaleb(-places)
    return str(Decimal(repr(float(x))).quantize(quantum, rounding=ROUND_DOWN))


@dataclass
class DailySummary:
    """Per-date feature vector of hull-mean values, one per pollutant.

    ``features`` holds only the pollutants that were summarized; ``complete``
    is true iff all five are present. The observed temperature is attached
    later from the temperature CSV when known.
    """

    date: Date
    features: dict[str, float] = field(default_factory=dict)
    complete: bool = False
    observed_temp: float | None = None

    def vector(self) -> np.ndarray:
        """The 5-vector in canonical pollutant order; requires completeness."""
        if not self.complete:
            missing = [p for p in POLLUTANTS if p not in self.features]
            raise ValueError(f"summary for {self.date} is missing {missing}")
        return np.array([self.features[p] for p in POLLUTANTS], dtype=float)


def summarize_day(day: Date, series_by_pollutant: Mapping[str, DaySeries]) -> DailySummary:
    """Reduce one day's series to a DailySummary of hull means."""
    unknown = sorted(set(series_by_pollutant) - set(POLLUTANTS))
    if unknown:
        raise ValueError(f"unknown pollutant codes {unknown}")
    features = {
        p: daily_hull_mean(series_by_pollutant[p])
        for p in POLLUTANTS
        if p in series_by_pollutant
    }
    return DailySummary(
        date=day,
        features=features,
        complete=len(features) == len(POLLUTANTS),
    )


# --- structural database CSV -------------------------------------------------

STRUCTURAL_HEADER = ("date", "co", "no2", "o3", "pm10", "so2", "complete")


def write_structural_csv(summaries: Iterable[DailySummary], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(STRUCTURAL_HEADER)
        for s in sorted(summaries, key=lambda s: s.date):
            row = [s.date.isoformat()]
            row += [repr(s.features[p]) if p in s.features else "" for p in POLLUTANTS]
            row.append("true" if s.complete else "false")
            writer.writerow(row)


def read_structural_csv(path: str | Path) -> list[DailySummary]:
    summaries = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip().lower() for h in header) != STRUCTURAL_HEADER:
            raise ValueError(f"{path}: expected header {','.join(STRUCTURAL_HEADER)!r}")
        for row in reader:
            if not row:
                continue
            day = Date.fromisoformat(row[0])
            features = {
                p: float(cell) for p, cell in zip(POLLUTANTS, row[1:6]) if cell != ""
            }
            complete = row[6].strip().lower() == "true"
            if complete != (len(features) == len(POLLUTANTS)):
                raise ValueError(f"{path}: inconsistent complete flag for {day}")
            summaries.append(DailySummary(day, features, complete))
    return summaries


# --- SVG rendering of the construction ---------------------------------------

_SVG_W, _SVG_H, _SVG_MARGIN = 480, 360, 48


def _viewport(points: Sequence[Point]):
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    span_x = (x1 - x0) or 1.0
    span_y = (y1 - y0) or 1.0

    def to_px(p: Point) -> tuple[float, float]:
        px = _SVG_MARGIN + (p[0] - x0) / span_x * (_SVG_W - 2 * _SVG_MARGIN)
        py = _SVG_H - _SVG_MARGIN - (p[1] - y0) / span_y * (_SVG_H - 2 * _SVG_MARGIN)
        return px, py

    return to_px


def hull_plot_svg(series: DaySeries, polygon: HullPolygon | None = None) -> str:
    """Render a day's points and their hull as a standalone SVG document.

    Output is a pure function of the input bytes: same series, same file.
    """
    if not series.points:
        raise ValueError("cannot plot an empty series")
    if polygon is None:
        polygon = monotone_chain_hull(series.points)
    pts = [(float(h), float(v)) for h, v in series.points]
    to_px = _viewport(pts)
    title = f"{series.pollutant} {series.date.isoformat()}"
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_W}" height="{_SVG_H}" '
        f'viewBox="0 0 {_SVG_W} {_SVG_H}">',
        f"<title>{title}</title>",
        f'<rect width="{_SVG_W}" height="{_SVG_H}" fill="white"/>',
        f'<text x="{_SVG_MARGIN}" y="24" font-family="monospace" font-size="14">{title}</text>',
    ]
    path = " ".join(
        f"{'M' if i == 0 else 'L'} {to_px(v)[0]:.2f} {to_px(v)[1]:.2f}"
        for i, v in enumerate(polygon.vertices)
    )
    parts.append(
        f'<path d="{path} Z" fill="none" stroke="#1f77b4" stroke-width="1.5"/>'
    )
    for p in pts:
        px, py = to_px(p)
        parts.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="3" fill="#d62728"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
