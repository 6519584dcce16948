"""One day of hourly readings -> convex hull -> a single structural value.

Run:  python demos/01_daily_hull_summary.py
Writes the hull construction plot to demo_out/hull_demo.svg.
"""

from datetime import date
from pathlib import Path

import numpy as np

from hullcast import (
    DaySeries,
    daily_hull_mean,
    format_truncated,
    hull_plot_svg,
    hull_vertex_values,
    monotone_chain_hull,
)

print("A pollutant's hourly trace for one day, as (hour, value) points...")
rng = np.random.default_rng(7)
hours = range(24)
values = [round(2.5 + 1.8 * np.sin(h / 24 * 2 * np.pi) + rng.normal(0, 0.15), 2) for h in hours]
series = DaySeries(date(2014, 1, 2), "CO", tuple(zip(hours, values)))
print("  ", values)

print("\nThe convex hull keeps only the outer extremes of the day:")
polygon = monotone_chain_hull(series.points)
for x, y in polygon.vertices:
    print(f"   hour {int(x):2d} -> {y}")

print("\nInterior hours never influence the daily value; the structural")
print("value is the mean over the hull vertices alone:")
print("   vertex values:", hull_vertex_values(series))
mean = daily_hull_mean(series)
print(f"   daily value = {mean}  (displayed {format_truncated(mean)})")

out = Path(__file__).resolve().parent.parent / "demo_out"
out.mkdir(exist_ok=True)
svg_path = out / "hull_demo.svg"
svg_path.write_text(hull_plot_svg(series, polygon))
print(f"\nConstruction plot written to {svg_path}")

print("\nDegenerate days still behave: a constant trace keeps its two")
print("endpoint readings, so the mean equals the constant itself.")
flat = DaySeries(date(2014, 1, 3), "CO", tuple((h, 7.0) for h in range(24)))
print("   constant 7.0 ->", hull_vertex_values(flat), "-> mean", daily_hull_mean(flat))
