"""Three years of cluster history -> priority weights -> a temperature range.

Run:  python demos/03_history_forecast.py
"""

from datetime import date, timedelta

import numpy as np

from hullcast import (
    ArchiveDay,
    historical_pool,
    predict_temp_range,
    priority_weights,
    report_range,
    score_day,
    threshold_condition,
)

print("The three-year weight triple is [(1/3 - a), a, 1/3] for the last,")
print("second-last, and third-last year; it sums to 2/3, so the weights are")
print("renormalized over whichever years actually have history:\n")
for alpha in (0.0, 1 / 6, 0.25, 1 / 3):
    w = priority_weights(alpha, {1, 2, 3})
    shares = ", ".join(f"y-{y}: {v:.3f}" for y, v in w.normalized.items())
    print(f"   alpha={alpha:<6.3f} -> {shares}")
w12 = priority_weights(0.25, {1, 2})
print(f"   alpha=0.25, only two years -> {w12.normalized}")

print("\nBuild a toy archive: winter days of cluster 1 hover near 14 C in")
print("2013, 15 C in 2014, 16 C in 2015...")
rng = np.random.default_rng(3)
archive = []
for years_ago, base in ((3, 14.0), (2, 15.0), (1, 16.0)):
    anchor = date(2016, 1, 10).replace(year=2016 - years_ago)
    for offset in range(-10, 11):
        day = anchor + timedelta(days=offset)
        archive.append(ArchiveDay(day, "A", 1, base + float(rng.normal(0, 0.4))))

target = date(2016, 1, 10)
pools = {y: historical_pool(target, "A", 1, archive, y, window_days=7) for y in (1, 2, 3)}
for y, pool in pools.items():
    print(f"   year -{y}: {len(pool)} matching days, mean {np.mean(pool):.2f} C")

weights = priority_weights(0.25, [y for y, p in pools.items() if p])
low, high = predict_temp_range(weights, pools, half_width_floor=1.5)
low_i, high_i = report_range(low, high)
print(f"\nPredicted range for {target}: {low:.2f}..{high:.2f} C, reported {low_i}-{high_i}")

thresholds = [(16.0, "cold and dry"), (28.0, "mild with haze"), (float("inf"), "hot and humid")]
label = threshold_condition(low, high, thresholds)
print(f"Threshold category for the range center: {label!r}")

for actual in (15.2, 18.9):
    verdict = "hit" if score_day(low_i, high_i, actual) else "miss"
    print(f"   observed {actual} C -> {verdict}")
