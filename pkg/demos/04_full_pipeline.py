"""The whole flow on generated data: readings CSV -> forecasts -> accuracy.

Run:  python demos/04_full_pipeline.py
Equivalent CLI:  hullcast run --config <generated pipeline.toml>
"""

import math
import tempfile
from datetime import date, timedelta
from pathlib import Path

import numpy as np

from hullcast import insert_live, load_config, run_pipeline

REGIMES = np.array(
    [
        [1.0, 60.0, 8.0, 70.0, 3.0],
        [2.5, 130.0, 17.0, 150.0, 4.8],
        [4.0, 200.0, 26.0, 220.0, 6.5],
    ]
)
TEMP_BANDS = (12.0, 22.0, 32.0)  # each pollution regime implies a temp band
POLLUTANTS = ("CO", "NO2", "O3", "PM10", "SO2")

workdir = Path(tempfile.mkdtemp(prefix="hullcast_demo_"))
print(f"Generating three years of hourly readings in {workdir} ...")
rng = np.random.default_rng(99)
readings = ["date,hour,pollutant,value"]
temps = ["date,temp_c"]
day = date(2014, 1, 1)
while day <= date(2016, 12, 31):
    regime = int(rng.integers(0, 3))
    for hour in range(0, 24, 2):
        swing = 1 + 0.05 * math.sin(2 * math.pi * hour / 24)
        for pollutant, base in zip(POLLUTANTS, REGIMES[regime]):
            value = base * (swing + rng.normal(0, 0.02))
            readings.append(f"{day.isoformat()},{hour:02d},{pollutant},{max(value, 0):.3f}")
    temps.append(f"{day.isoformat()},{TEMP_BANDS[regime] + rng.uniform(-0.5, 0.5):.2f}")
    day += timedelta(days=2)

(workdir / "readings.csv").write_text("\n".join(readings) + "\n")
(workdir / "temps.csv").write_text("\n".join(temps) + "\n")
(workdir / "pipeline.toml").write_text(
    """\
readings_csv = "readings.csv"
temperature_csv = "temps.csv"
out_dir = "out"
k = 3
alpha = 0.25
min_hours = 10
seed = 7
thresholds = [[16.0, "cold and dry"], [28.0, "mild with haze"], [inf, "hot and humid"]]

[ga]
population = 12
generations = 15
"""
)

print("Running the pipeline (summarize, split, cluster, predict, evaluate)...")
cfg = load_config(workdir / "pipeline.toml")
result = run_pipeline(cfg)
for path in result.artifacts:
    print(f"   wrote {path.relative_to(workdir)}")
report = result.report
print(f"\nForecast accuracy over {report.total} days of 2016: "
      f"{report.hits}/{report.total} = {report.accuracy_display}")

print("\nSample forecast rows:")
for line in (workdir / "out" / "forecast.csv").read_text().splitlines()[:4]:
    print("   " + line)

print("\nLive insert: one brand-new day goes into the winter model and gets")
print("its own forecast, without re-running the batch...")
new_day = date(2017, 1, 2)
regime = 2
rows = ["date,hour,pollutant,value"]
for hour in range(24):
    swing = 1 + 0.05 * math.sin(2 * math.pi * hour / 24)
    for pollutant, base in zip(POLLUTANTS, REGIMES[regime]):
        rows.append(f"{new_day.isoformat()},{hour:02d},{pollutant},{base * swing:.3f}")
(workdir / "new_day.csv").write_text("\n".join(rows) + "\n")
record = insert_live(cfg, workdir / "out" / "model_A.json", workdir / "new_day.csv")
print(f"   {record.date}: region {record.region}, cluster {record.cluster}, "
      f"{record.low_c}-{record.high_c} C, {record.category!r}")
