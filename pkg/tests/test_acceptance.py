"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with ``pytest tests/test_acceptance.py -v -s``).
"""

from __future__ import annotations

import copy
import hashlib
import json
import time
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from hullcast import (
    DailySummary,
    GAConfig,
    accuracy,
    format_truncated,
    ga_init_centroids,
    incremental_insert,
    load_config,
    lloyd_kmeans,
    monotone_chain_hull,
    run_pipeline,
    split_by_region,
    standardize,
)
from hullcast.cli import main
from hullcast.partition import REGION_CODES

import synthdata
from conftest import OUTER_REGION_VALUES
from oracles import (
    best_two_partition_sse,
    enumerate_year_dates,
    simulate_inserts,
    strict_hull_vertices,
)


@contextmanager
def criterion(number: int, name: str):
    try:
        yield
    except BaseException:
        print(f"\n[acceptance] criterion {number} ({name}): FAIL")
        raise
    print(f"\n[acceptance] criterion {number} ({name}): PASS")


@pytest.fixture(scope="session")
def acceptance_dataset(tmp_path_factory) -> Path:
    root = tmp_path_factory.mktemp("acceptance")
    synthdata.generate_dataset(root, start_year=2014, years=3, seed=1234)
    synthdata.write_config(root, k=3, seed=97)
    return root


@pytest.fixture(scope="session")
def acceptance_run(acceptance_dataset) -> dict:
    cfg = load_config(acceptance_dataset / "pipeline.toml")
    run_pipeline(cfg)
    return json.loads((acceptance_dataset / "out" / "report.json").read_text())


def test_criterion_1_averaging_formula(table1_series):
    with criterion(1, "averaging-formula reproduction"):
        start = time.perf_counter()
        total = sum(OUTER_REGION_VALUES)
        mean = total / len(OUTER_REGION_VALUES)
        display = format_truncated(mean)
        elapsed = time.perf_counter() - start
        assert total == pytest.approx(23.73, abs=1e-12)
        assert len(OUTER_REGION_VALUES) == 12
        assert mean == pytest.approx(1.9775, abs=1e-12)
        assert display == "1.97"
        assert elapsed < 1.0


def _random_grid_series(rng: np.random.Generator) -> np.ndarray:
    """Series of 3-50 points on a quarter-integer grid (exact predicates)."""
    n = int(rng.integers(3, 51))
    kind = rng.integers(0, 10)
    if kind == 0:  # all collinear (direction may be degenerate: coincident)
        p0 = rng.integers(-20, 21, size=2)
        d = rng.integers(-2, 3, size=2)
        t = rng.integers(0, 16, size=n)
        return (p0[None, :] + t[:, None] * d[None, :]) / 4.0
    if kind == 1:  # heavy duplication of a few distinct points
        uniq = rng.integers(-40, 41, size=(int(rng.integers(1, 6)), 2))
        return uniq[rng.integers(0, len(uniq), size=n)] / 4.0
    return rng.integers(-40, 41, size=(n, 2)) / 4.0


def test_criterion_2_hull_matches_bruteforce_oracle():
    with criterion(2, "hull vertex set equals O(n^3) oracle on 1000 series"):
        rng = np.random.default_rng(2024)
        start = time.perf_counter()
        for _ in range(1000):
            pts = _random_grid_series(rng)
            got = set(monotone_chain_hull(pts).vertices)
            expected = strict_hull_vertices(pts)
            assert got == expected
        elapsed = time.perf_counter() - start
        assert elapsed < 30.0


def test_criterion_3_incremental_equals_batch():
    with criterion(3, "incremental inserts equal batch recomputation"):
        rng = np.random.default_rng(31)
        sequences = 0
        for k in (2, 3, 4, 5, 6):
            raw = rng.uniform(-5, 5, size=(80, 5))
            scaled, scaling = standardize(raw)
            init = scaled[rng.choice(80, size=k, replace=False)]
            base = lloyd_kmeans(scaled, init, scaling=scaling, raw_data=raw)
            for _ in range(100):
                model = copy.deepcopy(base)
                snapshot = [(c.count, c.linear_sum.copy()) for c in model.clusters]
                points = rng.uniform(-6, 6, size=(int(rng.integers(5, 25)), 5))
                for p in points:
                    incremental_insert(model, p)
                cents, counts = simulate_inserts(snapshot, scaling, points)
                for c, cent, count in zip(model.clusters, cents, counts):
                    assert c.count == count
                    assert np.allclose(c.centroid, cent, rtol=1e-9, atol=1e-12)
                sequences += 1
        assert sequences >= 500


def test_criterion_4_lloyd_monotone_and_oracle():
    with criterion(4, "Lloyd SSE monotone; tiny instance matches enumeration"):
        rng = np.random.default_rng(44)
        for trial in range(10):
            centers = rng.uniform(-8, 8, size=(4, 3))
            data = np.vstack([c + rng.normal(0, 1.0, size=(40, 3)) for c in centers])
            init = data[rng.choice(len(data), size=4, replace=False)]
            model = lloyd_kmeans(data, init)
            h = model.sse_history
            assert all(b <= a * (1 + 1e-12) + 1e-12 for a, b in zip(h, h[1:]))
        tiny = [[0.0], [1.0], [9.0], [10.0]]
        model = lloyd_kmeans(tiny, [[0.0], [10.0]])
        assert model.sse_history[-1] == pytest.approx(1.0, abs=1e-12)
        assert model.sse_history[-1] == pytest.approx(best_two_partition_sse(tiny), abs=1e-12)


def test_criterion_5_ga_sanity():
    with criterion(5, "GA within 1% of k=1 optimum; seeded reproducibility"):
        rng = np.random.default_rng(55)
        for seed in (0, 1, 2):
            data, _ = standardize(rng.normal(size=(120, 5)))
            optimum = float(((data - data.mean(axis=0)) ** 2).sum())
            centroid = ga_init_centroids(data, 1, GAConfig(seed=seed))
            got = float(((data - centroid[0]) ** 2).sum())
            assert got <= optimum * 1.01
        data, _ = standardize(rng.normal(size=(90, 5)))
        first = ga_init_centroids(data, 4, GAConfig(seed=123))
        second = ga_init_centroids(data, 4, GAConfig(seed=123))
        assert np.array_equal(first, second)


def test_criterion_6_calendar_split():
    with criterion(6, "seasonal split exhaustive, disjoint, 2014 sizes"):
        for year in (2014, 2015, 2016):  # 2016 is a leap year
            dates = list(enumerate_year_dates(year))
            split = split_by_region(DailySummary(d) for d in dates)
            sizes = {code: len(split[code]) for code in REGION_CODES}
            assert sum(sizes.values()) == len(dates)
            seen = sorted(s.date for part in split.values() for s in part)
            assert seen == sorted(dates)
        dates_2014 = list(enumerate_year_dates(2014))
        split = split_by_region(DailySummary(d) for d in dates_2014)
        assert [len(split[c]) for c in REGION_CODES] == [90, 61, 92, 122]
        assert sum(len(split[c]) for c in REGION_CODES) == 365


def test_criterion_7_accuracy_arithmetic():
    with criterion(7, "accuracy display and exact complement identity"):
        pct, display = accuracy(284, 365)
        assert display == "78%"
        assert pct == Fraction(28400, 365)
        rng = np.random.default_rng(77)
        for _ in range(1000):
            total = int(rng.integers(1, 100_000))
            hits = int(rng.integers(0, total + 1))
            assert accuracy(hits, total)[0] + accuracy(total - hits, total)[0] == 100


def test_criterion_8_planted_structure_end_to_end(acceptance_dataset, acceptance_run):
    with criterion(8, "planted-structure >= 90%; shuffled temps < 60%"):
        assert acceptance_run["total"] >= 300
        hit_rate = acceptance_run["hits"] / acceptance_run["total"]
        assert hit_rate >= 0.90, f"hit rate {hit_rate:.3f}"

        # shuffle the temperature labels across dates and rerun end to end
        temps = (acceptance_dataset / "temps.csv").read_text().splitlines()
        header, rows = temps[0], temps[1:]
        dates = [r.split(",")[0] for r in rows]
        values = [r.split(",")[1] for r in rows]
        shuffled_values = list(np.random.default_rng(808).permutation(values))
        shuffled = [header] + [f"{d},{v}" for d, v in zip(dates, shuffled_values)]
        (acceptance_dataset / "temps_shuffled.csv").write_text("\n".join(shuffled) + "\n")
        cfg_path = synthdata.write_config(
            acceptance_dataset, k=3, seed=97,
            temperature_csv="temps_shuffled.csv",
            out_dir="out_shuffled", name="shuffled.toml",
        )
        run_pipeline(load_config(cfg_path))
        report = json.loads((acceptance_dataset / "out_shuffled" / "report.json").read_text())
        shuffled_rate = report["hits"] / report["total"]
        assert shuffled_rate < 0.60, f"shuffled hit rate {shuffled_rate:.3f}"


def _hash_tree(root: Path) -> dict[str, str]:
    return {
        str(p.relative_to(root)): hashlib.sha256(p.read_bytes()).hexdigest()
        for p in sorted(root.rglob("*"))
        if p.is_file()
    }


def test_criterion_9_full_run_determinism(acceptance_dataset, acceptance_run, tmp_path):
    with criterion(9, "byte-identical artifacts across reruns, SVGs included"):
        cfg_path = str(acceptance_dataset / "pipeline.toml")
        rerun = tmp_path / "rerun"
        assert main(["run", "--config", cfg_path, "--out", str(rerun)]) == 0
        assert _hash_tree(rerun) == _hash_tree(acceptance_dataset / "out")

        plot_args = ["plot", "--config", cfg_path, "--date", "2014-01-02"]
        for out in ("plots1", "plots2"):
            assert main(plot_args + ["--out", str(tmp_path / out)]) == 0
        first = _hash_tree(tmp_path / "plots1")
        assert len(first) == 5  # one SVG per pollutant for the chosen day
        assert first == _hash_tree(tmp_path / "plots2")
