"""Per-region K-means over daily feature vectors.

Features are standardized to z-scores before clustering (raw scales differ
by two orders of magnitude, so unstandardized Euclidean distance would be
dominated by PM10 alone). Initial centroids come from a seeded genetic
algorithm; Lloyd iterations refine them; each finished cluster keeps the
metadata (count, linear sum, raw min/max) needed for incremental inserts
without re-running the batch.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .ingest import POLLUTANTS

DEFAULT_TOL = 1e-6
DEFAULT_MAX_ITER = 100


def _as_points(data) -> np.ndarray:
    x = np.asarray(data, dtype=float)
    if x.size == 0:
        raise ValueError("no data points")
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2:
        raise ValueError(f"expected an (n, d) array, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("data contains non-finite values")
    return x


@dataclass(frozen=True)
class Scaling:
    """Per-dimension standardization parameters (population statistics)."""

    mean: np.ndarray
    std: np.ndarray

    def transform(self, x) -> np.ndarray:
        return (np.asarray(x, dtype=float) - self.mean) / self.std

    def inverse(self, z) -> np.ndarray:
        return np.asarray(z, dtype=float) * self.std + self.mean

    @classmethod
    def identity(cls, dim: int) -> "Scaling":
        return cls(np.zeros(dim), np.ones(dim))


def standardize(data) -> tuple[np.ndarray, Scaling]:
    """Z-score each dimension; constant dimensions pass through with std 1."""
    x = _as_points(data)
    mean = x.mean(axis=0)
    std = x.std(axis=0)
    std = np.where(std == 0.0, 1.0, std)
    scaling = Scaling(mean, std)
    return scaling.transform(x), scaling


@dataclass
class ClusterMeta:
    """One cluster's centroid plus the metadata that supports online updates.

    ``centroid`` and ``linear_sum`` live in scaled space and satisfy
    centroid * count == linear_sum; ``raw_min``/``raw_max`` bound the
    members' raw (unscaled) features.
    """

    id: int
    centroid: np.ndarray
    count: int
    linear_sum: np.ndarray
    raw_min: np.ndarray
    raw_max: np.ndarray


@dataclass
class ClusterModel:
    region: str
    k: int
    clusters: list[ClusterMeta]
    scaling: Scaling
    seed: int
    sse_history: list[float] = field(default_factory=list, compare=False, repr=False)

    def centroids(self) -> np.ndarray:
        return np.array([c.centroid for c in self.clusters])

    def to_dict(self) -> dict:
        return {
            "region": self.region,
            "k": self.k,
            "seed": self.seed,
            "scaling": {
                "mean": [float(v) for v in self.scaling.mean],
                "std": [float(v) for v in self.scaling.std],
            },
            "clusters": [
                {
                    "id": c.id,
                    "centroid": [float(v) for v in c.centroid],
                    "count": c.count,
                    "linear_sum": [float(v) for v in c.linear_sum],
                    "raw_min": [float(v) for v in c.raw_min],
                    "raw_max": [float(v) for v in c.raw_max],
                }
                for c in self.clusters
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ClusterModel":
        clusters = [
            ClusterMeta(
                id=int(c["id"]),
                centroid=np.array(c["centroid"], dtype=float),
                count=int(c["count"]),
                linear_sum=np.array(c["linear_sum"], dtype=float),
                raw_min=np.array(c["raw_min"], dtype=float),
                raw_max=np.array(c["raw_max"], dtype=float),
            )
            for c in d["clusters"]
        ]
        return cls(
            region=d["region"],
            k=int(d["k"]),
            clusters=clusters,
            scaling=Scaling(
                np.array(d["scaling"]["mean"], dtype=float),
                np.array(d["scaling"]["std"], dtype=float),
            ),
            seed=int(d["seed"]),
        )


def save_model(model: ClusterModel, path: str | Path) -> None:
    """Write the model as JSON, atomically (temp file + rename)."""
    path = Path(path)
    text = json.dumps(model.to_dict(), indent=2, sort_keys=True) + "\n"
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def load_model(path: str | Path) -> ClusterModel:
    with open(path, encoding="utf-8") as fh:
        return ClusterModel.from_dict(json.load(fh))


# --- genetic-algorithm centroid initialization -------------------------------


@dataclass(frozen=True)
class GAConfig:
    population: int = 20
    generations: int = 50
    crossover_rate: float = 0.9
    mutation_rate: float = 0.1
    mutation_scale: float = 0.1
    seed: int = 0

    def validate(self) -> None:
        if self.population < 2:
            raise ValueError("population must be >= 2")
        if self.generations < 1:
            raise ValueError("generations must be >= 1")
        if not 0.0 <= self.crossover_rate <= 1.0:
            raise ValueError("crossover_rate must be in [0, 1]")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError("mutation_rate must be in [0, 1]")
        if not self.mutation_scale > 0.0:
            raise ValueError("mutation_scale must be > 0")


def _nearest_sq_dist(x: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    d2 = ((x[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    return d2.min(axis=1)


def _genome_sse(x: np.ndarray, genome: np.ndarray) -> float:
    return float(_nearest_sq_dist(x, genome).sum())


def _dedupe_centroids(genome: np.ndarray, candidates: np.ndarray) -> np.ndarray:
    """Replace duplicate centroids with the farthest-out candidate points."""
    rows = [tuple(r) for r in genome]
    keep: list[tuple] = []
    for r in rows:
        if r not in keep:
            keep.append(r)
    while len(keep) < len(rows):
        kept = np.array(keep)
        dist = _nearest_sq_dist(candidates, kept)
        keep.append(tuple(candidates[int(np.argmax(dist))]))
    return np.array(keep)


def ga_init_centroids(data, k: int, cfg: GAConfig | None = None) -> np.ndarray:
    """Guess k initial centroids with a seeded genetic algorithm.

    Genomes are concatenations of k centroids, seeded from distinct data
    points. Fitness is the negative sum of squared distances of each point to
    its nearest genome centroid. Selection is tournament (size 3) with the
    single best genome carried over unchanged; crossover is one-point at a
    centroid boundary; mutation adds per-coordinate Gaussian noise scaled by
    the dimension's spread. Identical (data, k, cfg) always produce identical
    centroids.
    """
    cfg = cfg or GAConfig()
    cfg.validate()
    x = _as_points(data)
    uniq = np.unique(x, axis=0)
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > len(uniq):
        raise ValueError(f"k={k} exceeds the {len(uniq)} distinct data points")

    rng = np.random.default_rng(cfg.seed)
    dim_scale = x.std(axis=0)
    dim_scale = np.where(dim_scale == 0.0, 1.0, dim_scale)

    population = [
        uniq[rng.choice(len(uniq), size=k, replace=False)]
        for _ in range(cfg.population)
    ]

    def tournament(fitness: np.ndarray) -> np.ndarray:
        picks = rng.integers(0, cfg.population, size=3)
        return population[int(picks[np.argmin(fitness[picks])])]

    best_genome = population[0]
    best_sse = _genome_sse(x, best_genome)
    for _ in range(cfg.generations):
        fitness = np.array([_genome_sse(x, g) for g in population])
        gen_best = int(np.argmin(fitness))
        if fitness[gen_best] < best_sse:
            best_sse = float(fitness[gen_best])
            best_genome = population[gen_best].copy()
        next_population = [best_genome.copy()]  # elitism
        while len(next_population) < cfg.population:
            p1 = tournament(fitness)
            p2 = tournament(fitness)
            if k >= 2 and rng.random() < cfg.crossover_rate:
                cut = int(rng.integers(1, k))
                child = np.vstack([p1[:cut], p2[cut:]])
            else:
                child = p1.copy()
            mask = rng.random(child.shape) < cfg.mutation_rate
            noise = rng.normal(0.0, 1.0, size=child.shape) * (cfg.mutation_scale * dim_scale)
            child = np.where(mask, child + noise, child)
            next_population.append(child)
        population = next_population

    fitness = np.array([_genome_sse(x, g) for g in population])
    gen_best = int(np.argmin(fitness))
    if fitness[gen_best] < best_sse:
        best_genome = population[gen_best].copy()
    return _dedupe_centroids(best_genome, uniq)


# --- Lloyd iterations ---------------------------------------------------------


def _assign(x: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    """Nearest-centroid labels; exact ties go to the lowest cluster id."""
    d2 = ((x[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    return d2.argmin(axis=1)


def _repair_empty(x: np.ndarray, centroids: np.ndarray, labels: np.ndarray, k: int) -> np.ndarray:
    """Give each empty cluster the point farthest from its own centroid.

    Sole members are never stolen, so repairs cannot cascade new empties.
    """
    counts = np.bincount(labels, minlength=k)
    for j in np.flatnonzero(counts == 0):
        dist = ((x - centroids[labels]) ** 2).sum(axis=1)
        dist[counts[labels] <= 1] = -np.inf
        p = int(np.argmax(dist))
        counts[labels[p]] -= 1
        labels[p] = j
        counts[j] = 1
    return labels


def lloyd_kmeans(
    data,
    initial_centroids,
    *,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    scaling: Scaling | None = None,
    raw_data=None,
    region: str = "",
    seed: int = 0,
) -> ClusterModel:
    """Run Lloyd's algorithm from the given centroids and package the model.

    ``data`` is in model (scaled) space; ``scaling`` defaults to identity and
    ``raw_data`` to the unscaled preimage of ``data``. Iterations alternate
    nearest-assignment and mean update until the largest centroid movement
    drops below ``tol`` or ``max_iter`` is hit; the per-iteration SSE trace is
    kept on the model and is non-increasing. A cluster that empties mid-run
    is reseeded rather than failing.
    """
    x = _as_points(data)
    centroids = _as_points(initial_centroids)
    k = len(centroids)
    if k < 1 or k > len(x):
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={len(x)}")
    if centroids.shape[1] != x.shape[1]:
        raise ValueError("centroid dimension does not match data")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    if scaling is None:
        scaling = Scaling.identity(x.shape[1])
    raw = scaling.inverse(x) if raw_data is None else _as_points(raw_data)
    if raw.shape != x.shape:
        raise ValueError("raw_data shape does not match data")

    sse_history: list[float] = []
    labels = np.zeros(len(x), dtype=int)
    for _ in range(max_iter):
        labels = _assign(x, centroids)
        labels = _repair_empty(x, centroids, labels, k)
        counts = np.bincount(labels, minlength=k)
        sums = np.zeros_like(centroids)
        np.add.at(sums, labels, x)
        new_centroids = sums / counts[:, None]
        sse_history.append(float(((x - new_centroids[labels]) ** 2).sum()))
        movement = float(np.sqrt(((new_centroids - centroids) ** 2).sum(axis=1)).max())
        centroids = new_centroids
        if movement < tol:
            break

    clusters = []
    for j in range(k):
        members = labels == j
        linear_sum = x[members].sum(axis=0)
        count = int(members.sum())
        clusters.append(
            ClusterMeta(
                id=j,
                centroid=linear_sum / count,
                count=count,
                linear_sum=linear_sum,
                raw_min=raw[members].min(axis=0),
                raw_max=raw[members].max(axis=0),
            )
        )
    return ClusterModel(
        region=region,
        k=k,
        clusters=clusters,
        scaling=scaling,
        seed=seed,
        sse_history=sse_history,
    )


def fit_region_model(
    raw_data,
    k: int,
    *,
    region: str = "",
    ga: GAConfig | None = None,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> ClusterModel:
    """Standardize raw features, GA-seed, and run Lloyd: the full batch build."""
    raw = _as_points(raw_data)
    scaled, scaling = standardize(raw)
    ga = ga or GAConfig()
    init = ga_init_centroids(scaled, k, ga)
    return lloyd_kmeans(
        scaled,
        init,
        tol=tol,
        max_iter=max_iter,
        scaling=scaling,
        raw_data=raw,
        region=region,
        seed=ga.seed,
    )


# --- queries and incremental updates ------------------------------------------


def assign_nearest(model: ClusterModel, point) -> int:
    """Id of the centroid nearest to a scaled-space point (ties: lowest id)."""
    z = np.asarray(point, dtype=float)
    d2 = ((model.centroids() - z) ** 2).sum(axis=1)
    return int(np.argmin(d2))


def incremental_insert(model: ClusterModel, raw_point) -> ClusterModel:
    """Route one raw point to its nearest cluster and update that cluster.

    The point is standardized with the model's frozen scaling; the receiving
    cluster's count, linear sum, centroid (= linear_sum / count) and raw
    bounds are updated in place. No other cluster changes and Lloyd is never
    re-run. Mutates and returns ``model``; concurrent writers must serialize.
    """
    p = np.asarray(raw_point, dtype=float)
    if not np.all(np.isfinite(p)):
        raise ValueError("point contains non-finite values")
    z = model.scaling.transform(p)
    meta = model.clusters[assign_nearest(model, z)]
    meta.count += 1
    meta.linear_sum = meta.linear_sum + z
    meta.centroid = meta.linear_sum / meta.count
    meta.raw_min = np.minimum(meta.raw_min, p)
    meta.raw_max = np.maximum(meta.raw_max, p)
    return model


def sse(model: ClusterModel, data) -> float:
    """Sum of squared distances from scaled points to their nearest centroid."""
    x = _as_points(data)
    return float(_nearest_sq_dist(x, model.centroids()).sum())


def cluster_range_table(
    model: ClusterModel, feature_names: Sequence[str] | None = None
) -> list[dict[str, object]]:
    """Per-cluster, per-feature raw [min, max] ranges, one row per cluster."""
    dim = len(model.scaling.mean)
    if feature_names is None:
        if dim == len(POLLUTANTS):
            feature_names = tuple(p.lower() for p in POLLUTANTS)
        else:
            feature_names = tuple(f"f{i}" for i in range(dim))
    if len(feature_names) != dim:
        raise ValueError("feature_names length does not match model dimension")
    rows: list[dict[str, object]] = []
    for c in model.clusters:
        row: dict[str, object] = {"cluster": c.id}
        for i, name in enumerate(feature_names):
            row[f"{name}_min"] = float(c.raw_min[i])
            row[f"{name}_max"] = float(c.raw_max[i])
        rows.append(row)
    return rows


def write_range_table_csv(
    model: ClusterModel, path: str | Path, feature_names: Sequence[str] | None = None
) -> None:
    rows = cluster_range_table(model, feature_names)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        header = list(rows[0].keys())
        writer.writerow(header)
        for row in rows:
            writer.writerow([row[h] if h == "cluster" else repr(row[h]) for h in header])
