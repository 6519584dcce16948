"""End-to-end pipeline: raw hourly CSVs to forecasts and an accuracy report.

Each step reads the previous step's artifacts from the output directory, so
running the steps individually is byte-identical to one monolithic run. All
randomness (the GA only) derives from the single configured seed; fixed
config + inputs + seed reproduce every artifact exactly.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field, replace
from datetime import date as Date
from pathlib import Path
from typing import Iterable, Sequence

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .clustering import (
    ClusterModel,
    GAConfig,
    assign_nearest,
    fit_region_model,
    incremental_insert,
    load_model,
    save_model,
)
from .forecast import (
    DEFAULT_ALPHA,
    DEFAULT_HALF_WIDTH_FLOOR_C,
    DEFAULT_WINDOW_DAYS,
    YEARS_BACK,
    ArchiveDay,
    ForecastRecord,
    categorize,
    historical_pool,
    predict_temp_range,
    priority_weights,
    report_range,
    threshold_condition,
    write_forecast_csv,
    read_forecast_csv,
)
from .evaluate import EvaluationReport, build_report, write_report_csv, write_report_json
from .hull import (
    DailySummary,
    hull_plot_svg,
    read_structural_csv,
    summarize_day,
    write_structural_csv,
)
from .ingest import (
    POLLUTANTS,
    DaySeries,
    IngestError,
    group_daily,
    parse_hourly_csv,
    parse_temperature_csv,
)
from .partition import REGION_CODES, region_of, split_by_region

STRUCTURAL_CSV = "structural.csv"
FORECAST_CSV = "forecast.csv"
REPORT_CSV = "report.csv"
REPORT_JSON = "report.json"


def structural_region_csv(code: str) -> str:
    return f"structural_{code}.csv"


def model_file(code: str) -> str:
    return f"model_{code}.json"


class ConfigError(ValueError):
    """Invalid or inconsistent pipeline configuration."""


class InsufficientHistoryError(ValueError):
    """Not enough historical data to build models or produce any forecast."""


@dataclass
class PipelineConfig:
    readings_csv: Path
    temperature_csv: Path
    out_dir: Path
    k: int = 4
    alpha: float = DEFAULT_ALPHA
    min_hours: int = 12
    match_window_days: int = DEFAULT_WINDOW_DAYS
    half_width_floor_c: float = DEFAULT_HALF_WIDTH_FLOOR_C
    seed: int = 0
    ga: GAConfig = field(default_factory=GAConfig)
    thresholds: list[tuple[float, str]] = field(default_factory=list)
    category_map: dict[tuple[str, int], str] = field(default_factory=dict)

    def region_ga(self, code: str) -> GAConfig:
        """Per-region GA settings; the seed is derived from the single run seed."""
        return replace(self.ga, seed=self.seed + REGION_CODES.index(code))


_KNOWN_KEYS = {
    "readings_csv",
    "temperature_csv",
    "out_dir",
    "k",
    "alpha",
    "min_hours",
    "match_window_days",
    "half_width_floor_c",
    "seed",
    "ga",
    "thresholds",
    "category_map",
}
_KNOWN_GA_KEYS = {"population", "generations", "crossover_rate", "mutation_rate", "mutation_scale"}


def _parse_thresholds(raw) -> list[tuple[float, str]]:
    if not isinstance(raw, list):
        raise ConfigError("thresholds must be a list of [max_center_c, label] pairs")
    thresholds = []
    for entry in raw:
        if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[1], str)):
            raise ConfigError(f"bad threshold entry {entry!r}, want [max_center_c, label]")
        try:
            bound = float(entry[0])
        except (TypeError, ValueError):
            raise ConfigError(f"bad threshold bound {entry[0]!r}") from None
        thresholds.append((bound, entry[1]))
    bounds = [b for b, _ in thresholds]
    if any(b1 > b2 for b1, b2 in zip(bounds, bounds[1:])):
        raise ConfigError("thresholds must be sorted ascending by bound")
    return thresholds


def _parse_category_map(raw) -> dict[tuple[str, int], str]:
    if not isinstance(raw, dict):
        raise ConfigError("category_map must be a table of region -> {cluster -> label}")
    out: dict[tuple[str, int], str] = {}
    for region, clusters in raw.items():
        if region not in REGION_CODES:
            raise ConfigError(f"category_map region {region!r} is not one of {REGION_CODES}")
        if not isinstance(clusters, dict):
            raise ConfigError(f"category_map.{region} must be a table of cluster -> label")
        for cluster, label in clusters.items():
            try:
                cid = int(cluster)
            except ValueError:
                raise ConfigError(f"category_map.{region} key {cluster!r} is not a cluster id") from None
            if not isinstance(label, str):
                raise ConfigError(f"category_map.{region}.{cluster} label must be a string")
            out[(region, cid)] = label
    return out


def load_config(
    path: str | Path,
    out_dir: str | Path | None = None,
    seed: int | None = None,
) -> PipelineConfig:
    """Load and validate a TOML config; paths are relative to the config file.

    ``out_dir`` and ``seed`` override the file's values when given.
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        with open(path, "rb") as fh:
            doc = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None

    unknown = sorted(set(doc) - _KNOWN_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys {unknown}")
    for required in ("readings_csv", "temperature_csv"):
        if required not in doc:
            raise ConfigError(f"missing required config key {required!r}")

    base = path.parent

    def resolve(p) -> Path:
        p = Path(str(p))
        return p if p.is_absolute() else base / p

    readings_csv = resolve(doc["readings_csv"])
    temperature_csv = resolve(doc["temperature_csv"])
    if readings_csv == temperature_csv:
        raise ConfigError("readings_csv and temperature_csv must be distinct paths")
    for name, p in (("readings_csv", readings_csv), ("temperature_csv", temperature_csv)):
        if not p.is_file():
            raise ConfigError(f"{name} does not exist: {p}")

    ga_raw = dict(doc.get("ga", {}))
    unknown_ga = sorted(set(ga_raw) - _KNOWN_GA_KEYS)
    if unknown_ga:
        raise ConfigError(f"unknown ga keys {unknown_ga}")
    for int_key in ("population", "generations"):
        if int_key in ga_raw:
            ga_raw[int_key] = int(ga_raw[int_key])

    cfg = PipelineConfig(
        readings_csv=readings_csv,
        temperature_csv=temperature_csv,
        out_dir=resolve(out_dir if out_dir is not None else doc.get("out_dir", "out")),
        k=int(doc.get("k", 4)),
        alpha=float(doc.get("alpha", DEFAULT_ALPHA)),
        min_hours=int(doc.get("min_hours", 12)),
        match_window_days=int(doc.get("match_window_days", DEFAULT_WINDOW_DAYS)),
        half_width_floor_c=float(doc.get("half_width_floor_c", DEFAULT_HALF_WIDTH_FLOOR_C)),
        seed=int(seed if seed is not None else doc.get("seed", 0)),
        ga=GAConfig(**{k: ga_raw[k] for k in ga_raw}),
        thresholds=_parse_thresholds(doc.get("thresholds", [])),
        category_map=_parse_category_map(doc.get("category_map", {})),
    )

    if cfg.k < 1:
        raise ConfigError(f"k must be >= 1, got {cfg.k}")
    if not 0.0 <= cfg.alpha <= 1.0 / 3.0:
        raise ConfigError(f"alpha must be in [0, 1/3], got {cfg.alpha}")
    if not 1 <= cfg.min_hours <= 24:
        raise ConfigError(f"min_hours must be in 1-24, got {cfg.min_hours}")
    if cfg.match_window_days < 0:
        raise ConfigError("match_window_days must be >= 0")
    if cfg.half_width_floor_c < 0:
        raise ConfigError("half_width_floor_c must be >= 0")
    try:
        cfg.ga.validate()
    except ValueError as exc:
        raise ConfigError(f"ga: {exc}") from None
    if not cfg.thresholds and not cfg.category_map:
        raise ConfigError("configure thresholds and/or category_map for categorization")
    return cfg


# --- pipeline steps -----------------------------------------------------------


def step_summarize(cfg: PipelineConfig) -> Path:
    """Readings CSV -> structural database CSV of daily hull means."""
    readings = parse_hourly_csv(cfg.readings_csv)
    series, _incomplete = group_daily(readings, cfg.min_hours)
    by_date: dict[Date, dict[str, DaySeries]] = {}
    for (day, pollutant), s in series.items():
        by_date.setdefault(day, {})[pollutant] = s
    summaries = [summarize_day(day, by_date[day]) for day in sorted(by_date)]
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    out = cfg.out_dir / STRUCTURAL_CSV
    write_structural_csv(summaries, out)
    return out


def step_split(cfg: PipelineConfig) -> list[Path]:
    """Structural CSV -> four per-region structural CSVs."""
    structural = cfg.out_dir / STRUCTURAL_CSV
    if not structural.is_file():
        raise ConfigError(f"{structural} not found; run the summarize step first")
    summaries = read_structural_csv(structural)
    split = split_by_region(summaries)
    paths = []
    for code in REGION_CODES:
        out = cfg.out_dir / structural_region_csv(code)
        write_structural_csv(split[code], out)
        paths.append(out)
    return paths


def step_cluster(cfg: PipelineConfig) -> list[Path]:
    """Per-region structural CSVs -> four fitted cluster-model JSON files."""
    paths = []
    for code in REGION_CODES:
        source = cfg.out_dir / structural_region_csv(code)
        if not source.is_file():
            raise ConfigError(f"{source} not found; run the split step first")
        complete = [s for s in read_structural_csv(source) if s.complete]
        if not complete:
            raise InsufficientHistoryError(f"region {code} has no complete days to cluster")
        data = [s.vector() for s in complete]
        try:
            model = fit_region_model(data, cfg.k, region=code, ga=cfg.region_ga(code))
        except ValueError as exc:
            raise InsufficientHistoryError(f"region {code}: {exc}") from None
        out = cfg.out_dir / model_file(code)
        save_model(model, out)
        paths.append(out)
    return paths


def _load_models(cfg: PipelineConfig) -> dict[str, ClusterModel]:
    models = {}
    for code in REGION_CODES:
        path = cfg.out_dir / model_file(code)
        if not path.is_file():
            raise ConfigError(f"{path} not found; run the cluster step first")
        models[code] = load_model(path)
    return models


def _check_category_map(cfg: PipelineConfig, models: dict[str, ClusterModel]) -> None:
    if not cfg.category_map:
        return
    missing = [
        (code, cid)
        for code, model in models.items()
        for cid in range(model.k)
        if (code, cid) not in cfg.category_map
    ]
    if missing:
        raise ConfigError(f"category_map is missing entries for {missing}")


def _pick_category(cfg: PipelineConfig, region: str, cluster: int, low: float, high: float) -> str:
    if cfg.category_map:
        return categorize(region, cluster, cfg.category_map)
    return threshold_condition(low, high, cfg.thresholds)


def _assignments(
    summaries: Iterable[DailySummary], models: dict[str, ClusterModel]
) -> dict[Date, tuple[str, int]]:
    out = {}
    for s in summaries:
        region = region_of(s.date.month).code
        model = models[region]
        out[s.date] = (region, assign_nearest(model, model.scaling.transform(s.vector())))
    return out


def step_predict(cfg: PipelineConfig) -> Path:
    """Structural CSV + models + temperatures -> forecast CSV.

    Targets are the complete days of the most recent calendar year in the
    structural database; history pools come from up to three years back.
    Days with no matching history are skipped; producing no forecast at all
    is an error.
    """
    structural = cfg.out_dir / STRUCTURAL_CSV
    if not structural.is_file():
        raise ConfigError(f"{structural} not found; run the summarize step first")
    models = _load_models(cfg)
    _check_category_map(cfg, models)
    temps = parse_temperature_csv(cfg.temperature_csv)
    complete = [s for s in read_structural_csv(structural) if s.complete]
    if not complete:
        raise InsufficientHistoryError("structural database has no complete days")
    complete.sort(key=lambda s: s.date)
    assigned = _assignments(complete, models)

    archive = [
        ArchiveDay(s.date, *assigned[s.date], temp=temps[s.date])
        for s in complete
        if s.date in temps
    ]
    target_year = max(s.date.year for s in complete)
    records = []
    for s in complete:
        if s.date.year != target_year:
            continue
        region, cluster = assigned[s.date]
        pools = {
            y: historical_pool(s.date, region, cluster, archive, y, cfg.match_window_days)
            for y in YEARS_BACK
        }
        available = [y for y in YEARS_BACK if pools[y]]
        if not available:
            continue
        weights = priority_weights(cfg.alpha, available)
        low, high = predict_temp_range(
            weights, {y: pools[y] for y in available}, cfg.half_width_floor_c
        )
        low_i, high_i = report_range(low, high)
        records.append(
            ForecastRecord(
                date=s.date,
                region=region,
                cluster=cluster,
                low_c=low_i,
                high_c=high_i,
                category=_pick_category(cfg, region, cluster, low, high),
            )
        )
    if not records:
        raise InsufficientHistoryError(
            f"no day of {target_year} has matching history in the previous three years"
        )
    out = cfg.out_dir / FORECAST_CSV
    write_forecast_csv(records, out)
    return out


def step_evaluate(cfg: PipelineConfig) -> tuple[Path, Path, EvaluationReport]:
    """Forecast CSV + temperatures -> hit/miss report (CSV and JSON twin)."""
    forecast_path = cfg.out_dir / FORECAST_CSV
    if not forecast_path.is_file():
        raise ConfigError(f"{forecast_path} not found; run the predict step first")
    forecasts = read_forecast_csv(forecast_path)
    temps = parse_temperature_csv(cfg.temperature_csv)
    report = build_report(forecasts, temps)
    csv_path = cfg.out_dir / REPORT_CSV
    json_path = cfg.out_dir / REPORT_JSON
    write_report_csv(report, csv_path)
    write_report_json(report, json_path)
    return csv_path, json_path, report


def step_plot(
    cfg: PipelineConfig,
    dates: Sequence[Date] | None = None,
    pollutants: Sequence[str] | None = None,
) -> list[Path]:
    """Render hull-construction SVGs, one per (date, pollutant) series."""
    readings = parse_hourly_csv(cfg.readings_csv)
    series, _ = group_daily(readings, cfg.min_hours)
    plot_dir = cfg.out_dir / "plots"
    plot_dir.mkdir(parents=True, exist_ok=True)
    wanted_dates = set(dates) if dates else None
    wanted_pollutants = set(pollutants) if pollutants else None
    paths = []
    for (day, pollutant), s in sorted(series.items()):
        if wanted_dates is not None and day not in wanted_dates:
            continue
        if wanted_pollutants is not None and pollutant not in wanted_pollutants:
            continue
        out = plot_dir / f"hull_{day.isoformat()}_{pollutant}.svg"
        out.write_text(hull_plot_svg(s), encoding="utf-8")
        paths.append(out)
    return paths


@dataclass(frozen=True)
class PipelineResult:
    artifacts: tuple[Path, ...]
    report: EvaluationReport


def run_pipeline(cfg: PipelineConfig) -> PipelineResult:
    """Run summarize, split, cluster, predict, and evaluate in order."""
    artifacts = [step_summarize(cfg)]
    artifacts += step_split(cfg)
    artifacts += step_cluster(cfg)
    artifacts.append(step_predict(cfg))
    csv_path, json_path, report = step_evaluate(cfg)
    artifacts += [csv_path, json_path]
    return PipelineResult(artifacts=tuple(artifacts), report=report)


def insert_live(
    cfg: PipelineConfig, model_path: str | Path, readings_path: str | Path
) -> ForecastRecord:
    """Insert one new day into a persisted model and forecast that day.

    The day must ingest completely, else the model file is left untouched.
    The model file is replaced atomically after the incremental insert; the
    forecast row is built from the updated model's assignments.
    """
    model_path = Path(model_path)
    if not model_path.is_file():
        raise ConfigError(f"model file not found: {model_path}")
    readings = parse_hourly_csv(readings_path)
    days = sorted({r.date for r in readings})
    if len(days) != 1:
        raise IngestError(f"expected readings for exactly one day, got {len(days)} days")
    day = days[0]
    series, incomplete = group_daily(readings, cfg.min_hours)
    if incomplete:
        raise IngestError(f"incomplete day {day}: too few hours for {[p for _, p in incomplete]}")
    summary = summarize_day(day, {pollutant: s for (_, pollutant), s in series.items()})
    if not summary.complete:
        missing = [p for p in POLLUTANTS if p not in summary.features]
        raise IngestError(f"incomplete day {day}: no readings for {missing}")

    region = region_of(day.month).code
    model = load_model(model_path)
    if model.region and model.region != region:
        raise ConfigError(
            f"day {day} belongs to region {region} but the model covers region {model.region}"
        )

    # everything that can fail before mutating state is loaded up front
    structural = cfg.out_dir / STRUCTURAL_CSV
    if not structural.is_file():
        raise ConfigError(f"{structural} not found; run the summarize step first")
    history = [s for s in read_structural_csv(structural) if s.complete]
    temps = parse_temperature_csv(cfg.temperature_csv)

    vec = summary.vector()
    cluster = assign_nearest(model, model.scaling.transform(vec))
    incremental_insert(model, vec)
    save_model(model, model_path)

    archive = [
        ArchiveDay(s.date, region, assign_nearest(model, model.scaling.transform(s.vector())), temps[s.date])
        for s in history
        if s.date in temps and region_of(s.date.month).code == region
    ]
    pools = {
        y: historical_pool(day, region, cluster, archive, y, cfg.match_window_days)
        for y in YEARS_BACK
    }
    available = [y for y in YEARS_BACK if pools[y]]
    if not available:
        raise InsufficientHistoryError(f"no matching history for {day}")
    weights = priority_weights(cfg.alpha, available)
    low, high = predict_temp_range(
        weights, {y: pools[y] for y in available}, cfg.half_width_floor_c
    )
    low_i, high_i = report_range(low, high)
    return ForecastRecord(
        date=day,
        region=region,
        cluster=cluster,
        low_c=low_i,
        high_c=high_i,
        category=_pick_category(cfg, region, cluster, low, high),
    )
