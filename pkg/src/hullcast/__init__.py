"""hullcast: daily convex-hull pollutant summaries, seasonal GA-seeded
K-means with incremental inserts, and history-weighted temperature forecasts.
"""

from .clustering import (
    ClusterMeta,
    ClusterModel,
    GAConfig,
    Scaling,
    assign_nearest,
    cluster_range_table,
    fit_region_model,
    ga_init_centroids,
    incremental_insert,
    lloyd_kmeans,
    load_model,
    save_model,
    sse,
    standardize,
)
from .evaluate import EvaluationReport, ReportRow, accuracy, build_report, score_day
from .forecast import (
    ArchiveDay,
    ForecastRecord,
    NoHistoryError,
    PriorityWeights,
    categorize,
    historical_pool,
    predict_temp_range,
    priority_weights,
    report_range,
    threshold_condition,
)
from .hull import (
    DailySummary,
    HullPolygon,
    daily_hull_mean,
    format_truncated,
    hull_plot_svg,
    hull_vertex_values,
    monotone_chain_hull,
    summarize_day,
)
from .ingest import (
    POLLUTANTS,
    DaySeries,
    HourlyReading,
    IngestError,
    group_daily,
    parse_hourly_csv,
    parse_temperature_csv,
)
from .partition import REGIONS, SeasonRegion, region_of, split_by_region
from .pipeline import (
    ConfigError,
    InsufficientHistoryError,
    PipelineConfig,
    PipelineResult,
    insert_live,
    load_config,
    run_pipeline,
)

__version__ = "0.1.0"

__all__ = [
    "POLLUTANTS",
    "REGIONS",
    "ArchiveDay",
    "ClusterMeta",
    "ClusterModel",
    "ConfigError",
    "DailySummary",
    "DaySeries",
    "EvaluationReport",
    "ForecastRecord",
    "GAConfig",
    "HourlyReading",
    "HullPolygon",
    "IngestError",
    "InsufficientHistoryError",
    "NoHistoryError",
    "PipelineConfig",
    "PipelineResult",
    "PriorityWeights",
    "ReportRow",
    "Scaling",
    "SeasonRegion",
    "accuracy",
    "assign_nearest",
    "build_report",
    "categorize",
    "cluster_range_table",
    "daily_hull_mean",
    "fit_region_model",
    "format_truncated",
    "ga_init_centroids",
    "group_daily",
    "historical_pool",
    "hull_plot_svg",
    "hull_vertex_values",
    "incremental_insert",
    "insert_live",
    "lloyd_kmeans",
    "load_config",
    "load_model",
    "monotone_chain_hull",
    "parse_hourly_csv",
    "parse_temperature_csv",
    "predict_temp_range",
    "priority_weights",
    "region_of",
    "report_range",
    "run_pipeline",
    "save_model",
    "score_day",
    "split_by_region",
    "sse",
    "standardize",
    "summarize_day",
    "threshold_condition",
]
