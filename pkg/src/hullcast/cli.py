"""Command-line interface: ``hullcast <subcommand> --config <path>``.

Exit codes: 0 success, 1 configuration error, 2 ingestion error,
3 insufficient history for forecasting.
"""

from __future__ import annotations

import argparse
import sys
from datetime import date as Date

from . import pipeline
from .forecast import FORECAST_HEADER, NoHistoryError
from .ingest import IngestError, group_daily, parse_hourly_csv, parse_temperature_csv
from .pipeline import ConfigError, InsufficientHistoryError, load_config

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_INGEST = 2
EXIT_NO_HISTORY = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hullcast",
        description=(
            "Hourly pollutant readings -> daily hull summaries -> seasonal "
            "K-means clusters -> history-weighted temperature forecasts."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="TOML config file")
        p.add_argument("--out", help="output directory (overrides the config)")
        p.add_argument("--seed", type=int, help="GA seed (overrides the config)")
        return p

    add("ingest", "validate the readings CSV and report grouping statistics")
    add("summarize", "write the structural database CSV of daily hull means")
    add("split", "split the structural database into the four region CSVs")
    add("cluster", "fit and save the four per-region cluster models")
    add("predict", "forecast the most recent year and write forecast.csv")
    add("evaluate", "score forecasts against observed temperatures")
    add("run", "run summarize, split, cluster, predict, and evaluate in order")

    p = add("plot", "render hull-construction SVGs")
    p.add_argument("--date", action="append", default=None, help="restrict to this ISO date (repeatable)")
    p.add_argument("--pollutant", action="append", default=None, help="restrict to this pollutant code (repeatable)")

    p = add("insert", "insert one new day into a model and forecast it")
    p.add_argument("--model", required=True, help="model JSON file to update")
    p.add_argument("--readings", required=True, help="hourly readings CSV for the new day")
    return parser


def _cmd_ingest(cfg) -> None:
    readings = parse_hourly_csv(cfg.readings_csv)
    temps = parse_temperature_csv(cfg.temperature_csv)
    series, incomplete = group_daily(readings, cfg.min_hours)
    print(f"readings accepted: {len(readings)}")
    print(f"day series (>= {cfg.min_hours} hours): {len(series)}")
    print(f"incomplete (date, pollutant) keys: {len(incomplete)}")
    for day, pollutant in incomplete:
        print(f"  incomplete: {day.isoformat()} {pollutant}")
    print(f"temperature rows: {len(temps)}")


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, out_dir=args.out, seed=args.seed)
        if args.command == "ingest":
            _cmd_ingest(cfg)
        elif args.command == "summarize":
            print(pipeline.step_summarize(cfg))
        elif args.command == "split":
            for path in pipeline.step_split(cfg):
                print(path)
        elif args.command == "cluster":
            for path in pipeline.step_cluster(cfg):
                print(path)
        elif args.command == "predict":
            print(pipeline.step_predict(cfg))
        elif args.command == "evaluate":
            csv_path, json_path, report = pipeline.step_evaluate(cfg)
            print(csv_path)
            print(json_path)
            print(f"accuracy: {report.hits}/{report.total} = {report.accuracy_display}")
        elif args.command == "run":
            result = pipeline.run_pipeline(cfg)
            for path in result.artifacts:
                print(path)
            print(
                f"accuracy: {result.report.hits}/{result.report.total} "
                f"= {result.report.accuracy_display}"
            )
        elif args.command == "plot":
            dates = [Date.fromisoformat(d) for d in args.date] if args.date else None
            for path in pipeline.step_plot(cfg, dates=dates, pollutants=args.pollutant):
                print(path)
        elif args.command == "insert":
            record = pipeline.insert_live(cfg, args.model, args.readings)
            print(",".join(FORECAST_HEADER))
            print(
                f"{record.date.isoformat()},{record.region},{record.cluster},"
                f"{record.low_c},{record.high_c},{record.category}"
            )
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except IngestError as exc:
        print(f"ingestion error: {exc}", file=sys.stderr)
        return EXIT_INGEST
    except (InsufficientHistoryError, NoHistoryError) as exc:
        print(f"insufficient history: {exc}", file=sys.stderr)
        return EXIT_NO_HISTORY
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
