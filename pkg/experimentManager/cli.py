"""
Description: command-line entry point.

    python -m experimentManager run <config.yaml> [--out DIR] [--workers N]
    python -m experimentManager preset <name> [--seed S] [--out DIR]
    python -m experimentManager analyze <prices.csv> [--column price] [--out report.json]
    python -m experimentManager list-presets

Exit codes: 0 success, 2 configuration error, 3 run abort.
"""
from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from rich.console import Console
from rich.table import Table

from experimentManager import __version__
from experimentManager.config import ConfigError, load_config_file, load_preset, preset_description, preset_names
from experimentManager.experiment import ExperimentResult, analyze_csv, run_experiment
from simModel.common.errors import DomainError
from simModel.common.rng import SEED_MASK

import logger

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ABORT = 3

console = Console()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="marketsim",
        description="Agent-based market models and stylized-facts analysis")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-file", type=str, default=None, help="write the log to this file")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug-level logging")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an experiment configuration")
    run.add_argument("config", type=str, help="path of the YAML configuration")
    run.add_argument("--out", type=str, default=None, help="output directory (overrides output_dir)")
    run.add_argument("--workers", type=int, default=None, help="parallel sweep points")

    preset = sub.add_parser("preset", help="run a shipped preset")
    preset.add_argument("name", type=str, help="preset name, see list-presets")
    preset.add_argument("--seed", type=int, default=None, help="override the preset seed")
    preset.add_argument("--out", type=str, default=None, help="output directory")
    preset.add_argument("--workers", type=int, default=None, help="parallel sweep points")

    analyze = sub.add_parser("analyze", help="stylized facts of a price column in a CSV file")
    analyze.add_argument("csv", type=str, help="CSV file with a header line")
    analyze.add_argument("--column", type=str, default="price", help="price column. Defaults to price")
    analyze.add_argument("--out", type=str, default=None, help="write the JSON report here")

    sub.add_parser("list-presets", help="list the shipped presets")
    return parser


def _print_summary(result: ExperimentResult) -> None:
    table = Table(title=f"{result.directory}")
    columns = [c for c in ("name", "status", "excess_kurtosis", "alpha_neg", "alpha_pos",
                           "vol_acf_exponent") if c in result.summary.columns]
    for column in columns:
        table.add_column(column)
    for _, row in result.summary.iterrows():
        table.add_row(*[f"{row[c]:.4g}" if isinstance(row[c], float) else str(row[c]) for c in columns])
    console.print(table)
    console.print(f"manifest: {result.manifest_path}")


def _run(config, args) -> int:
    result = run_experiment(config, output_dir=args.out, workers=args.workers)
    _print_summary(result)
    if result.aborted:
        for run in result.aborted:
            console.print(f"[red]{run.name} aborted at tick {run.abort_tick}: {run.abort_reason}[/red]")
        return EXIT_ABORT
    return EXIT_OK


def _list_presets() -> int:
    table = Table(title="presets")
    table.add_column("name")
    table.add_column("model")
    table.add_column("description")
    for name in preset_names():
        model, description = preset_description(name)
        table.add_row(name, model, description)
    console.print(table)
    return EXIT_OK


def _analyze(args) -> int:
    report = analyze_csv(args.csv, args.column)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as f:
            f.write(report.to_json())
    console.print(report.to_markdown())
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logger.setup_app_level_logger(level="DEBUG" if args.verbose else "INFO",
                                  use_stdout=True, file_name=args.log_file)
    try:
        if args.command == "list-presets":
            return _list_presets()
        if args.command == "analyze":
            return _analyze(args)
        if args.command == "run":
            return _run(load_config_file(args.config), args)
        config = load_preset(args.name)
        if args.seed is not None:
            if not 0 <= args.seed <= SEED_MASK:
                raise ConfigError(f"--seed must be a 64-bit unsigned integer, got {args.seed}", field="seed")
            config.seed = args.seed
        return _run(config, args)
    except ConfigError as exc:
        console.print(f"[red]configuration error: {exc}[/red]")
        return EXIT_CONFIG
    except (DomainError, OSError) as exc:
        console.print(f"[red]{exc}[/red]")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
