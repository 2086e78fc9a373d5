"""Command line entry point: ``hubbard-vqe <experiment> [options]``."""

from __future__ import annotations

import argparse
import json
import logging
from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Sequence

from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from ._app import Workbench
from .types import (
    AnsatzKind,
    ExperimentConfig,
    ExperimentReport,
    OptimizerKind,
    Placement,
)

if TYPE_CHECKING:
    from .types import RunRecord

logger = logging.getLogger("hubbard_vqe")

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_CONFIG = 2

WORKBENCH_NAME = "hubbard-vqe"

# flags whose destination differs from the config field
_RENAMED = {"ed": "error_detection", "init": "init_file"}


def _options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    add = common.add_argument
    add("--config", type=Path, help="JSON config document; flags override it.")
    add("--grid", help="Lattice as AxB, e.g. 2x3.")
    add("--t", type=float, help="Tunnelling amplitude (default 1).")
    add("--U", type=float, help="Onsite potential (default 2).")
    add("--ansatz", choices=[k.value for k in AnsatzKind])
    add("--layers", type=int, help="Ansatz layers, or first depth of a sweep.")
    add("--max-layers", type=int, help="Last depth of a layer sweep.")
    add("--optimizer", choices=[k.value for k in OptimizerKind])
    add("--m", type=int, help="Shots per measurement setting.")
    add("--noise", type=float, help="Depolarizing probability per qubit and gate.")
    add("--ed", choices=["on", "off", "both"], help="Error detection.")
    add("--eta", type=int, help="Fermion number, overriding the tabulated sector.")
    add("--epsilon", type=float, help="Hopping perturbation for degenerate fillings.")
    add("--seed", type=int, help="Master seed (default 0).")
    add("--runs", type=int, help="Independent runs per setting.")
    add("--workers", type=int, help="Runs executed concurrently.")
    add("--out", type=Path, help="Output directory for JSON records and CSV tables.")
    add("--init", type=Path, help="Stored parameter vector seeding the run.")
    add("--placement", choices=[p.value for p in Placement if p.value != "explicit"])
    add("--random-init", action="store_true", default=None)
    add("-v", "--verbose", action="count", default=0, help="-v info, -vv debug.")
    add("-q", "--quiet", action="store_true", help="Warnings and errors only.")
    return common


def build_parser(workbench: Workbench) -> argparse.ArgumentParser:
    """One sub-command per registered experiment, all sharing the same options."""
    from . import __version__

    parser = argparse.ArgumentParser(
        prog="hubbard-vqe",
        description="Variational ground states of the 2D Fermi-Hubbard model.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="experiment", metavar="EXPERIMENT", required=True)
    common = _options()
    for id_, experiment in workbench.experiments:
        sub.add_parser(id_, parents=[common], help=experiment.title)
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    skip = {"config", "verbose", "quiet", "experiment"}
    values = {}
    for key, value in vars(args).items():
        if key in skip or value is None:
            continue
        values[_RENAMED.get(key, key)] = value
    return values


def load_config(args: argparse.Namespace) -> ExperimentConfig:
    """Config document (if any) with command-line flags applied on top."""
    overrides = _overrides(args)
    overrides["mode"] = args.experiment
    if args.config is not None:
        return ExperimentConfig.from_file(args.config, **overrides)
    return ExperimentConfig(**overrides)


def setup_logging(verbose: int = 0, quiet: bool = False) -> None:
    level = logging.WARNING
    if not quiet:
        level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    handler = RichHandler(console=Console(stderr=True), show_path=verbose > 1)
    logging.basicConfig(
        level=level, format="%(message)s", datefmt="[%X]", handlers=[handler]
    )
    # basicConfig is a no-op once configured
    logger.setLevel(level)


def _records_table(records: Sequence[RunRecord]) -> Table:
    table = Table(title="Runs")
    for column in ("grid", "ansatz", "L", "optimizer", "run", "infidelity", "ΔE"):
        table.add_column(column, justify="right")
    table.add_column("status")
    for r in records:
        table.add_row(
            r.grid,
            r.ansatz,
            str(r.layers),
            r.optimizer,
            str(r.run),
            f"{r.final_infidelity:.3e}",
            f"{r.final_energy_error:.3e}",
            r.status,
        )
    return table


def _rows_table(name: str, rows: Sequence[Dict[str, Any]]) -> Table:
    table = Table(title=name)
    columns = list(rows[0]) if rows else []
    for column in columns:
        table.add_column(column)
    for row in rows:
        table.add_row(*(_cell(row.get(c)) for c in columns))
    return table


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return "" if value is None else str(value)


def print_report(report: ExperimentReport, console: Optional[Console] = None) -> None:
    console = console or Console()
    if report.records:
        console.print(_records_table(report.records))
    for name, rows in report.tables.items():
        if rows and name != "infidelity_vs_depth":
            console.print(_rows_table(name, rows))
    console.print(f"config {report.config_hash}, seed {report.config.seed}")


def main(argv: Optional[List[str]] = None) -> int:
    """Run the command line; returns the process exit code.

    0 after a completed experiment whatever its scientific outcome, 2 for invalid
    arguments or configuration and 1 for failures while running.
    """
    workbench = Workbench.get_or_create(WORKBENCH_NAME)
    try:
        return _run(workbench, argv)
    finally:
        Workbench.destroy(WORKBENCH_NAME)


def _run(workbench: Workbench, argv: Optional[List[str]]) -> int:
    parser = build_parser(workbench)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_CONFIG
    setup_logging(args.verbose, args.quiet)

    try:
        config = load_config(args)
    except (ValidationError, ValueError, TypeError, OSError) as e:
        logger.error("Invalid configuration: %s", e)
        return EXIT_CONFIG

    workbench.started.connect(lambda mode: logger.info("starting %s", mode))
    workbench.finished.connect(lambda mode: logger.info("%s done", mode))
    try:
        report = workbench.run(args.experiment, config)
    except Exception as e:
        if args.verbose > 1:
            logger.exception("Experiment %r failed", args.experiment)
        else:
            logger.error("Experiment %r failed: %s", args.experiment, e)
        return EXIT_RUNTIME

    if isinstance(report, ExperimentReport):
        print_report(report)
        if config.out is None:
            logger.info("no --out given; nothing written")
    else:
        print(json.dumps(report, default=str))
    return EXIT_OK
