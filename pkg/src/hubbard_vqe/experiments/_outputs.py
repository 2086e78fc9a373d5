from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import TYPE_CHECKING, Dict, List, Optional, Union

from hubbard_vqe.resources import write_rows_csv

if TYPE_CHECKING:
    from hubbard_vqe.types import ExperimentReport, RunRecord
    from hubbard_vqe.types._experiment import Cell

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = (
    "config_hash",
    "grid",
    "ansatz",
    "depth",
    "optimizer",
    "seed",
    "run",
    "U",
    "noise",
    "error_detection",
    "final_infidelity",
    "final_energy_error",
    "measurements_used",
    "discards",
    "status",
)


def record_filename(record: RunRecord) -> str:
    """``<mode>_<grid>_<ansatz>_L<L>_seed<S>.json`` with suffixes for variants.

    A run index above 0, a non-default Coulomb potential in a U sweep and enabled
    error detection each add a suffix, so records of one experiment never collide.
    """
    name = f"{record.mode}_{record.grid}_{record.ansatz}_L{record.layers}"
    name += f"_seed{record.seed}"
    if record.run:
        name += f"_run{record.run}"
    if record.mode == "usweep":
        name += f"_U{record.U:g}"
    if record.error_detection:
        name += "_ed"
    return f"{name}.json"


def write_record(record: RunRecord, out: Union[str, Path]) -> Path:
    path = Path(out) / record_filename(record)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(record.model_dump_json(indent=2), encoding="utf-8")
    return path


def _stamped(
    rows: List[Dict[str, Cell]], config_hash: str, seed: int
) -> List[Dict[str, Cell]]:
    return [{**row, "config_hash": config_hash, "seed": seed} for row in rows]


def write_report(
    report: ExperimentReport, out: Optional[Union[str, Path]] = None
) -> List[Path]:
    """Persist an experiment report.

    Writes the config (``<mode>_<hash>_config.json``), one JSON document per run,
    appends one row per run to ``<mode>_summary.csv`` and writes each table to
    ``<mode>_<table>.csv``. Table rows are stamped with the config hash and seed.

    Parameters
    ----------
    report : ExperimentReport
        What to write.
    out : str or Path, optional
        Output directory; defaults to ``report.config.out``.

    Returns
    -------
    List[Path]
        Every file written or appended to.
    """
    target = out if out is not None else report.config.out
    if target is None:
        raise ValueError("No output directory configured.")
    out_dir = Path(target)
    out_dir.mkdir(parents=True, exist_ok=True)
    mode, digest, seed = report.mode.value, report.config_hash, report.config.seed

    config_path = out_dir / f"{mode}_{digest}_config.json"
    config_path.write_text(
        json.dumps(report.config.model_dump(mode="json"), indent=2, sort_keys=True),
        encoding="utf-8",
    )
    paths = [config_path]
    paths.extend(write_record(record, out_dir) for record in report.records)
    if report.records:
        summary = [record.summary_row() for record in report.records]
        paths.append(
            write_rows_csv(
                out_dir / f"{mode}_summary.csv",
                summary,
                append=True,
                fieldnames=SUMMARY_COLUMNS,
            )
        )
    for name, rows in report.tables.items():
        if not rows:
            continue
        paths.append(
            write_rows_csv(
                out_dir / f"{mode}_{name}.csv", _stamped(list(rows), digest, seed)
            )
        )
    logger.info("wrote %d files to %s", len(paths), out_dir)
    return paths
