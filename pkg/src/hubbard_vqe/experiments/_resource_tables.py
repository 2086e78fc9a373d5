from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Dict, List

from hubbard_vqe.resources import (
    ARCHITECTURES,
    constructed_gate_count,
    depth_report,
    fft_comparison_table,
    formula_rows,
    gate_count_table,
    layer_depth_table,
)
from hubbard_vqe.types import (
    AnsatzKind,
    AnsatzSpec,
    ExperimentConfig,
    ExperimentMode,
    ExperimentReport,
)
from hubbard_vqe.types._utils import import_python_name

if TYPE_CHECKING:
    from hubbard_vqe.types._experiment import Cell

logger = logging.getLogger(__name__)


def _report_rows(config: ExperimentConfig) -> List[Dict[str, Cell]]:
    geo = config.geometry.oriented()
    rows: List[Dict[str, Cell]] = []
    if geo.n_x < 2:
        logger.warning("No per-layer depth formulas for %s (n_x < 2)", geo)
        return rows
    for arch in ARCHITECTURES:
        report = depth_report(geo.n_x, geo.n_y, config.layers, arch)
        rows.append(
            {
                "grid": report.grid,
                "layers": report.layers,
                "architecture": report.architecture,
                "per_layer_depth": report.per_layer_depth.value,
                "ansatz_depth": report.ansatz_depth,
                "initial_state_depth": report.initial_state_depth.value,
                "measurement_depth": report.measurement_depth,
                "total_depth": report.total_depth,
                "gate_bound": report.gate_bound.value,
                "provenance": report.per_layer_depth.provenance,
            }
        )
    return rows


def run_resources(config: ExperimentConfig) -> ExperimentReport:
    """Closed-form resource tables; nothing is simulated except one gate census.

    Tables:

    - ``layer_depth``: per-layer depth of every architecture for the square grids in
      ``config.fft_sizes`` (sides of at least 2).
    - ``gate_count``: gate bound of ``config.grid`` for 1..``max_layers`` layers,
      followed by the count of the EHV circuit as constructed.
    - ``depth_report``: depth budget of ``config.grid`` per architecture.
    - ``fft_comparison``: initial-state depths and the crossover flag, with
      ``T_F`` taken from ``config.t_f`` when set.
    """
    t_f = import_python_name(config.t_f) if config.t_f else None
    sizes = [n for n in config.fft_sizes if n >= 2]
    layers = list(range(1, max(config.layers, config.max_layers or 0) + 1))

    gates = gate_count_table([config.grid], layers)
    spec = AnsatzSpec(kind=AnsatzKind.EHV, layers=config.layers, grid=config.grid)
    constructed = constructed_gate_count(spec)
    gates.extend(formula_rows(spec.geometry.label, [constructed]))

    return ExperimentReport(
        mode=ExperimentMode.RESOURCES,
        config=config,
        tables={
            "layer_depth": tuple(layer_depth_table(sizes)),
            "gate_count": tuple(gates),
            "depth_report": tuple(_report_rows(config)),
            "fft_comparison": tuple(fft_comparison_table(config.fft_sizes, t_f)),
        },
    )
