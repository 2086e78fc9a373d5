from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Dict, List

from hubbard_vqe.types import (
    ExperimentConfig,
    ExperimentMode,
    ExperimentReport,
    OccupationSector,
)

from ._pipeline import depth_rows, prepare_problem, sweep_layers

if TYPE_CHECKING:
    from hubbard_vqe.types import RunRecord
    from hubbard_vqe.types._experiment import Cell

logger = logging.getLogger(__name__)

# splits the degenerate non-interacting filling of half-filled grids
HALF_FILLING_EPSILON = 1e-4


def run_usweep(config: ExperimentConfig) -> ExperimentReport:
    """Final fidelity as a function of the Coulomb potential.

    The occupation sector is fixed at the one of ``config.U`` for the whole sweep.
    For each value in ``config.u_values`` the exact energy is optimized at
    ``config.layers``; when ``config.max_layers`` is larger, the depth is raised until
    the target fidelity is reached.
    """
    sector = prepare_problem(config).sector
    records: List[RunRecord] = []
    depth_table: List[Dict[str, Cell]] = []
    for U in config.u_values:
        problem = prepare_problem(config, U=U, sector=sector)
        batch, depth = sweep_layers(config, problem, exact=True)
        records.extend(batch)
        depth_table.append({"U": U, "depth": depth, "reached": depth is not None})
    fidelity_table = [
        {
            "U": r.U,
            "depth": r.layers,
            "run": r.run,
            "final_fidelity": r.final_fidelity,
            "final_energy_error": r.final_energy_error,
        }
        for r in records
    ]
    tables = {"fidelity_vs_U": tuple(fidelity_table)}
    if (config.max_layers or config.layers) > config.layers:
        tables["depth_vs_U"] = tuple(depth_table)
    return ExperimentReport(
        mode=ExperimentMode.USWEEP, config=config, records=tuple(records), tables=tables
    )


def run_halffill(config: ExperimentConfig) -> ExperimentReport:
    """Depth scaling at half filling, ``eta = N``.

    The non-interacting start is degenerate at half filling on most grids, so a
    hopping perturbation of ``config.epsilon`` (default 1e-4) is applied when
    preparing it. Emits infidelity, energy error and double-occupancy error per depth.
    """
    geometry = config.geometry
    sector = OccupationSector.from_eta(geometry.n_sites)
    epsilon = HALF_FILLING_EPSILON if config.epsilon is None else config.epsilon
    problem = prepare_problem(config, sector=sector, epsilon=epsilon)
    records, depth = sweep_layers(config, problem, exact=True)
    summary = {
        "grid": problem.model.geometry.label,
        "sector": str(sector),
        "epsilon": epsilon,
        "target_fidelity": config.target_fidelity,
        "depth": depth,
        "reached": depth is not None,
    }
    return ExperimentReport(
        mode=ExperimentMode.HALFFILL,
        config=config,
        records=tuple(records),
        tables={
            "depth_to_target": (summary,),
            "errors_vs_depth": tuple(depth_rows(records)),
        },
    )
