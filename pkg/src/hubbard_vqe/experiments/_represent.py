from __future__ import annotations

import logging

from hubbard_vqe.types import ExperimentConfig, ExperimentMode, ExperimentReport

from ._pipeline import depth_rows, prepare_problem, sweep_layers

logger = logging.getLogger(__name__)


def run_represent(config: ExperimentConfig) -> ExperimentReport:
    """How many layers the ansatz needs to represent the ground state.

    Optimizes the exact energy at increasing depth, from ``config.layers`` up to
    ``config.max_layers``, until the median fidelity reaches
    ``config.target_fidelity``. Not reaching it is a result, not an error.

    Tables: ``depth_to_target`` (one row) and ``infidelity_vs_depth``.
    """
    problem = prepare_problem(config)
    records, depth = sweep_layers(config, problem, exact=True)
    summary = {
        "grid": problem.model.geometry.label,
        "ansatz": config.ansatz.value,
        "sector": str(problem.sector),
        "target_fidelity": config.target_fidelity,
        "depth": depth,
        "reached": depth is not None,
        "max_depth": records[-1].layers,
    }
    return ExperimentReport(
        mode=ExperimentMode.REPRESENT,
        config=config,
        records=tuple(records),
        tables={
            "depth_to_target": (summary,),
            "infidelity_vs_depth": tuple(depth_rows(records)),
        },
    )
