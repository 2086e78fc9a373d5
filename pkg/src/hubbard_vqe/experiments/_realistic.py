from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Dict, List

from hubbard_vqe.ansatz import parameter_degrees
from hubbard_vqe.optimize import trig_nodes
from hubbard_vqe.types import (
    ExperimentConfig,
    ExperimentMode,
    ExperimentReport,
    OptimizerKind,
)

from ._pipeline import ansatz_spec, prepare_problem, run_replicas, spread_rows

if TYPE_CHECKING:
    from hubbard_vqe.types import RunRecord
    from hubbard_vqe.types._experiment import Cell

    from ._pipeline import Problem

logger = logging.getLogger(__name__)


def check_budget(config: ExperimentConfig, problem: Problem) -> None:
    """Raise ValueError unless the optimizer samples and its budget allows progress."""
    if config.optimizer is OptimizerKind.LBFGS:
        raise ValueError(
            f"{config.mode.value} runs optimize sampled estimates; choose the spsa "
            "or cd optimizer."
        )
    if config.optimizer is OptimizerKind.SPSA:
        spsa = config.spsa
        stages = zip(spsa.stage_budgets(), spsa.stage_averaging)
        for stage, (budget, averaging) in enumerate(stages):
            if budget < 2 * averaging:
                raise ValueError(
                    f"SPSA stage {stage} gets {budget} estimates, fewer than the "
                    f"{2 * averaging} of one iteration; raise the budget."
                )
        return
    degrees = parameter_degrees(ansatz_spec(config, problem, config.layers))
    first = trig_nodes(degrees[0]).size
    if config.cd.budget < first:
        raise ValueError(
            f"Coordinate-descent budget {config.cd.budget} is below the {first} "
            "estimates of a single parameter update."
        )


def discard_rows(records: List[RunRecord]) -> List[Dict[str, Cell]]:
    """Discard statistics per error-detection setting."""
    rows: List[Dict[str, Cell]] = []
    for setting in sorted({r.error_detection for r in records}, reverse=True):
        group = [r for r in records if r.error_detection is setting]
        discards = sum(r.discards for r in group)
        kept = sum(r.circuit_evaluations for r in group)
        total = discards + kept
        rows.append(
            {
                "error_detection": setting,
                "runs": len(group),
                "discards": discards,
                "circuit_evaluations": kept,
                "discard_fraction": discards / total if total else 0.0,
            }
        )
    return rows


def run_realistic(config: ExperimentConfig) -> ExperimentReport:
    """Optimize sampled energy estimates under a fixed estimate budget.

    ``config.run_count`` runs with independent streams; the table reports the
    median final infidelity with its min/max band.
    """
    problem = prepare_problem(config)
    check_budget(config, problem)
    records = run_replicas(config, problem, config.layers, exact=False)
    return ExperimentReport(
        mode=ExperimentMode.REALISTIC,
        config=config,
        records=tuple(records),
        tables={"infidelity_spread": tuple(spread_rows(records))},
    )


def run_noisy(config: ExperimentConfig) -> ExperimentReport:
    """Sampled optimization on depolarizing trajectories, with and without detection.

    Every circuit evaluation runs one noisy trajectory (``config.noise`` per qubit
    after each 2-qubit gate). Error detection discards samples whose Hamming weight
    differs from the fermion number.
    """
    problem = prepare_problem(config)
    check_budget(config, problem)
    if config.noise == 0:
        logger.warning("Noisy experiment with noise 0; runs are noiseless")
    records: List[RunRecord] = []
    for detect in config.detection_settings:
        records.extend(
            run_replicas(
                config, problem, config.layers, exact=False, error_detection=detect
            )
        )
    keys = ("grid", "layers", "optimizer", "noise", "error_detection")
    return ExperimentReport(
        mode=ExperimentMode.NOISY,
        config=config,
        records=tuple(records),
        tables={
            "infidelity_spread": tuple(spread_rows(records, keys)),
            "discards": tuple(discard_rows(records)),
        },
    )
