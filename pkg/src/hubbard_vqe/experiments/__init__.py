"""Experiment suites run by the command line, plus their persistence."""

from hubbard_vqe.types import Experiment, ExperimentMode

from ._outputs import SUMMARY_COLUMNS, record_filename, write_record, write_report
from ._pipeline import (
    Problem,
    build_objective,
    prepare_problem,
    run_replicas,
    run_single,
    spread_rows,
    sweep_layers,
)
from ._staterror import PowerLawFit, fit_power_law

_PKG = __name__

# callbacks are imported when an experiment first runs
BUILTIN_EXPERIMENTS = (
    Experiment(
        id=ExperimentMode.REPRESENT.value,
        title="Depth needed to reach the target fidelity with exact energies",
        callback=f"{_PKG}._represent:run_represent",
    ),
    Experiment(
        id=ExperimentMode.REALISTIC.value,
        title="Sampled optimization (SPSA or CD) under an estimate budget",
        callback=f"{_PKG}._realistic:run_realistic",
    ),
    Experiment(
        id=ExperimentMode.NOISY.value,
        title="Depolarizing trajectories with and without error detection",
        callback=f"{_PKG}._realistic:run_noisy",
    ),
    Experiment(
        id=ExperimentMode.USWEEP.value,
        title="Final fidelity as a function of U",
        callback=f"{_PKG}._sweeps:run_usweep",
    ),
    Experiment(
        id=ExperimentMode.HALFFILL.value,
        title="Depth scaling of the half-filled model",
        callback=f"{_PKG}._sweeps:run_halffill",
    ),
    Experiment(
        id=ExperimentMode.RESOURCES.value,
        title="Closed-form depth, gate-count and FFT comparison tables",
        callback=f"{_PKG}._resource_tables:run_resources",
    ),
    Experiment(
        id=ExperimentMode.STATERROR.value,
        title="Statistical error of energy estimates against shots",
        callback=f"{_PKG}._staterror:run_staterror",
    ),
)

__all__ = [
    "BUILTIN_EXPERIMENTS",
    "SUMMARY_COLUMNS",
    "PowerLawFit",
    "Problem",
    "build_objective",
    "fit_power_law",
    "prepare_problem",
    "record_filename",
    "run_replicas",
    "run_single",
    "spread_rows",
    "sweep_layers",
    "write_record",
    "write_report",
]
