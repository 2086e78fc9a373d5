"""End-to-end checks against reference results; minutes to hours each.

Run with ``pytest -m slow``.
"""

from __future__ import annotations

import numpy as np
import pytest

from hubbard_vqe.experiments import prepare_problem, run_single
from hubbard_vqe.experiments._pipeline import depth_rows, median_fidelity
from hubbard_vqe.experiments._realistic import run_noisy, run_realistic
from hubbard_vqe.experiments._staterror import run_staterror
from hubbard_vqe.types import ExperimentConfig

pytestmark = pytest.mark.slow


@pytest.mark.parametrize(
    "grid, depth, max_infidelity",
    [("2x2", 1, 0.0132), ("2x3", 3, 0.0150), ("1x6", 5, 0.0196), ("3x3", 6, 0.0136)],
)
def test_exact_depth_and_infidelity(
    grid: str, depth: int, max_infidelity: float
) -> None:
    config = ExperimentConfig(grid=grid, layers=depth)
    problem = prepare_problem(config)
    assert problem.ground.degeneracy == 1
    record = run_single(config, problem, depth, np.random.default_rng(0), exact=True)
    assert record.final_fidelity >= 0.99
    assert record.final_infidelity <= max_infidelity


def test_infidelity_falls_with_depth() -> None:
    config = ExperimentConfig(grid="1x6")
    problem = prepare_problem(config)
    records = [
        run_single(config, problem, depth, np.random.default_rng(0), exact=True)
        for depth in range(1, 6)
    ]
    infidelities = [row["final_infidelity"] for row in depth_rows(records)]
    rises = sum(b > a * (1 + 1e-3) for a, b in zip(infidelities, infidelities[1:]))
    plateaus = sum(
        abs(b - a) <= 1e-3 * a for a, b in zip(infidelities, infidelities[1:])
    )
    assert rises == 0
    assert plateaus <= 1


def test_statistical_error_scaling() -> None:
    report = run_staterror(ExperimentConfig(mode="staterror", grid="2x2"))
    (fit,) = report.tables["fit"]
    assert fit["slope"] == pytest.approx(-0.5, abs=0.05)
    assert 0.5 <= fit["prefactor"] <= 2.5
    for row in report.tables["standard_error"]:
        assert abs(row["bias"]) < 5 * row["standard_error"]


@pytest.mark.parametrize(
    "grid, layers, optimizer, bound",
    [("2x2", 1, "spsa", 0.02), ("2x2", 1, "cd", 0.02), ("2x3", 3, "cd", 0.04)],
)
def test_realistic_optimization(
    grid: str, layers: int, optimizer: str, bound: float
) -> None:
    config = ExperimentConfig(
        mode="realistic", grid=grid, layers=layers, optimizer=optimizer, workers=5
    )
    report = run_realistic(config)
    assert len(report.records) == 5
    assert 1 - median_fidelity(report.records) <= bound


def test_noisy_with_error_detection() -> None:
    config = ExperimentConfig(
        mode="noisy", grid="2x2", optimizer="spsa", noise=1e-3, error_detection="on"
    )
    report = run_noisy(config)
    assert len(report.records) == 3
    assert all(r.error_detection for r in report.records)
    assert 1 - median_fidelity(report.records) <= 0.03
    assert sum(r.discards for r in report.records) > 0
