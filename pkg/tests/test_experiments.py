from __future__ import annotations

import csv
import json
from typing import TYPE_CHECKING, Any

import numpy as np
import pytest
from pydantic import ValidationError

from hubbard_vqe.experiments import (
    SUMMARY_COLUMNS,
    fit_power_law,
    prepare_problem,
    record_filename,
    run_replicas,
    run_single,
    spread_rows,
    write_report,
)
from hubbard_vqe.experiments._realistic import check_budget, discard_rows
from hubbard_vqe.types import (
    CdConfig,
    ExperimentConfig,
    ExperimentMode,
    ExperimentReport,
    OccupationSector,
    RunRecord,
    SpsaConfig,
)

if TYPE_CHECKING:
    from pathlib import Path


def _record(**changes: Any) -> RunRecord:
    fields: dict = {
        "config_hash": "abc123",
        "mode": "represent",
        "grid": "2x2",
        "ansatz": "ehv",
        "layers": 1,
        "optimizer": "lbfgs",
        "seed": 0,
        "U": 2.0,
        "status": "converged",
        "parameters": (0.1, 0.2, 0.3),
        "trace": (),
        "exact_energy": -2.0,
        "final_energy": -1.9,
        "final_fidelity": 0.98,
        "double_occupancy_error": 0.01,
        "estimates": 10,
        "measurements_used": 0,
        "circuit_evaluations": 10,
        "discards": 0,
        "wall_clock": 0.5,
    }
    fields.update(changes)
    return RunRecord(**fields)


def test_record_filename() -> None:
    assert record_filename(_record()) == "represent_2x2_ehv_L1_seed0.json"
    assert record_filename(_record(run=2)) == "represent_2x2_ehv_L1_seed0_run2.json"
    usweep = _record(mode="usweep", U=1.5, seed=3)
    assert record_filename(usweep) == "usweep_2x2_ehv_L1_seed3_U1.5.json"
    noisy = _record(mode="noisy", error_detection=True)
    assert record_filename(noisy) == "noisy_2x2_ehv_L1_seed0_ed.json"


def test_record_scores() -> None:
    record = _record()
    assert record.final_infidelity == pytest.approx(0.02)
    assert record.final_energy_error == pytest.approx(0.1)
    assert tuple(record.summary_row()) == SUMMARY_COLUMNS


def test_write_report(tmp_path: Path) -> None:
    config = ExperimentConfig(out=tmp_path)
    report = ExperimentReport(
        mode=ExperimentMode.REPRESENT,
        config=config,
        records=(_record(), _record(run=1, final_fidelity=0.9)),
        tables={"depth_to_target": ({"grid": "2x2", "depth": 1},), "empty": ()},
    )
    paths = write_report(report)
    names = {p.name for p in paths}
    assert f"represent_{config.config_hash}_config.json" in names
    assert "represent_2x2_ehv_L1_seed0_run1.json" in names
    assert "represent_empty.csv" not in names

    stored = json.loads((tmp_path / "represent_2x2_ehv_L1_seed0.json").read_text())
    assert stored["final_fidelity"] == 0.98

    with open(tmp_path / "represent_depth_to_target.csv", newline="") as f:
        (row,) = list(csv.DictReader(f))
    assert row["config_hash"] == config.config_hash
    assert row["seed"] == "0"

    # the summary is appended to, one row per run
    write_report(report)
    with open(tmp_path / "represent_summary.csv", newline="") as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 4
    assert list(rows[0]) == list(SUMMARY_COLUMNS)


def test_write_report_needs_directory() -> None:
    report = ExperimentReport(mode=ExperimentMode.REPRESENT, config=ExperimentConfig())
    with pytest.raises(ValueError, match="No output directory configured."):
        write_report(report)


def test_spread_rows() -> None:
    records = [
        _record(final_fidelity=0.99),
        _record(run=1, final_fidelity=0.97, discards=3),
        _record(run=2, final_fidelity=0.95),
        _record(layers=2, final_fidelity=0.999),
    ]
    first, second = spread_rows(records)
    assert (first["grid"], first["layers"], first["runs"]) == ("2x2", 1, 3)
    assert first["median_infidelity"] == pytest.approx(0.03)
    assert first["min_infidelity"] == pytest.approx(0.01)
    assert first["max_infidelity"] == pytest.approx(0.05)
    assert first["discards"] == 3
    assert second["runs"] == 1


def test_discard_rows() -> None:
    records = [
        _record(error_detection=True, discards=10, circuit_evaluations=90),
        _record(error_detection=False, circuit_evaluations=100),
    ]
    detected, plain = discard_rows(records)
    assert detected["error_detection"] is True
    assert detected["discard_fraction"] == pytest.approx(0.1)
    assert plain["discard_fraction"] == 0.0


def test_fit_power_law() -> None:
    fit = fit_power_law([100, 10_000], [0.1, 0.01])
    assert fit.slope == pytest.approx(-0.5)
    assert fit.prefactor == pytest.approx(1.0)


def test_config_defaults() -> None:
    assert ExperimentConfig().run_count == 1
    assert ExperimentConfig(mode="realistic").run_count == 5
    assert ExperimentConfig(mode="noisy").run_count == 3
    assert ExperimentConfig(mode="noisy", runs=7).run_count == 7

    assert ExperimentConfig().detection_settings == (False,)
    assert ExperimentConfig(mode="noisy").detection_settings == (True, False)
    assert ExperimentConfig(error_detection="on").detection_settings == (True,)


def test_config_hash(tmp_path: Path) -> None:
    base = ExperimentConfig()
    assert base.config_hash == ExperimentConfig(out=tmp_path, workers=4).config_hash
    assert base.config_hash != ExperimentConfig(seed=1).config_hash
    changed = base.replace(grid="3X2", U=4)
    assert changed.grid == "3x2"
    assert changed.U == 4.0
    assert base.U == 2.0


@pytest.mark.parametrize("grid", ["1x1", "banana", "0x3"])
def test_config_rejects_grid(grid: str) -> None:
    with pytest.raises(ValidationError):
        ExperimentConfig(grid=grid)


def test_config_files(tmp_path: Path) -> None:
    with pytest.raises(ValidationError, match="does not exist"):
        ExperimentConfig(init_file=tmp_path / "missing.npy")
    with pytest.raises(ValidationError):
        ExperimentConfig(t_f="not a name")

    path = tmp_path / "config.json"
    path.write_text(json.dumps({"grid": "2x3", "U": 4.0}))
    config = ExperimentConfig.from_file(path, U=3.0, seed=None)
    assert (config.grid, config.U, config.seed) == ("2x3", 3.0, 0)

    path.write_text(json.dumps([1, 2]))
    with pytest.raises(TypeError, match="JSON object"):
        ExperimentConfig.from_file(path)


def test_prepare_problem() -> None:
    problem = prepare_problem(ExperimentConfig(grid="2x2"))
    assert problem.sector == OccupationSector(n_up=1, n_down=1)
    assert problem.ground.degeneracy == 1
    assert problem.ground_state.hamming_support() == (2,)

    override = prepare_problem(ExperimentConfig(grid="2x2", eta=3))
    assert override.sector == OccupationSector(n_up=2, n_down=1)
    free = prepare_problem(ExperimentConfig(grid="1x2"), U=0.0)
    assert free.ground.energy == pytest.approx(-2.0)
    assert free.ground_double_occupancy == pytest.approx(0.5)


def test_check_budget() -> None:
    problem = prepare_problem(ExperimentConfig(grid="2x2"))
    realistic = ExperimentConfig(mode="realistic", grid="2x2")
    with pytest.raises(ValueError, match="choose the spsa or cd optimizer"):
        check_budget(realistic, problem)

    tiny_spsa = realistic.replace(optimizer="spsa", spsa=SpsaConfig(budget=20))
    with pytest.raises(ValueError, match="SPSA stage 2 gets 1 estimates"):
        check_budget(tiny_spsa, problem)
    check_budget(realistic.replace(optimizer="spsa"), problem)

    # the first EHV parameter has degree 4: nine nodes
    tiny_cd = realistic.replace(optimizer="cd", cd=CdConfig(budget=5))
    with pytest.raises(ValueError, match="below the 9 estimates"):
        check_budget(tiny_cd, problem)


def test_run_single_exact() -> None:
    config = ExperimentConfig(grid="1x2", seed=4)
    problem = prepare_problem(config)
    rng = np.random.default_rng(config.seed)
    record = run_single(config, problem, 1, rng, exact=True)
    assert (record.mode, record.grid, record.layers, record.run) == (
        "represent",
        "1x2",
        1,
        0,
    )
    assert record.config_hash == config.config_hash
    assert record.exact_energy == pytest.approx(1 - np.sqrt(5))
    assert record.final_energy >= record.exact_energy - 1e-9
    assert 0.0 <= record.final_fidelity <= 1.0 + 1e-9
    assert len(record.parameters) == 2
    assert record.trace
    assert record.estimates == record.circuit_evaluations
    assert (record.measurements_used, record.discards, record.noise) == (0, 0, 0.0)


def test_replicas_do_not_depend_on_workers() -> None:
    config = ExperimentConfig(
        mode="realistic",
        grid="1x2",
        optimizer="cd",
        cd=CdConfig(budget=25),
        m=200,
        runs=2,
        seed=11,
    )
    problem = prepare_problem(config)
    serial = run_replicas(config, problem, 1, exact=False)
    pooled = run_replicas(config.replace(workers=2), problem, 1, exact=False)
    assert [r.run for r in serial] == [0, 1]
    assert [r.parameters for r in serial] == [r.parameters for r in pooled]
    assert serial[0].parameters != serial[1].parameters
    for record in serial:
        assert record.estimates <= 25
        assert record.measurements_used > 0
        assert record.noise == 0.0
