from __future__ import annotations

import sys
from typing import TYPE_CHECKING
from unittest.mock import Mock

import pytest

from hubbard_vqe import ExperimentConfig, ExperimentReport, Workbench
from hubbard_vqe.types import ExperimentMode

if TYPE_CHECKING:
    from pathlib import Path

    from conftest import FullBench


def test_workbench_create() -> None:
    assert Workbench.get_workbench("my_bench") is None
    bench = Workbench("my_bench")
    assert Workbench.get_workbench("my_bench") is bench
    assert Workbench.get_or_create("my_bench") is bench

    with pytest.raises(ValueError, match="Workbench 'my_bench' already exists"):
        Workbench("my_bench")

    assert repr(bench) == "Workbench('my_bench')"
    destroyed = Mock()
    bench.destroyed.connect(destroyed)
    Workbench.destroy("my_bench")
    destroyed.assert_called_once_with("my_bench")
    assert Workbench.get_workbench("my_bench") is None
    # destroying twice is a no-op
    Workbench.destroy("my_bench")


def test_builtin_experiments(workbench: Workbench) -> None:
    ids = {id_ for id_, _ in workbench.experiments}
    assert ids == {m.value for m in ExperimentMode}
    # registered before the fixture connected
    workbench.registered_changed.assert_not_called()  # type: ignore[attr-defined]


def test_config_injection(full_bench: FullBench) -> None:
    config = ExperimentConfig(grid="2x3")
    future = full_bench.submit(full_bench.Experiments.ECHO, config)
    assert future.result() == "2x3"
    full_bench.echo.assert_called_once_with(config)
    assert full_bench.config is config
    # non-builtin ids leave the configured mode alone
    assert full_bench.config.mode is ExperimentMode.REPRESENT


def test_started_finished_signals(full_bench: FullBench) -> None:
    started, finished = Mock(), Mock()
    full_bench.started.connect(started)
    full_bench.finished.connect(finished)
    assert full_bench.run(full_bench.Experiments.ECHO) == "2x2"
    started.assert_called_once_with(full_bench.Experiments.ECHO)
    finished.assert_called_once_with(full_bench.Experiments.ECHO)


def test_experiment_import_by_string(full_bench: FullBench) -> None:
    """The LAZY experiment is declared as a string in conftest.py.

    It is imported when first executed.
    """
    assert "fake_module" not in sys.modules
    future = full_bench.experiments.execute_experiment(full_bench.Experiments.LAZY)
    assert future.result() == "2x2"
    assert "fake_module" in sys.modules
    full_bench.lazy.assert_called_once_with(full_bench.config)

    with pytest.raises(
        ModuleNotFoundError,
        match="Experiment pointer 'unresolvable:function' registered for "
        "'unimportable' was not importable",
    ):
        full_bench.experiments.execute_experiment(full_bench.Experiments.UNIMPORTABLE)
    # failures are not cached, so a repeated run raises again
    with pytest.raises(ModuleNotFoundError, match="was not importable"):
        full_bench.experiments.execute_experiment(full_bench.Experiments.UNIMPORTABLE)

    with pytest.raises(TypeError, match="did not resolve to a callable object"):
        full_bench.experiments.execute_experiment(full_bench.Experiments.NOT_CALLABLE)
    with pytest.raises(TypeError, match="did not resolve to a callable object"):
        full_bench.experiments.execute_experiment(full_bench.Experiments.NOT_CALLABLE)


def test_experiment_raises_exception(full_bench: FullBench) -> None:
    result = full_bench.submit(full_bench.Experiments.RAISES)
    with pytest.raises(ValueError):
        result.result()
    assert str(result.exception()) == "This is an error"

    assert not full_bench.raise_synchronous_exceptions
    full_bench.raise_synchronous_exceptions = True
    assert full_bench.raise_synchronous_exceptions

    with pytest.raises(ValueError):
        full_bench.submit(full_bench.Experiments.RAISES)


def test_dispose_unregisters_builtins() -> None:
    bench = Workbench("disposable")
    assert len(bench.experiments) == len(ExperimentMode)
    bench.dispose()
    assert len(bench.experiments) == 0
    Workbench.destroy("disposable")


def test_run_resources_writes_report(workbench: Workbench, tmp_path: Path) -> None:
    config = ExperimentConfig(grid="2x4", layers=2, fft_sizes=(4,), out=tmp_path)
    report = workbench.run("resources", config)
    assert isinstance(report, ExperimentReport)
    assert report.mode is ExperimentMode.RESOURCES
    assert workbench.config.mode is ExperimentMode.RESOURCES
    # the report processor wrote the tables
    written = {p.name for p in tmp_path.iterdir()}
    assert f"resources_{report.config_hash}_config.json" in written
    assert "resources_fft_comparison.csv" in written


def test_run_without_output_dir_writes_nothing(
    workbench: Workbench, tmp_path: Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    monkeypatch.chdir(tmp_path)
    report = workbench.run("resources", ExperimentConfig(fft_sizes=(4,)))
    assert isinstance(report, ExperimentReport)
    assert not list(tmp_path.iterdir())
