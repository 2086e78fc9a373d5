from __future__ import annotations

import sys
from pathlib import Path
from typing import TYPE_CHECKING
from unittest.mock import Mock

import numpy as np
import pytest

from hubbard_vqe import Experiment, ExperimentConfig, Workbench
from hubbard_vqe.types import HubbardModel, OccupationSector

if TYPE_CHECKING:
    from typing import Iterator

FIXTURES = Path(__file__).parent / "fixtures"


class Experiments:
    ECHO = "echo"
    LAZY = "lazy"
    UNIMPORTABLE = "unimportable"
    NOT_CALLABLE = "not.callable"
    RAISES = "raises.error"


def _raise_an_error(config: ExperimentConfig) -> None:
    raise ValueError("This is an error")


class FullBench(Workbench):
    Experiments = Experiments

    def __init__(self, name: str) -> None:
        super().__init__(name, builtins=False)
        self.echo = Mock(name=Experiments.ECHO)

    @property
    def lazy(self) -> Mock:
        """Mock called by `run_me` in fixtures/fake_module.py.

        The LAZY experiment is registered as ``"fake_module:run_me"``, so running it
        imports that module first. The fixtures directory must be on sys.path.
        """
        try:
            from fake_module import GLOBAL_MOCK

            return GLOBAL_MOCK
        except ImportError as e:
            raise ImportError(
                "This mock must be run with the fixtures directory added to sys.path."
            ) from e


def build_bench(name: str = "complete_test_bench") -> FullBench:
    bench = FullBench(name)

    def echo(config: ExperimentConfig) -> str:
        bench.echo(config)
        return config.grid

    experiments = [
        Experiment(id=Experiments.ECHO, title="Echo the grid", callback=echo),
        Experiment(
            id=Experiments.LAZY, title="Lazily imported", callback="fake_module:run_me"
        ),
        Experiment(
            id=Experiments.UNIMPORTABLE,
            title="Can't be found",
            callback="unresolvable:function",
        ),
        Experiment(
            id=Experiments.NOT_CALLABLE,
            title="Will Never Work",
            callback="fake_module:attr",
        ),
        Experiment(
            id=Experiments.RAISES, title="Will raise an error", callback=_raise_an_error
        ),
    ]
    for experiment in experiments:
        bench.experiments.register_experiment(experiment)
    return bench


@pytest.fixture
def full_bench(monkeypatch: pytest.MonkeyPatch) -> Iterator[FullBench]:
    """Workbench with test experiments and no built-in suites."""
    try:
        bench = build_bench("complete_test_bench")
        with monkeypatch.context() as m:
            m.setattr(sys, "path", [str(FIXTURES), *sys.path])
            sys.modules.pop("fake_module", None)
            yield bench
            bench.lazy.reset_mock()
    finally:
        Workbench.destroy("complete_test_bench")


@pytest.fixture
def workbench() -> Iterator[Workbench]:
    bench = Workbench("test")
    bench.registered_changed = Mock()  # type: ignore[attr-defined]
    bench.experiments.registered.connect(bench.registered_changed)  # type: ignore
    yield bench
    Workbench.destroy("test")
    assert "test" not in Workbench._instances


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def model_1x2() -> HubbardModel:
    return HubbardModel.from_grid("1x2")


@pytest.fixture
def model_2x2() -> HubbardModel:
    return HubbardModel.from_grid("2x2")


@pytest.fixture
def half_filled() -> OccupationSector:
    return OccupationSector(n_up=1, n_down=1)
