from __future__ import annotations

import contextlib
import logging
from typing import TYPE_CHECKING, Any, ClassVar, Dict, List, Optional, Type, Union

import in_n_out as ino
from psygnal import Signal

from .experiments import BUILTIN_EXPERIMENTS, write_report
from .registries import ExperimentsRegistry
from .types import ExperimentConfig, ExperimentMode, ExperimentReport

if TYPE_CHECKING:
    from concurrent.futures import Future

    from .types import DisposeCallable

logger = logging.getLogger(__name__)


class Workbench:
    """Top-level object running experiment suites.

    Holds the experiments registry and an `in_n_out.Store` named after the workbench.
    The store provides the active `ExperimentConfig` to experiment callbacks and
    processes every `ExperimentReport` they return, writing it to ``config.out`` when
    an output directory is set.

    Parameters
    ----------
    name : str
        A name for this workbench.
    config : ExperimentConfig, optional
        Initial active configuration; defaults to `ExperimentConfig()`.
    raise_synchronous_exceptions : bool
        Whether exceptions of synchronously executed experiments propagate instead of
        being stored on the returned future, by default False.
    builtins : bool
        Register the built-in experiment suites, by default True.
    experiments_reg_class : Type[ExperimentsRegistry]
        (Optionally) override the class used for the registry.
    injection_store_class : Type[in_n_out.Store]
        (Optionally) override the class used for the injection store.

    Attributes
    ----------
    experiments : ExperimentsRegistry
        Registered experiment suites.
    injection_store : in_n_out.Store
        The injection store of this workbench.
    """

    destroyed = Signal(str)
    started = Signal(str)
    finished = Signal(str)
    _instances: ClassVar[Dict[str, Workbench]] = {}

    def __init__(
        self,
        name: str,
        *,
        config: Optional[ExperimentConfig] = None,
        raise_synchronous_exceptions: bool = False,
        builtins: bool = True,
        experiments_reg_class: Type[ExperimentsRegistry] = ExperimentsRegistry,
        injection_store_class: Type[ino.Store] = ino.Store,
    ) -> None:
        self._name = name
        if name in Workbench._instances:
            raise ValueError(
                f"Workbench {name!r} already exists. Retrieve it with "
                f"`Workbench.get_or_create({name!r})`."
            )
        Workbench._instances[name] = self

        self._config = config or ExperimentConfig()
        self._injection_store = injection_store_class.create(name)
        self._experiments = experiments_reg_class(
            self.injection_store,
            raise_synchronous_exceptions=raise_synchronous_exceptions,
        )
        self.injection_store.on_unannotated_required_args = "ignore"

        self._disposers: List[DisposeCallable] = [
            self.injection_store.register_provider(
                self._provide_config, type_hint=ExperimentConfig
            ),
            self.injection_store.register_processor(
                self._process_report, type_hint=ExperimentReport
            ),
        ]
        if builtins:
            register = self._experiments.register_experiment
            self._disposers.extend(register(exp) for exp in BUILTIN_EXPERIMENTS)

    @property
    def name(self) -> str:
        """Return the name of this `Workbench`."""
        return self._name

    @property
    def experiments(self) -> ExperimentsRegistry:
        """Return the `ExperimentsRegistry`."""
        return self._experiments

    @property
    def injection_store(self) -> ino.Store:
        """Return the `in_n_out.Store` instance associated with this `Workbench`."""
        return self._injection_store

    @property
    def config(self) -> ExperimentConfig:
        """The configuration injected into experiment callbacks."""
        return self._config

    @config.setter
    def config(self, config: ExperimentConfig) -> None:
        self._config = config

    @property
    def raise_synchronous_exceptions(self) -> bool:
        return self._experiments._raise_synchronous_exceptions

    @raise_synchronous_exceptions.setter
    def raise_synchronous_exceptions(self, value: bool) -> None:
        self._experiments._raise_synchronous_exceptions = value

    def _provide_config(self) -> ExperimentConfig:
        return self._config

    def _process_report(self, report: ExperimentReport) -> None:
        if report.config.out is not None:
            write_report(report)

    @classmethod
    def get_or_create(cls, name: str) -> Workbench:
        """Get workbench `name`, creating it if it doesn't exist."""
        return cls._instances[name] if name in cls._instances else cls(name)

    @classmethod
    def get_workbench(cls, name: str) -> Optional[Workbench]:
        """Return workbench `name` or None if it doesn't exist."""
        return cls._instances.get(name)

    @classmethod
    def destroy(cls, name: str) -> None:
        """Destroy workbench `name`, its registrations and its injection store."""
        if name not in cls._instances:
            return
        bench = cls._instances.pop(name)
        bench.dispose()
        bench.injection_store.destroy(name)
        bench.destroyed.emit(bench.name)

    def dispose(self) -> None:
        """Undo every registration made by this workbench."""
        while self._disposers:
            with contextlib.suppress(Exception):
                self._disposers.pop()()

    def submit(
        self,
        mode: Union[str, ExperimentMode, None] = None,
        config: Optional[ExperimentConfig] = None,
    ) -> Future:
        """Run an experiment and return its completed future.

        Parameters
        ----------
        mode : str or ExperimentMode, optional
            Experiment id; defaults to ``config.mode``.
        config : ExperimentConfig, optional
            Becomes the active configuration before the run.
        """
        if config is not None:
            self.config = config
        if mode is None:
            mode = self.config.mode
        mode = mode.value if isinstance(mode, ExperimentMode) else str(mode)
        builtin = mode in {m.value for m in ExperimentMode}
        if builtin and self.config.mode.value != mode:
            self.config = self.config.replace(mode=mode)
        self.started.emit(mode)
        future = self._experiments.execute_experiment(mode)
        future.add_done_callback(lambda _: self.finished.emit(mode))
        return future

    def run(
        self,
        mode: Union[str, ExperimentMode, None] = None,
        config: Optional[ExperimentConfig] = None,
    ) -> Any:
        """Run an experiment synchronously and return its result (usually a report)."""
        report = self.submit(mode, config).result()
        if not isinstance(report, ExperimentReport):
            return report
        logger.info(
            "%s finished: %d runs, %d tables (config %s)",
            report.mode.value,
            len(report.records),
            len(report.tables),
            report.config_hash,
        )
        return report

    def __repr__(self) -> str:
        return f"Workbench({self.name!r})"
