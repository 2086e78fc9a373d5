from __future__ import annotations

import logging
import time
from concurrent.futures import Future
from typing import TYPE_CHECKING, Any, Callable, Iterator, Optional

from in_n_out import Store
from psygnal import Signal

from hubbard_vqe.types import Experiment, ExperimentMode, ExperimentReport
from hubbard_vqe.types._utils import import_python_name

if TYPE_CHECKING:
    from hubbard_vqe.types import DisposeCallable

logger = logging.getLogger(__name__)

_BUILTIN_IDS = frozenset(m.value for m in ExperimentMode)


class RegisteredExperiment:
    """An `Experiment` bound to the injection store it runs with.

    A callback given as a python name is imported on first use. Failed imports are
    not remembered, so every attempt to run a broken experiment raises again.
    """

    def __init__(self, experiment: Experiment, store: Optional[Store] = None) -> None:
        self._experiment = experiment
        self._store = store or Store.get_store()
        self._runner: Optional[Callable[..., Any]] = None

    @property
    def experiment(self) -> Experiment:
        return self._experiment

    @property
    def id(self) -> str:
        return self._experiment.id

    @property
    def title(self) -> str:
        return self._experiment.title

    @property
    def is_resolved(self) -> bool:
        """Whether the callback has been imported and wrapped for injection."""
        return self._runner is not None

    def resolve(self) -> Callable[..., Any]:
        """Return the callback, importing it if it was registered by name."""
        callback = self._experiment.callback
        if callable(callback):
            return callback
        try:
            resolved = import_python_name(callback)
        except (ImportError, AttributeError) as e:
            raise type(e)(
                f"Experiment pointer {callback!r} registered for {self.id!r} was not "
                f"importable: {e}"
            ) from e
        if not callable(resolved):
            raise TypeError(
                f"Experiment pointer {callback!r} registered for {self.id!r} did not "
                "resolve to a callable object."
            )
        return resolved

    @property
    def runner(self) -> Callable[..., Any]:
        """The callback with its missing arguments supplied by the store."""
        if self._runner is None:
            self._runner = self._store.inject(self.resolve())
        return self._runner

    def process(self, result: Any) -> Any:
        """Check `result` against this id and hand it to the store's processors."""
        check_report(self.id, result)
        self._store.process(result, raise_exception=True)
        return result

    def __repr__(self) -> str:
        return f"RegisteredExperiment({self.id!r}, {self.title!r})"


def check_report(id: str, result: Any) -> Any:
    """Reject a report that a built-in experiment filed under another mode."""
    if (
        id in _BUILTIN_IDS
        and isinstance(result, ExperimentReport)
        and result.mode.value != id
    ):
        raise ValueError(
            f"Experiment {id!r} returned a {result.mode.value!r} report."
        )
    return result


class ExperimentsRegistry:
    """Registry of experiment suites, keyed by their CLI verb."""

    registered = Signal(str)

    def __init__(
        self,
        injection_store: Optional[Store] = None,
        raise_synchronous_exceptions: bool = False,
    ) -> None:
        self._experiments: dict[str, RegisteredExperiment] = {}
        self._injection_store = injection_store
        self._raise_synchronous_exceptions = raise_synchronous_exceptions

    def register_experiment(self, experiment: Experiment) -> DisposeCallable:
        """Register an `Experiment` record; returns a function undoing it."""
        if experiment.id in self._experiments:
            raise ValueError(
                f"Experiment {experiment.id!r} already registered with callback "
                f"{self._experiments[experiment.id].experiment.callback!r} "
                f"(new callback: {experiment.callback!r})"
            )
        entry = RegisteredExperiment(experiment, self._injection_store)
        self._experiments[experiment.id] = entry

        def _dispose() -> None:
            if self._experiments.get(experiment.id) is entry:
                del self._experiments[experiment.id]

        self.registered.emit(experiment.id)
        return _dispose

    def register(
        self, id: str, callback: Callable[..., Any] | str, title: str
    ) -> DisposeCallable:
        """Register `callback`, or its ``"module:function"`` name, under `id`."""
        return self.register_experiment(
            Experiment(id=id, title=title, callback=callback)
        )

    def __iter__(self) -> Iterator[tuple[str, RegisteredExperiment]]:
        yield from self._experiments.items()

    def __len__(self) -> int:
        return len(self._experiments)

    def __contains__(self, id: str) -> bool:
        return id in self._experiments

    def __repr__(self) -> str:
        name = self.__class__.__name__
        return f"<{name} at {hex(id(self))} ({len(self._experiments)} experiments)>"

    def __getitem__(self, id: str) -> RegisteredExperiment:
        if id not in self._experiments:
            raise KeyError(f"Experiment {id!r} not registered")
        return self._experiments[id]

    def execute_experiment(self, id: str, *args: Any, **kwargs: Any) -> Future:
        """Run a registered experiment in the calling thread.

        A missing `ExperimentConfig` argument is supplied by the injection store, and
        a returned `ExperimentReport` is checked against `id` before the store's
        processors see it.

        Returns
        -------
        concurrent.futures.Future
            Holds the runner's result or exception. Errors resolving the callback
            are raised directly, as are runner errors when
            ``raise_synchronous_exceptions`` is set.
        """
        experiment = self[id]
        runner = experiment.runner
        logger.info("running experiment %r", id)
        started = time.perf_counter()
        future: Future = Future()
        try:
            future.set_result(experiment.process(runner(*args, **kwargs)))
        except Exception as e:
            if self._raise_synchronous_exceptions:
                raise
            future.set_exception(e)
        logger.debug("experiment %r took %.2fs", id, time.perf_counter() - started)
        return future

    def __str__(self) -> str:
        lines = [f"{id_!r:<16} -> {exp.title!r}" for id_, exp in self]
        return "\n".join(lines)
