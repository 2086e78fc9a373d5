from __future__ import annotations

from typing import TYPE_CHECKING, overload

from hubbard_vqe.types import Experiment

if TYPE_CHECKING:
    from typing import Any, Callable, Literal, TypeVar

    from hubbard_vqe import Workbench
    from hubbard_vqe.types import DisposeCallable

    ExperimentCallable = TypeVar("ExperimentCallable", bound=Callable[..., Any])
    ExperimentDecorator = Callable[[Callable], Callable]


@overload
def register_experiment(
    workbench: Workbench | str, id_or_experiment: Experiment
) -> DisposeCallable: ...


@overload
def register_experiment(
    workbench: Workbench | str,
    id_or_experiment: str,
    title: str,
    *,
    callback: Literal[None] = ...,
) -> ExperimentDecorator: ...


@overload
def register_experiment(
    workbench: Workbench | str,
    id_or_experiment: str,
    title: str,
    *,
    callback: ExperimentCallable | str,
) -> DisposeCallable: ...


def register_experiment(
    workbench: Workbench | str,
    id_or_experiment: str | Experiment,
    title: str | None = None,
    *,
    callback: ExperimentCallable | str | None = None,
) -> ExperimentDecorator | DisposeCallable:
    """Register an experiment suite with a workbench.

    Works directly or as a decorator:

    ```python
    @register_experiment("hubbard-vqe", "mysuite", title="My suite")
    def run_mysuite(config: ExperimentConfig) -> ExperimentReport: ...
    ```

    Parameters
    ----------
    workbench : Workbench | str
        Workbench, or the name of one (created if missing).
    id_or_experiment : str | Experiment
        Complete `Experiment` record, or the experiment id. With a record, all other
        arguments are ignored.
    title : str | None
        One-line description; required when `id_or_experiment` is a string.
    callback : Callable | str | None
        Runner or its ``"module:function"`` name. When omitted a decorator is
        returned.

    Returns
    -------
    ExperimentDecorator | DisposeCallable
        A decorator when `callback` is omitted, else a function undoing the
        registration.
    """
    if isinstance(id_or_experiment, Experiment):
        return _register_experiment_obj(workbench, id_or_experiment)
    if isinstance(id_or_experiment, str):
        if not title:
            raise ValueError("'title' is required when 'id' is a string")
        if callback is not None:
            return _register_experiment_obj(
                workbench,
                Experiment(id=id_or_experiment, title=title, callback=callback),
            )

        def decorator(runner: ExperimentCallable) -> ExperimentCallable:
            if not callable(runner):
                raise TypeError(
                    "@register_experiment decorator must be passed a callable object"
                )
            experiment = Experiment(id=id_or_experiment, title=title, callback=runner)
            _register_experiment_obj(workbench, experiment)
            return runner

        decorator.__doc__ = (
            f"Decorate function as the runner of experiment {id_or_experiment!r}"
        )
        return decorator
    raise TypeError("'id_or_experiment' must be a string or an Experiment")


def _register_experiment_obj(
    workbench: Workbench | str, experiment: Experiment
) -> DisposeCallable:
    from hubbard_vqe._app import Workbench

    if not isinstance(workbench, Workbench):
        workbench = Workbench.get_or_create(workbench)
    return workbench.experiments.register_experiment(experiment)
