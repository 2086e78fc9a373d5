"""Variational ground states of the 2D Fermi-Hubbard model on a simulated device."""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("hubbard-vqe")
except PackageNotFoundError:  # pragma: no cover
    __version__ = "uninstalled"

from ._app import Workbench
from .registries._register import register_experiment
from .types import Experiment, ExperimentConfig, ExperimentReport

__all__ = [
    "Experiment",
    "ExperimentConfig",
    "ExperimentReport",
    "Workbench",
    "__version__",
    "register_experiment",
]
