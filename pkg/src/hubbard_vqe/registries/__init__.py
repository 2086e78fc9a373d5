"""Registry of experiment suites."""

from ._experiments_reg import ExperimentsRegistry, RegisteredExperiment
from ._register import register_experiment

__all__ = [
    "ExperimentsRegistry",
    "RegisteredExperiment",
    "register_experiment",
]
