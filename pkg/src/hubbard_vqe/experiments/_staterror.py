from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Dict, List, NamedTuple, Sequence

import numpy as np

from hubbard_vqe.measurement import EnergyEstimator
from hubbard_vqe.simulator import make_rng
from hubbard_vqe.types import (
    ExperimentConfig,
    ExperimentMode,
    ExperimentReport,
    MeasurementConfig,
)

from ._pipeline import prepare_problem

if TYPE_CHECKING:
    import numpy.typing as npt

    from hubbard_vqe.types._experiment import Cell

logger = logging.getLogger(__name__)


class PowerLawFit(NamedTuple):
    """``error ≈ prefactor * m ** slope``."""

    slope: float
    prefactor: float


def fit_power_law(m_values: Sequence[int], errors: npt.ArrayLike) -> PowerLawFit:
    """Least-squares line through ``(log m, log error)``.

    Examples
    --------
    >>> fit_power_law([100, 10_000], [0.1, 0.01])
    PowerLawFit(slope=-0.5..., prefactor=1.0...)
    """
    slope, intercept = np.polyfit(np.log(m_values), np.log(errors), 1)
    return PowerLawFit(float(slope), float(np.exp(intercept)))


def run_staterror(config: ExperimentConfig) -> ExperimentReport:
    """Statistical error of the energy estimator as a function of shots per setting.

    Draws ``config.estimates_per_m`` noiseless estimates of the exact ground state for
    each ``m`` in ``config.m_values`` and fits the sample standard deviation against
    ``m`` on a log-log scale.
    """
    problem = prepare_problem(config)
    rng = make_rng(config.seed)
    rows: List[Dict[str, Cell]] = []
    for m in config.m_values:
        estimator = EnergyEstimator(problem.model, MeasurementConfig(m=m))
        values = np.array(
            [
                estimator.estimate(problem.ground_state, rng).value
                for _ in range(config.estimates_per_m)
            ]
        )
        error = float(np.std(values, ddof=1))
        logger.info("m=%d: standard error %.4e", m, error)
        rows.append(
            {
                "m": m,
                "estimates": values.size,
                "mean": float(values.mean()),
                "bias": float(values.mean() - problem.ground.energy),
                "standard_error": error,
            }
        )
    fit = fit_power_law(config.m_values, [r["standard_error"] for r in rows])
    logger.info("standard error ~ %.3f m^%.3f", fit.prefactor, fit.slope)
    return ExperimentReport(
        mode=ExperimentMode.STATERROR,
        config=config,
        tables={
            "standard_error": tuple(rows),
            "fit": ({"grid": problem.model.geometry.label, **fit._asdict()},),
        },
    )
