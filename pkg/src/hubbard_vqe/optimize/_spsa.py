from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Optional, Tuple

import numpy as np

from hubbard_vqe.types import SpsaConfig

from ._trace import OptimizerTrace

if TYPE_CHECKING:
    import numpy.typing as npt

    from hubbard_vqe.simulator import RandomSource

    from ._objective import Objective

logger = logging.getLogger(__name__)


def bernoulli_direction(size: int, rng: RandomSource) -> np.ndarray:
    """Random vector with independent ±1 entries of equal probability."""
    return 2.0 * rng.integers(0, 2, size=size) - 1.0


def spsa_gradient(
    objective: Objective,
    x: npt.ArrayLike,
    c_k: float,
    rng: RandomSource,
    averaging: int = 1,
    m: Optional[int] = None,
) -> Tuple[np.ndarray, float]:
    """Simultaneous-perturbation gradient estimate at `x`.

    Each of the `averaging` estimates perturbs every parameter at once along a random
    ±1 direction ``Δ`` and uses ``(f(x + c Δ) - f(x - c Δ)) / (2 c Δ_i)``; they cost
    two objective evaluations each.

    Returns
    -------
    (ndarray, float)
        The averaged gradient and the mean of all evaluated objective values.
    """
    x = np.asarray(x, dtype=float)
    grad = np.zeros_like(x)
    seen = 0.0
    for _ in range(averaging):
        delta = bernoulli_direction(x.size, rng)
        plus = objective(x + c_k * delta, m)
        minus = objective(x - c_k * delta, m)
        # 1 / Δ_i == Δ_i for ±1 entries
        grad += (plus - minus) / (2 * c_k) * delta
        seen += plus + minus
    return grad / averaging, seen / (2 * averaging)


def minimize_spsa(
    objective: Objective,
    x0: npt.ArrayLike,
    config: Optional[SpsaConfig] = None,
    rng: Optional[RandomSource] = None,
    final_m: Optional[int] = None,
    trace: Optional[OptimizerTrace] = None,
) -> OptimizerTrace:
    """Multi-stage SPSA over an energy-estimate budget.

    The budget is split over stages by ``config.stage_ratios``; each stage restarts the
    gain sequences ``a_k = a / (k + 1 + A)^α`` and ``c_k = c / (k + 1)^γ`` from the
    current point, with its own shots per setting and gradient averaging. Runs always
    spend the whole budget (status ``"budget"``); the final point is the result.

    Parameters
    ----------
    objective : Objective
        Stochastic objective; called with the stage's shot count.
    x0 : array-like
        Starting parameters.
    config : SpsaConfig, optional
        Gains, stages and budget.
    rng : numpy.random.Generator, optional
        Source of perturbation directions.
    final_m : int, optional
        Shots per setting of the last stage, overriding ``config.stage_shots[-1]``.
    trace : OptimizerTrace, optional
        Empty trace to record into, for callers that connect to its signals.
    """
    config = config or SpsaConfig()
    rng = rng if rng is not None else np.random.default_rng()
    shots = list(config.stage_shots)
    if final_m is not None:
        shots[-1] = final_m

    trace = trace if trace is not None else OptimizerTrace("spsa")
    x = np.asarray(x0, dtype=float).copy()
    stages = zip(config.stage_budgets(), shots, config.stage_averaging)
    for stage, (budget, m, averaging) in enumerate(stages):
        trace.start_stage(stage)
        iterations = budget // (2 * averaging)
        logger.info(
            "SPSA stage %d: %d iterations at m=%d (averaging %d)",
            stage,
            iterations,
            m,
            averaging,
        )
        for k in range(iterations):
            a_k, c_k = config.gains(k)
            grad, value = spsa_gradient(objective, x, c_k, rng, averaging, m)
            x = x - a_k * grad
            trace.record(x, value, objective.ledger)
    if not len(trace):
        trace.record(x, np.nan, objective.ledger)
    return trace.finish("budget")
