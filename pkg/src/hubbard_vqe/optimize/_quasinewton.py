from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Optional, Tuple

import numpy as np
from scipy.optimize import minimize

from hubbard_vqe.types import QuasiNewtonConfig

from ._trace import OptimizerTrace

if TYPE_CHECKING:
    import numpy.typing as npt

    from ._objective import Objective

logger = logging.getLogger(__name__)


class _BudgetExhausted(Exception):
    pass


def central_difference(
    objective: Objective, x: np.ndarray, step: float
) -> np.ndarray:
    """Gradient by central differences, two evaluations per parameter."""
    grad = np.empty_like(x)
    for i in range(x.size):
        shift = np.zeros_like(x)
        shift[i] = step
        grad[i] = (objective(x + shift) - objective(x - shift)) / (2 * step)
    return grad


def minimize_quasinewton_fd(
    objective: Objective,
    x0: npt.ArrayLike,
    config: Optional[QuasiNewtonConfig] = None,
    trace: Optional[OptimizerTrace] = None,
) -> OptimizerTrace:
    """L-BFGS with central finite-difference gradients.

    Meant for deterministic (exact-expectation) objectives. Stops when the projected
    gradient falls below ``config.gtol``, when the relative decrease stalls below
    ``config.ftol``, or when ``config.max_evaluations`` objective calls (gradient
    evaluations included) are spent; in the last case the best point seen is
    recorded and the status is ``"budget"``.
    """
    config = config or QuasiNewtonConfig()
    if not objective.deterministic:
        logger.warning("Finite differences on a stochastic objective are unreliable")
    trace = trace if trace is not None else OptimizerTrace("lbfgs")
    x0 = np.asarray(x0, dtype=float)
    per_call = 1 + 2 * x0.size
    start = objective.ledger.estimates
    best: Tuple[float, np.ndarray] = (np.inf, x0.copy())
    last: Tuple[float, np.ndarray] = (np.inf, x0.copy())

    def value_and_grad(x: np.ndarray) -> Tuple[float, np.ndarray]:
        nonlocal best, last
        if objective.ledger.estimates - start + per_call > config.max_evaluations:
            raise _BudgetExhausted
        value = objective(x)
        grad = central_difference(objective, x, config.step)
        last = (value, x.copy())
        if value < best[0]:
            best = (value, x.copy())
        return value, grad

    def on_iteration(xk: np.ndarray) -> None:
        trace.record(xk, last[0], objective.ledger)
        logger.debug("L-BFGS iteration %d: %.10f", len(trace), last[0])

    try:
        result = minimize(
            value_and_grad,
            x0,
            jac=True,
            method="L-BFGS-B",
            callback=on_iteration,
            options={
                "maxcor": config.memory,
                "gtol": config.gtol,
                "ftol": config.ftol,
                "maxfun": max(1, config.max_evaluations // per_call),
                "maxiter": config.max_evaluations,
            },
        )
    except _BudgetExhausted:
        logger.info("L-BFGS evaluation budget of %d spent", config.max_evaluations)
        trace.record(best[1], best[0], objective.ledger)
        return trace.finish("budget")

    final = trace.final
    moved = final is None or not np.array_equal(final.parameters, result.x)
    # line searches can spend beyond the last iteration
    if moved or final.estimates != objective.ledger.estimates:
        trace.record(result.x, float(result.fun), objective.ledger)
    status = "converged" if result.success else "stopped"
    logger.info(
        "L-BFGS %s after %d iterations: %.10f (%s)",
        status,
        result.nit,
        result.fun,
        result.message,
    )
    return trace.finish(status)
