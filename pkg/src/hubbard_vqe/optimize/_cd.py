from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Optional, Sequence

import numpy as np

from hubbard_vqe.types import CdConfig

from ._trace import OptimizerTrace
from ._trig import fit_trig_polynomial, minimize_trig_polynomial, trig_nodes

if TYPE_CHECKING:
    import numpy.typing as npt

    from hubbard_vqe.simulator import RandomSource

    from ._objective import Objective

logger = logging.getLogger(__name__)


def minimize_cd(
    objective: Objective,
    x0: npt.ArrayLike,
    degrees: Sequence[int],
    config: Optional[CdConfig] = None,
    rng: Optional[RandomSource] = None,
    trace: Optional[OptimizerTrace] = None,
) -> OptimizerTrace:
    """Coordinate descent by exact single-parameter minimization.

    For parameter ``j`` of degree ``D_j`` the objective is sampled at the ``2 D_j + 1``
    angles of `trig_nodes` (all other parameters fixed), the samples are fitted with a
    trigonometric polynomial and the parameter jumps to its minimum. Sweeps visit the
    parameters in circuit order, or in a fresh random order per sweep when
    ``config.order == "random"``. The run stops when the next parameter would overrun
    the estimate budget (status ``"budget"``) or after ``config.max_sweeps`` sweeps.

    Parameters
    ----------
    objective : Objective
        Objective, called with ``config.m`` shots per setting.
    x0 : array-like
        Starting parameters.
    degrees : Sequence[int]
        Trigonometric degree of the objective in each parameter
        (see `hubbard_vqe.ansatz.parameter_degrees`).
    config : CdConfig, optional
        Budget, shots, order and root tolerance.
    rng : numpy.random.Generator, optional
        Used for the random visiting order.
    trace : OptimizerTrace, optional
        Empty trace to record into.
    """
    config = config or CdConfig()
    x = np.asarray(x0, dtype=float).copy()
    if len(degrees) != x.size:
        raise ValueError(f"Got {len(degrees)} degrees for {x.size} parameters.")
    if config.order == "random" and rng is None:
        raise ValueError("A random visiting order needs a random generator.")

    trace = trace if trace is not None else OptimizerTrace("cd")
    start = objective.ledger.estimates
    for sweep in range(config.max_sweeps):
        order = np.arange(x.size)
        if config.order == "random":
            order = rng.permutation(x.size)  # type: ignore[union-attr]
        for j in order:
            nodes = trig_nodes(int(degrees[j]))
            spent = objective.ledger.estimates - start
            if spent + nodes.size > config.budget:
                logger.info(
                    "CD budget of %d estimates reached in sweep %d",
                    config.budget,
                    sweep,
                )
                if not len(trace):
                    trace.record(x, np.nan, objective.ledger)
                return trace.finish("budget")
            values = np.empty(nodes.size)
            for i, theta in enumerate(nodes):
                x[j] = theta
                values[i] = objective(x, config.m)
            poly = fit_trig_polynomial(values, int(degrees[j]))
            best = minimize_trig_polynomial(poly, config.root_tolerance)
            x[j] = best.theta
            trace.record(x, best.value, objective.ledger)
        if trace.final is not None:
            logger.debug("CD sweep %d done: %.8f", sweep, trace.final.value)
    return trace.finish("max_sweeps")
