"""Optimizers over ansatz parameters: L-BFGS, SPSA and coordinate descent."""

from hubbard_vqe.types import CdConfig, OptimizerKind, QuasiNewtonConfig, SpsaConfig

from ._cd import minimize_cd
from ._objective import Objective
from ._quasinewton import central_difference, minimize_quasinewton_fd
from ._spsa import bernoulli_direction, minimize_spsa, spsa_gradient
from ._trace import OptimizerTrace, SpendLedger, TracePoint
from ._trig import (
    TrigMinimum,
    TrigPolynomial,
    fit_trig_polynomial,
    minimize_trig_polynomial,
    trig_nodes,
)

__all__ = [
    "CdConfig",
    "Objective",
    "OptimizerKind",
    "OptimizerTrace",
    "QuasiNewtonConfig",
    "SpendLedger",
    "SpsaConfig",
    "TracePoint",
    "TrigMinimum",
    "TrigPolynomial",
    "bernoulli_direction",
    "central_difference",
    "fit_trig_polynomial",
    "minimize_cd",
    "minimize_quasinewton_fd",
    "minimize_spsa",
    "minimize_trig_polynomial",
    "spsa_gradient",
    "trig_nodes",
]
