from __future__ import annotations

from typing import TYPE_CHECKING, Callable, Optional

import numpy as np

from hubbard_vqe.ansatz import build_circuit, initial_state, parameter_count
from hubbard_vqe.measurement import EnergyEstimator
from hubbard_vqe.model import jordan_wigner_encode
from hubbard_vqe.simulator import StateVector, expectation_exact, run_circuit

from ._trace import SpendLedger

if TYPE_CHECKING:
    import numpy.typing as npt

    from hubbard_vqe.simulator import RandomSource
    from hubbard_vqe.types import (
        AnsatzSpec,
        EnergyEstimate,
        HubbardModel,
        InitialStateSpec,
        MeasurementConfig,
        NoiseModel,
    )

    Evaluate = Callable[[np.ndarray, Optional[int]], float]


class Objective:
    """A function of the ansatz parameters together with its measurement spend.

    Call it as ``objective(x)`` or ``objective(x, m)`` to override the shots per setting
    of a sampled objective. Build ansatz objectives with `exact` or `sampled`;
    `from_function` wraps a plain function for testing optimizers.

    Parameters
    ----------
    evaluate : Callable[[ndarray, int or None], float]
        Function returning the objective value; it charges `ledger` itself.
    dimension : int
        Number of parameters.
    deterministic : bool
        True when repeated evaluations at the same point agree.
    ledger : SpendLedger, optional
        Spend accumulator shared with `evaluate`.
    """

    def __init__(
        self,
        evaluate: Evaluate,
        dimension: int,
        deterministic: bool,
        ledger: Optional[SpendLedger] = None,
    ) -> None:
        self._evaluate = evaluate
        self.dimension = dimension
        self.deterministic = deterministic
        self.ledger = ledger or SpendLedger()
        self.last_estimate: Optional[EnergyEstimate] = None
        self._prepare: Optional[Callable[[np.ndarray], StateVector]] = None

    def __call__(self, x: npt.ArrayLike, m: Optional[int] = None) -> float:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dimension,):
            raise ValueError(
                f"Objective takes {self.dimension} parameters, got shape {x.shape}."
            )
        return float(self._evaluate(x, m))

    def state(self, x: npt.ArrayLike) -> StateVector:
        """Noiseless output state of the ansatz at `x` (ansatz objectives only)."""
        if self._prepare is None:
            raise TypeError("This objective is not backed by an ansatz circuit.")
        return self._prepare(np.asarray(x, dtype=float))

    @classmethod
    def from_function(
        cls, fn: Callable[[np.ndarray], float], dimension: int
    ) -> "Objective":
        """Deterministic objective counting one estimate per call."""
        ledger = SpendLedger()

        def evaluate(x: np.ndarray, m: Optional[int]) -> float:
            ledger.charge(estimates=1, circuit_evaluations=1)
            return float(fn(x))

        return cls(evaluate, dimension, True, ledger)

    @classmethod
    def exact(
        cls, model: HubbardModel, spec: AnsatzSpec, init: InitialStateSpec
    ) -> "Objective":
        """Exact energy expectation of the ansatz state (noiseless, infinite shots)."""
        start = initial_state(init, model)
        hamiltonian = jordan_wigner_encode(model)
        ledger = SpendLedger()

        def prepare(x: np.ndarray) -> StateVector:
            return run_circuit(start, build_circuit(spec, x))

        def evaluate(x: np.ndarray, m: Optional[int]) -> float:
            ledger.charge(estimates=1, circuit_evaluations=1)
            return expectation_exact(prepare(x), hamiltonian)

        obj = cls(evaluate, parameter_count(spec), True, ledger)
        obj._prepare = prepare
        return obj

    @classmethod
    def sampled(
        cls,
        model: HubbardModel,
        spec: AnsatzSpec,
        init: InitialStateSpec,
        config: MeasurementConfig,
        rng: RandomSource,
        noise: Optional[NoiseModel] = None,
    ) -> "Objective":
        """Energy estimated from `config.m` shots per setting, optionally noisy.

        Noiseless estimates sample the simulated final state directly; noisy ones run
        one depolarizing trajectory per circuit evaluation.
        """
        start = initial_state(init, model)
        estimator = EnergyEstimator(model, config, noise)
        ledger = SpendLedger()

        def prepare(x: np.ndarray) -> StateVector:
            return run_circuit(start, build_circuit(spec, x))

        def evaluate(x: np.ndarray, m: Optional[int]) -> float:
            if estimator.noise.is_noiseless:
                estimate = estimator.estimate(prepare(x), rng, m)
            else:
                estimate = estimator.estimate((start, build_circuit(spec, x)), rng, m)
            ledger.charge(
                estimates=1,
                energy_measurements=min(estimate.samples),
                circuit_evaluations=estimate.total_samples,
                discarded=estimate.total_discarded,
            )
            obj.last_estimate = estimate
            return estimate.value

        obj = cls(evaluate, parameter_count(spec), False, ledger)
        obj._prepare = prepare
        return obj

    def __repr__(self) -> str:
        kind = "deterministic" if self.deterministic else "stochastic"
        return f"<Objective {kind}, {self.dimension} parameters, {self.ledger}>"
