from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Dict, NamedTuple, Optional, Sequence

import numpy as np

from ._circuit import Circuit, two_qubit_gate_count
from ._gates import PAULIS, Gate
from ._kernels import apply_one_qubit, apply_two_qubit, as_kernel_matrix
from ._state import RandomSource, StateVector

if TYPE_CHECKING:
    from hubbard_vqe.types import NoiseModel, QubitHamiltonian

logger = logging.getLogger(__name__)

# imaginary part of <psi|H|psi> tolerated before the operator is deemed non-Hermitian
_IMAG_TOL = 1e-8


def _apply_inplace(amplitudes: np.ndarray, gate: Gate, qubits: Sequence[int]) -> None:
    matrix = as_kernel_matrix(gate.matrix)
    if len(qubits) == 1:
        apply_one_qubit(amplitudes, qubits[0], matrix)
    else:
        apply_two_qubit(amplitudes, qubits[0], qubits[1], matrix)


def _check_qubits(n_qubits: int, gate: Gate, qubits: Sequence[int]) -> None:
    if len(qubits) != gate.num_qubits:
        raise ValueError(f"Gate {gate} acts on {gate.num_qubits} qubits, got {qubits}")
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"Qubits must be distinct, got {tuple(qubits)}")
    for q in qubits:
        if not 0 <= q < n_qubits:
            raise IndexError(f"Qubit {q} out of range for {n_qubits} qubits.")


def apply_gate(state: StateVector, gate: Gate, qubits: Sequence[int]) -> StateVector:
    """Return a new state with `gate` applied to `qubits`.

    Examples
    --------
    >>> from hubbard_vqe.simulator import FSWAP, basis_state
    >>> out = apply_gate(basis_state(2, [0, 1]), FSWAP, (0, 1))
    >>> out.amplitudes[3]
    (-1+0j)
    """
    _check_qubits(state.n_qubits, gate, qubits)
    out = state.copy()
    _apply_inplace(out.amplitudes, gate, tuple(qubits))
    if state.eta is not None and not gate.is_number_preserving:
        out.eta = None
    return out


def run_circuit(
    initial: StateVector,
    circuit: Circuit,
    noise: Optional[NoiseModel] = None,
    rng: Optional[RandomSource] = None,
) -> StateVector:
    """Run `circuit` on `initial`.

    Without noise (or with ``p == 0``) this is the plain unitary product and the sector
    tag of `initial` is kept. With noise, each qubit of every 2-qubit gate suffers, with
    probability ``p``, an X, Y or Z chosen uniformly; the result is one stochastic
    trajectory and carries no sector tag. The generator is consumed strictly in gate
    order, so equal seeds give equal trajectories.
    """
    if initial.n_qubits != circuit.n_qubits:
        raise ValueError(
            f"State has {initial.n_qubits} qubits but the circuit acts on "
            f"{circuit.n_qubits}."
        )
    noisy = noise is not None and not noise.is_noiseless
    if noisy and rng is None:
        raise ValueError("Noisy runs need a random generator.")
    amps = initial.amplitudes.copy()
    for op in circuit.operations():
        _apply_inplace(amps, op.gate, op.qubits)
        if noisy and len(op.qubits) == 2:
            for q in op.qubits:
                if rng.random() < noise.p:  # type: ignore[union-attr]
                    pauli = PAULIS[int(rng.integers(3))]  # type: ignore[union-attr]
                    _apply_inplace(amps, pauli, (q,))
    return StateVector(amps, eta=None if noisy else initial.eta, check=False)


def run_with_faults(
    initial: StateVector, circuit: Circuit, faults: Dict[int, int]
) -> StateVector:
    """Run `circuit` injecting the given Pauli faults.

    `faults` maps a fault slot, ``2 * k + s`` for qubit ``s`` of the ``k``-th 2-qubit
    operation, to a Pauli index (0: X, 1: Y, 2: Z) applied right after that operation.
    """
    amps = initial.amplitudes.copy()
    k = 0
    for op in circuit.operations():
        _apply_inplace(amps, op.gate, op.qubits)
        if len(op.qubits) == 2:
            for s, q in enumerate(op.qubits):
                pauli = faults.get(2 * k + s)
                if pauli is not None:
                    _apply_inplace(amps, PAULIS[pauli], (q,))
            k += 1
    return StateVector(amps, eta=None, check=False)


def _cdf(probabilities: np.ndarray) -> np.ndarray:
    cdf = np.cumsum(probabilities)
    total = cdf[-1]
    if not total > 0:
        raise ValueError("Cannot sample from a zero-norm state.")
    return cdf / total


def _draw(cdf: np.ndarray, shots: int, rng: RandomSource) -> np.ndarray:
    idx = np.searchsorted(cdf, rng.random(shots), side="right")
    return np.minimum(idx, cdf.shape[0] - 1).astype(np.int64)


def sample_bitstrings(state: StateVector, shots: int, rng: RandomSource) -> np.ndarray:
    """Draw `shots` i.i.d. basis indices from ``|amplitude|^2``.

    Bitstrings are returned as int64 basis indices (qubit ``q`` is bit ``q``); use
    `format_bitstring` to render them.
    """
    if shots < 0:
        raise ValueError(f"shots must be non-negative, got {shots}")
    return _draw(_cdf(state.probabilities()), shots, rng)


def expectation_exact(state: StateVector, hamiltonian: QubitHamiltonian) -> float:
    """``<psi|H|psi>`` including the scalar offset."""
    if state.n_qubits != hamiltonian.n_qubits:
        raise ValueError(
            f"State has {state.n_qubits} qubits but the Hamiltonian acts on "
            f"{hamiltonian.n_qubits}."
        )
    psi = state.amplitudes
    value = np.vdot(psi, hamiltonian.to_sparse() @ psi)
    if abs(value.imag) > _IMAG_TOL * max(1.0, abs(value.real)):
        raise ValueError(f"Expectation has imaginary part {value.imag:.3e}.")
    return float(value.real)


class TrajectoryBatch(NamedTuple):
    """Samples drawn from a batch of noisy trajectories."""

    samples: np.ndarray
    trajectories: int
    faulty: int


class TrajectorySampler:
    """Sample measurement outcomes of a circuit under depolarizing noise.

    The fault pattern of each trajectory (which qubit of which 2-qubit gate is hit, and
    by which Pauli) is drawn up front. Fault-free trajectories all share the noiseless
    final state, which is simulated once; only trajectories with at least one fault are
    simulated individually.

    Parameters
    ----------
    initial : StateVector
        Input state.
    circuit : Circuit
        Circuit to run, measurement basis change included.
    noise : NoiseModel
        Depolarizing noise model.
    """

    def __init__(self, initial: StateVector, circuit: Circuit, noise: NoiseModel):
        self._initial = initial
        self._circuit = circuit
        self._noise = noise
        self._ideal = run_circuit(initial, circuit)
        self._ideal_cdf = _cdf(self._ideal.probabilities())
        self._n_slots = 2 * two_qubit_gate_count(circuit)

    @property
    def ideal_state(self) -> StateVector:
        """Final state of the fault-free trajectory."""
        return self._ideal

    @property
    def n_slots(self) -> int:
        """Number of (gate, qubit) fault locations."""
        return self._n_slots

    def sample(
        self, trajectories: int, rng: RandomSource, samples_per_trajectory: int = 1
    ) -> TrajectoryBatch:
        """Run `trajectories` trajectories, drawing `samples_per_trajectory` each."""
        p = self._noise.p
        if p == 0.0 or self._n_slots == 0:
            samples = _draw(self._ideal_cdf, trajectories * samples_per_trajectory, rng)
            return TrajectoryBatch(samples, trajectories, 0)

        hits = rng.random((trajectories, self._n_slots)) < p
        faulty_rows = np.flatnonzero(hits.any(axis=1))
        n_clean = trajectories - faulty_rows.size
        parts = [_draw(self._ideal_cdf, n_clean * samples_per_trajectory, rng)]
        for row in faulty_rows:
            slots = np.flatnonzero(hits[row])
            paulis = rng.integers(3, size=slots.size)
            faults = {int(s): int(q) for s, q in zip(slots, paulis)}
            state = run_with_faults(self._initial, self._circuit, faults)
            parts.append(sample_bitstrings(state, samples_per_trajectory, rng))
        logger.debug(
            "%d trajectories over %d fault slots, %d faulty",
            trajectories,
            self._n_slots,
            faulty_rows.size,
        )
        samples = np.concatenate(parts)
        return TrajectoryBatch(samples, trajectories, int(faulty_rows.size))
