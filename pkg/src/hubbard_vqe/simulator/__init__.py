"""Statevector execution of circuits, sampling and noisy trajectories."""

from ._bits import basis_indices, format_bitstring, mask_of, parity_sign, popcount
from ._circuit import (
    Circuit,
    Moment,
    Operation,
    circuit_depth,
    moment,
    pack_moments,
    two_qubit_gate_count,
)
from ._gates import (
    BASIS_CHANGE,
    BASIS_CHANGE_DAG,
    CNOT,
    FSWAP,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    Gate,
    fswap_np,
    hopping_gate,
    number_preserving,
    onsite_gate,
    zz_phase,
)
from ._run import (
    TrajectoryBatch,
    TrajectorySampler,
    apply_gate,
    expectation_exact,
    run_circuit,
    run_with_faults,
    sample_bitstrings,
)
from ._state import (
    RandomSource,
    StateVector,
    basis_state,
    embed_sector_vector,
    make_rng,
    spawn_rngs,
)

__all__ = [
    "BASIS_CHANGE",
    "BASIS_CHANGE_DAG",
    "CNOT",
    "FSWAP",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "Circuit",
    "Gate",
    "Moment",
    "Operation",
    "RandomSource",
    "StateVector",
    "TrajectoryBatch",
    "TrajectorySampler",
    "apply_gate",
    "basis_indices",
    "basis_state",
    "circuit_depth",
    "embed_sector_vector",
    "expectation_exact",
    "format_bitstring",
    "fswap_np",
    "hopping_gate",
    "make_rng",
    "mask_of",
    "moment",
    "number_preserving",
    "onsite_gate",
    "pack_moments",
    "parity_sign",
    "popcount",
    "run_circuit",
    "run_with_faults",
    "sample_bitstrings",
    "spawn_rngs",
    "two_qubit_gate_count",
    "zz_phase",
]
