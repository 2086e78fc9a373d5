from __future__ import annotations

import numpy as np
import pytest

from hubbard_vqe.simulator import (
    BASIS_CHANGE,
    BASIS_CHANGE_DAG,
    CNOT,
    FSWAP,
    PAULI_Z,
    Circuit,
    Gate,
    Operation,
    StateVector,
    TrajectorySampler,
    apply_gate,
    basis_state,
    circuit_depth,
    expectation_exact,
    fswap_np,
    moment,
    number_preserving,
    pack_moments,
    popcount,
    run_circuit,
    run_with_faults,
    sample_bitstrings,
    spawn_rngs,
    two_qubit_gate_count,
    zz_phase,
)
from hubbard_vqe.types import NoiseModel, PauliTerm, QubitHamiltonian

BELL = StateVector(np.array([0, 1, 1, 0]) / np.sqrt(2))


def _hopping_operator() -> QubitHamiltonian:
    return QubitHamiltonian(
        n_qubits=2,
        terms=(
            PauliTerm(coefficient=0.5, factors=((0, "X"), (1, "X"))),
            PauliTerm(coefficient=0.5, factors=((0, "Y"), (1, "Y"))),
        ),
    )


def _random_state(n_qubits: int, rng: np.random.Generator) -> StateVector:
    amps = rng.normal(size=1 << n_qubits) + 1j * rng.normal(size=1 << n_qubits)
    return StateVector(amps / np.linalg.norm(amps))


def test_identity_number_preserving(rng: np.random.Generator) -> None:
    state = _random_state(3, rng)
    out = apply_gate(state, number_preserving(0.0, 0.0), (0, 2))
    np.testing.assert_allclose(out.amplitudes, state.amplitudes)


def test_fswap() -> None:
    both = apply_gate(basis_state(2, [0, 1]), FSWAP, (0, 1))
    assert both.amplitudes[3] == pytest.approx(-1)
    # qubit 1 occupied moves to qubit 0
    moved = apply_gate(basis_state(2, [1]), FSWAP, (0, 1))
    assert moved.amplitudes[1] == pytest.approx(1)


def test_number_preserving_quarter_turn() -> None:
    out = apply_gate(basis_state(2, [1]), number_preserving(np.pi / 2, 0.0), (0, 1))
    assert out.amplitudes[1] == pytest.approx(1j)
    assert abs(out.amplitudes[2]) < 1e-12


@pytest.mark.parametrize(
    "gate",
    [
        number_preserving(0.3, -1.1),
        fswap_np(0.7, 0.2),
        zz_phase(0.4),
        BASIS_CHANGE,
        FSWAP,
        CNOT,
    ],
)
def test_gates_are_unitary_with_inverse(gate: Gate) -> None:
    m = gate.matrix
    np.testing.assert_allclose(m @ m.conj().T, np.eye(4), atol=1e-12)
    if gate.name != "fswap_np":
        np.testing.assert_allclose(gate.dagger().matrix @ m, np.eye(4), atol=1e-12)


def test_fused_gate_has_no_closed_inverse() -> None:
    with pytest.raises(NotImplementedError):
        fswap_np(0.1).dagger()


def test_number_preservation_flags() -> None:
    assert number_preserving(0.3, 0.1).is_number_preserving
    assert FSWAP.is_number_preserving
    assert BASIS_CHANGE.is_number_preserving
    assert not CNOT.is_number_preserving


def test_basis_change_commutes_with_zz() -> None:
    zz = np.diag([1, -1, -1, 1]).astype(complex)
    u = BASIS_CHANGE.matrix
    np.testing.assert_allclose(u.conj().T @ zz @ u, zz, atol=1e-12)
    np.testing.assert_allclose(BASIS_CHANGE_DAG.matrix, u.conj().T)


def test_basis_change_diagonalizes_hopping() -> None:
    """After the basis change, (XX + YY)/2 on (a, b) reads as b_b - b_a."""
    rotated = run_circuit(BELL, Circuit(2, [moment([Operation(BASIS_CHANGE, (0, 1))])]))
    probs = rotated.probabilities()
    # qubit 1 set, qubit 0 clear: b_1 - b_0 = 1
    assert probs[2] == pytest.approx(1.0)
    assert expectation_exact(BELL, _hopping_operator()) == pytest.approx(1.0)


def test_expectation_of_vacuum() -> None:
    assert expectation_exact(basis_state(2, []), _hopping_operator()) == 0.0


def test_empty_circuit(rng: np.random.Generator) -> None:
    state = _random_state(3, rng)
    circuit = Circuit(3)
    assert circuit_depth(circuit) == 0
    assert two_qubit_gate_count(circuit) == 0
    np.testing.assert_allclose(run_circuit(state, circuit).amplitudes, state.amplitudes)


def test_moment_validation() -> None:
    with pytest.raises(ValueError, match="uses a qubit twice"):
        moment([Operation(FSWAP, (0, 1)), Operation(FSWAP, (1, 2))])
    with pytest.raises(ValueError, match="acts on 2 qubits"):
        moment([Operation(FSWAP, (0,))])
    with pytest.raises(ValueError, match="outside"):
        Circuit(2, [moment([Operation(FSWAP, (1, 2))])])


def test_pack_moments() -> None:
    ops = [
        Operation(FSWAP, (0, 1)),
        Operation(FSWAP, (2, 3)),
        Operation(FSWAP, (1, 2)),
        Operation(PAULI_Z, (0,)),
    ]
    circuit = pack_moments(4, ops)
    assert len(circuit) == 2
    assert circuit.depth == 2
    assert two_qubit_gate_count(circuit) == 3
    assert "depth 2" in repr(circuit)
    with pytest.raises(ValueError, match="different widths"):
        circuit.then(Circuit(3))


def test_number_conservation(rng: np.random.Generator) -> None:
    n = 6
    ops = []
    for _ in range(30):
        a, b = rng.choice(n, size=2, replace=False)
        theta, phi = rng.uniform(-np.pi, np.pi, size=2)
        gate = fswap_np(theta, phi) if rng.random() < 0.5 else number_preserving(theta)
        ops.append(Operation(gate, (int(a), int(b))))
    circuit = pack_moments(n, ops)
    amps = np.zeros(1 << n, dtype=complex)
    weights = popcount(np.arange(1 << n))
    amps[weights == 3] = rng.normal(size=int((weights == 3).sum()))
    state = StateVector(amps / np.linalg.norm(amps), eta=3)
    out = run_circuit(state, circuit)
    assert out.hamming_support() == (3,)
    assert out.eta == 3
    assert out.norm() == pytest.approx(1.0)


def test_state_validation() -> None:
    with pytest.raises(ValueError, match="power of two"):
        StateVector(np.ones(3) / np.sqrt(3))
    with pytest.raises(ValueError, match="not normalized"):
        StateVector(np.ones(4))
    with pytest.raises(ValueError, match="outside"):
        basis_state(2, [2])
    with pytest.raises(IndexError):
        apply_gate(basis_state(2, []), FSWAP, (0, 2))


def test_sampling_basis_state(rng: np.random.Generator) -> None:
    samples = sample_bitstrings(basis_state(4, []), 100, rng)
    assert samples.shape == (100,)
    assert not samples.any()


def test_sampling_frequencies(rng: np.random.Generator) -> None:
    samples = sample_bitstrings(BELL, 10_000, rng)
    assert set(np.unique(samples)) <= {1, 2}
    assert np.mean(samples == 1) == pytest.approx(0.5, abs=0.015)


def test_sampling_respects_sector(rng: np.random.Generator) -> None:
    state = run_circuit(
        basis_state(4, [0, 2]),
        pack_moments(
            4,
            [
                Operation(number_preserving(0.4, 0.3), (0, 1)),
                Operation(number_preserving(1.1, 0.0), (1, 3)),
            ],
        ),
    )
    assert (popcount(sample_bitstrings(state, 2000, rng)) == 2).all()


def test_seeded_streams_reproduce() -> None:
    first = [r.random(3) for r in spawn_rngs(7, 3)]
    second = [r.random(3) for r in spawn_rngs(7, 3)]
    np.testing.assert_array_equal(first, second)
    assert not np.allclose(first[0], first[1])


def test_noisy_run_needs_rng() -> None:
    circuit = pack_moments(2, [Operation(number_preserving(0.0), (0, 1))])
    with pytest.raises(ValueError, match="random generator"):
        run_circuit(basis_state(2, []), circuit, NoiseModel(p=0.1))


def test_certain_noise_hits_every_qubit(rng: np.random.Generator) -> None:
    circuit = pack_moments(2, [Operation(number_preserving(0.0), (0, 1))])
    sampler = TrajectorySampler(basis_state(2, []), circuit, NoiseModel(p=1.0))
    assert sampler.n_slots == 2
    batch = sampler.sample(50, rng)
    assert batch.faulty == 50
    assert batch.samples.shape == (50,)
    out = run_circuit(basis_state(2, []), circuit, NoiseModel(p=1.0), rng)
    # every qubit suffered X, Y or Z, leaving a basis state up to phase
    assert np.isclose(out.probabilities().max(), 1.0)
    assert out.eta is None


def test_injected_fault() -> None:
    circuit = pack_moments(2, [Operation(number_preserving(0.0), (0, 1))])
    # X on qubit 1 of the first gate
    out = run_with_faults(basis_state(2, []), circuit, {1: 0})
    assert out.probabilities()[2] == pytest.approx(1.0)


def test_depolarizing_channel_statistics(rng: np.random.Generator) -> None:
    p = 0.3
    trajectories = 20_000
    circuit = pack_moments(2, [Operation(number_preserving(0.0), (0, 1))])
    sampler = TrajectorySampler(basis_state(2, []), circuit, NoiseModel(p=p))
    samples = sampler.sample(trajectories, rng).samples
    expected = 1 - 4 * p / 3
    sigma = np.sqrt(1 - expected**2) / np.sqrt(trajectories)
    for qubit in (0, 1):
        z = 1 - 2 * ((samples >> qubit) & 1)
        assert abs(z.mean() - expected) < 4 * sigma


def test_noiseless_sampler_shares_final_state(rng: np.random.Generator) -> None:
    circuit = pack_moments(2, [Operation(number_preserving(np.pi / 4), (0, 1))])
    sampler = TrajectorySampler(basis_state(2, [0]), circuit, NoiseModel())
    batch = sampler.sample(100, rng, samples_per_trajectory=3)
    assert batch.samples.shape == (300,)
    assert batch.faulty == 0
    assert sampler.ideal_state.eta == 1
