from __future__ import annotations

from unittest.mock import ANY, Mock

import numpy as np
import pytest

from hubbard_vqe.ansatz import full_circuit
from hubbard_vqe.measurement import (
    EnergyEstimator,
    MeasurementConfig,
    build_measurement_settings,
    double_occupancy,
    error_detect_filter,
    estimate_energy,
    sampled_double_occupancy,
)
from hubbard_vqe.measurement._estimate import trajectory_samples
from hubbard_vqe.model import jordan_wigner_encode
from hubbard_vqe.oracle import exact_ground_state
from hubbard_vqe.simulator import StateVector, basis_state, expectation_exact
from hubbard_vqe.types import (
    AllSamplesDiscardedError,
    AnsatzSpec,
    HubbardModel,
    InitialStateSpec,
    NoiseModel,
    OccupationSector,
    TermKind,
)


def _random_state(n_qubits: int, rng: np.random.Generator) -> StateVector:
    amps = rng.normal(size=1 << n_qubits) + 1j * rng.normal(size=1 << n_qubits)
    return StateVector(amps / np.linalg.norm(amps))


@pytest.mark.parametrize("grid, count", [("1x2", 2), ("2x2", 3), ("4x4", 5)])
def test_setting_count(grid: str, count: int) -> None:
    settings = build_measurement_settings(HubbardModel.from_grid(grid))
    assert len(settings) == count
    assert settings[0].kind is TermKind.ONSITE
    assert not settings[0].circuit
    assert all(len(s.circuit) == 1 for s in settings[1:])


def test_onsite_readout(model_1x2: HubbardModel) -> None:
    onsite, hopping = build_measurement_settings(model_1x2)
    # modes 0 and 2: site 0 doubly occupied
    assert onsite.readout([0b0101]) == pytest.approx([1.0])
    assert onsite.double_occupancy([0b0101, 0b1111, 0]).tolist() == [1.0, 2.0, 0.0]
    with pytest.raises(ValueError, match="onsite setting"):
        hopping.double_occupancy([0])


def test_hopping_readout(model_1x2: HubbardModel) -> None:
    _, hopping = build_measurement_settings(model_1x2)
    assert hopping.kind is TermKind.V1
    # b_1 - b_0 = 1 on the up pair, 0 on the down pair, times -t
    assert hopping.readout([0b0010, 0b0001, 0b1010]).tolist() == [-1.0, 1.0, -2.0]
    assert "V1" in repr(hopping).upper()


def test_vacuum_energy_is_zero(
    model_2x2: HubbardModel, rng: np.random.Generator
) -> None:
    vacuum = basis_state(8, [])
    estimator = EnergyEstimator(model_2x2, MeasurementConfig(m=50))
    assert estimator.exact(vacuum) == pytest.approx(0.0, abs=1e-12)
    estimate = estimator.estimate(vacuum, rng)
    assert estimate.value == pytest.approx(0.0, abs=1e-12)
    assert estimate.samples == (50, 50, 50)
    assert estimate.double_occupancy == 0.0


@pytest.mark.parametrize("grid", ["1x2", "2x2", "2x3"])
def test_settings_reproduce_exact_energy(grid: str, rng: np.random.Generator) -> None:
    model = HubbardModel.from_grid(grid, U=3.0)
    state = _random_state(model.n_qubits, rng)
    estimator = EnergyEstimator(model)
    expected = expectation_exact(state, jordan_wigner_encode(model))
    assert estimator.exact(state) == pytest.approx(expected, abs=1e-10)


def test_sampled_estimate_is_unbiased(
    model_1x2: HubbardModel, half_filled: OccupationSector, rng: np.random.Generator
) -> None:
    ground = exact_ground_state(model_1x2, half_filled)
    estimate = estimate_energy(
        model_1x2, ground.state(), MeasurementConfig(m=200_000), rng
    )
    assert estimate.value == pytest.approx(ground.energy, abs=0.02)
    assert estimate.offset == pytest.approx(jordan_wigner_encode(model_1x2).offset)
    assert estimate.groups == (TermKind.ONSITE, TermKind.V1)
    assert estimate.total_discarded == 0


def test_error_detect_filter() -> None:
    good, bad = error_detect_filter([0b0011, 0b0001, 0b0101, 0b0111], 2)
    assert good.tolist() == [0b0011, 0b0101]
    assert bad == 2


def test_error_detection_needs_eta(model_1x2: HubbardModel) -> None:
    with pytest.raises(ValueError, match="eta"):
        EnergyEstimator(model_1x2, MeasurementConfig(error_detection=True))


def test_noiseless_detection_discards_nothing(
    model_1x2: HubbardModel, half_filled: OccupationSector, rng: np.random.Generator
) -> None:
    config = MeasurementConfig(m=100, error_detection=True, eta=2)
    state = exact_ground_state(model_1x2, half_filled).state()
    estimate = EnergyEstimator(model_1x2, config).estimate(state, rng)
    assert estimate.discarded == (0, 0)


def test_wrong_weight_discards_everything(
    model_1x2: HubbardModel, rng: np.random.Generator
) -> None:
    config = MeasurementConfig(m=10, error_detection=True, eta=3, max_attempt_factor=1)
    estimator = EnergyEstimator(model_1x2, config)
    with pytest.raises(AllSamplesDiscardedError, match="All 10 samples"):
        estimator.estimate(basis_state(4, [0, 2]), rng)


def test_noisy_estimate_with_detection(
    model_1x2: HubbardModel, half_filled: OccupationSector, rng: np.random.Generator
) -> None:
    spec = AnsatzSpec(grid="1x2")
    source = full_circuit(
        spec, [0.3, 0.4], InitialStateSpec(sector=half_filled), model_1x2
    )
    config = MeasurementConfig(m=500, error_detection=True, eta=2)
    estimate = EnergyEstimator(model_1x2, config, NoiseModel(p=0.05)).estimate(
        tuple(source), rng
    )
    assert estimate.samples == (500, 500)
    assert estimate.total_discarded > 0


def test_estimate_rejects_zero_shots(model_1x2: HubbardModel) -> None:
    estimator = EnergyEstimator(model_1x2)
    with pytest.raises(ValueError, match="at least 1"):
        estimator.estimate(basis_state(4, []), np.random.default_rng(0), m=0)


def test_double_occupancy() -> None:
    assert double_occupancy(basis_state(4, [0, 1, 2, 3])) == 2.0
    assert double_occupancy(basis_state(4, [])) == 0.0
    assert double_occupancy(basis_state(4, [0, 3])) == 0.0
    assert sampled_double_occupancy([0b0101, 0b1111, 0], 4) == pytest.approx(1.0)
    with pytest.raises(ValueError, match="No samples"):
        sampled_double_occupancy([], 4)


def test_estimate_reports_double_occupancy(
    model_1x2: HubbardModel, rng: np.random.Generator
) -> None:
    estimate = EnergyEstimator(model_1x2, MeasurementConfig(m=20)).estimate(
        basis_state(4, [0, 2]), rng
    )
    assert estimate.double_occupancy == 1.0


def test_trajectory_surplus_is_cut_at_random() -> None:
    # two clean trajectories, then one faulty; two samples each
    batch = np.array([0, 0, 0, 0, 7, 7])
    sampler = Mock()
    sampler.sample.return_value = Mock(samples=batch)

    faulty_kept: set[int] = set()
    for seed in range(40):
        kept = trajectory_samples(sampler, 2, 5, np.random.default_rng(seed))
        assert kept.size == 5
        assert sorted(kept) in ([0, 0, 0, 7, 7], [0, 0, 0, 0, 7])
        faulty_kept.add(int(np.count_nonzero(kept == 7)))
    sampler.sample.assert_called_with(3, ANY, 2)
    assert faulty_kept == {1, 2}

    exact = trajectory_samples(sampler, 2, 6, np.random.default_rng(0))
    np.testing.assert_array_equal(exact, batch)
