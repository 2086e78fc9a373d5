from __future__ import annotations

import json
from typing import TYPE_CHECKING

import numpy as np
import pytest
from scipy.linalg import expm

from hubbard_vqe.ansatz import (
    build_circuit,
    column_pairs,
    default_parameters,
    full_circuit,
    initial_state,
    load_parameters,
    parameter_count,
    parameter_degrees,
    place_fermions,
    spread_sites,
    string_evolution,
    swap_network,
)
from hubbard_vqe.model import jordan_wigner_encode, qubit_hamiltonian_matrix
from hubbard_vqe.simulator import (
    StateVector,
    basis_state,
    expectation_exact,
    pack_moments,
    run_circuit,
)
from hubbard_vqe.types import (
    AnsatzKind,
    AnsatzSpec,
    HubbardModel,
    InitialStateKind,
    InitialStateSpec,
    LatticeGeometry,
    OccupationSector,
    ParameterCountError,
    PauliTerm,
    QubitHamiltonian,
    TermKind,
    UnsupportedOrderingError,
    term_ordering,
)

if TYPE_CHECKING:
    from pathlib import Path


def _random_state(n_qubits: int, rng: np.random.Generator) -> StateVector:
    amps = rng.normal(size=1 << n_qubits) + 1j * rng.normal(size=1 << n_qubits)
    return StateVector(amps / np.linalg.norm(amps))


@pytest.mark.parametrize(
    "kind, grid, layers, expected",
    [
        ("ehv", "2x2", 1, 3),
        ("hv", "3x3", 2, 10),
        ("ehv", "1x4", 1, 3),
        ("np", "2x3", 1, 40),
        ("np", "2x2", 2, 48),
    ],
)
def test_parameter_count(kind: str, grid: str, layers: int, expected: int) -> None:
    spec = AnsatzSpec(kind=kind, layers=layers, grid=grid)
    assert parameter_count(spec) == expected
    assert len(parameter_degrees(spec)) == expected


def test_term_ordering() -> None:
    spec = AnsatzSpec(grid="3x3")
    assert spec.ordering == (
        TermKind.ONSITE,
        TermKind.H1,
        TermKind.V1,
        TermKind.V2,
        TermKind.H2,
    )
    assert not spec.extrapolated
    assert AnsatzSpec(grid="4x4").extrapolated
    small = AnsatzSpec(grid="2x2")
    assert small.ordering == (TermKind.ONSITE, TermKind.H1, TermKind.V1)
    assert str(AnsatzSpec(kind="np", layers=3, grid="3x2")) == "NP L=3 on 2x3"

    assert term_ordering(5) == term_ordering(3)
    with pytest.raises(UnsupportedOrderingError, match="5 columns"):
        term_ordering(5, extrapolate=False)
    with pytest.raises(ValueError, match="at least one column"):
        term_ordering(0)


def test_parameter_degrees_2x2() -> None:
    # 4 onsite gates; 4 fused H1 hoppings; V1 on one boundary per spin, twice
    assert parameter_degrees(AnsatzSpec(grid="2x2")) == (4, 8, 8)
    np_degrees = parameter_degrees(AnsatzSpec(kind="np", grid="2x2"))
    assert set(np_degrees[::2]) == {2}
    assert set(np_degrees[1::2]) == {1}


def test_default_parameters(rng: np.random.Generator) -> None:
    spec = AnsatzSpec(layers=4, grid="2x2")
    np.testing.assert_allclose(default_parameters(spec), 0.25)
    np.testing.assert_allclose(default_parameters(spec.with_layers(1)), 1.0)

    first = default_parameters(spec, random=True, rng=5)
    np.testing.assert_array_equal(first, default_parameters(spec, random=True, rng=5))
    assert first.min() >= 0.0
    assert first.max() <= 2 * np.pi / 100
    assert default_parameters(spec, random=True, rng=rng).shape == (12,)


def test_wrong_parameter_count() -> None:
    spec = AnsatzSpec(layers=2, grid="2x2")
    with pytest.raises(ParameterCountError, match="Expected 6 parameters, received 5"):
        build_circuit(spec, np.zeros(5))


@pytest.mark.parametrize("kind", list(AnsatzKind))
def test_zero_parameters_act_as_identity(
    kind: AnsatzKind, rng: np.random.Generator
) -> None:
    spec = AnsatzSpec(kind=kind, layers=1, grid="2x2")
    state = _random_state(8, rng)
    out = run_circuit(state, build_circuit(spec, np.zeros(parameter_count(spec))))
    np.testing.assert_allclose(out.amplitudes, state.amplitudes, atol=1e-12)


@pytest.mark.parametrize("layers", [1, 2])
def test_swap_network_layer_matches_direct_evolution(
    layers: int, rng: np.random.Generator
) -> None:
    ehv = AnsatzSpec(kind="ehv", layers=layers, grid="2x2")
    hv = AnsatzSpec(kind="hv", layers=layers, grid="2x2")
    params = rng.uniform(-np.pi, np.pi, size=parameter_count(ehv))
    state = _random_state(8, rng)
    via_swaps = run_circuit(state, build_circuit(ehv, params))
    direct = run_circuit(state, build_circuit(hv, params))
    np.testing.assert_allclose(via_swaps.amplitudes, direct.amplitudes, atol=1e-10)


def test_swap_network_schedule() -> None:
    schedule = swap_network(LatticeGeometry(n_x=6, n_y=6))
    assert len(schedule) == 6
    assert [c + 1 for c in schedule.repetitions[0].after_right] == [2, 4, 1, 6, 3, 5]
    # every column visits both ends; half the repetitions reverse the order
    assert {r.v1_column for r in schedule.repetitions} == set(range(6))
    assert {r.v2_column for r in schedule.repetitions} == set(range(6))
    assert schedule.repetitions[2].after_right == (5, 4, 3, 2, 1, 0)
    assert schedule.final_order == tuple(range(6))
    assert column_pairs(5) == (((0, 1), (2, 3)), ((1, 2), (3, 4)))
    with pytest.raises(ValueError, match="Single-column"):
        swap_network(LatticeGeometry(n_x=1, n_y=4))


@pytest.mark.parametrize("i, j", [(0, 1), (0, 3), (1, 4), (0, 5)])
def test_string_evolution_matches_dense_exponential(
    i: int, j: int, rng: np.random.Generator
) -> None:
    n = 6
    theta = 0.731
    string = tuple((k, "Z") for k in range(i + 1, j))
    generator = QubitHamiltonian(
        n_qubits=n,
        terms=(
            PauliTerm(coefficient=0.5, factors=((i, "X"), *string, (j, "X"))),
            PauliTerm(coefficient=0.5, factors=((i, "Y"), *string, (j, "Y"))),
        ),
    )
    unitary = expm(1j * theta * qubit_hamiltonian_matrix(generator).toarray())
    state = _random_state(n, rng)
    out = run_circuit(state, pack_moments(n, string_evolution(i, j, theta)))
    np.testing.assert_allclose(out.amplitudes, unitary @ state.amplitudes, atol=1e-10)


@pytest.mark.parametrize("kind", list(AnsatzKind))
def test_circuits_preserve_particle_number(
    kind: AnsatzKind, rng: np.random.Generator
) -> None:
    model = HubbardModel.from_grid("2x3")
    spec = AnsatzSpec(kind=kind, layers=1, geometry=model.geometry)
    init = InitialStateSpec(
        kind=InitialStateKind.BASIS, sector=OccupationSector(n_up=2, n_down=1)
    )
    params = rng.uniform(-np.pi, np.pi, size=parameter_count(spec))
    start, circuit = full_circuit(spec, params, init, model)
    out = run_circuit(start, circuit)
    assert out.hamming_support() == (3,)
    assert out.norm() == pytest.approx(1.0)


@pytest.mark.parametrize("grid", ["1x2", "2x2", "2x3"])
@pytest.mark.parametrize("kind", list(AnsatzKind))
@pytest.mark.parametrize("hopping_only", [True, False])
def test_single_fermion_keeps_zero_free_energy(
    grid: str, kind: AnsatzKind, hopping_only: bool, rng: np.random.Generator
) -> None:
    """Any ansatz circuit leaves a single fermion at zero non-interacting energy.

    Every gate moves the fermion with a factor of ``i``, so amplitudes on the two
    sublattices stay a quarter turn apart and the hopping terms cancel.
    """
    model = HubbardModel.from_grid(grid, U=0.0)
    free = jordan_wigner_encode(model)
    spec = AnsatzSpec(kind=kind, layers=2, geometry=model.geometry)
    params = rng.uniform(-np.pi, np.pi, size=parameter_count(spec))
    if hopping_only and kind is not AnsatzKind.NP:
        params[:: len(spec.ordering)] = 0.0
    circuit = build_circuit(spec, params)
    for mode in range(model.n_qubits):
        out = run_circuit(basis_state(model.n_qubits, [mode]), circuit)
        assert out.hamming_support() == (1,)
        assert expectation_exact(out, free) == pytest.approx(0.0, abs=1e-10)


def test_full_circuit_checks_grid() -> None:
    spec = AnsatzSpec(grid="2x2")
    init = InitialStateSpec(sector=OccupationSector(n_up=1, n_down=1))
    with pytest.raises(ValueError, match="does not match"):
        full_circuit(spec, [1, 1, 1], init, HubbardModel.from_grid("2x3"))


def test_spread_placement() -> None:
    geo = LatticeGeometry(n_x=3, n_y=3)
    assert spread_sites(geo, 3) == [(0, 0), (1, 1), (2, 2)]
    modes = place_fermions(geo, OccupationSector(n_up=3, n_down=3), "spread")
    assert modes == [0, 4, 8, 9, 13, 17]
    # no site is singly occupied when the spins balance
    sites = {m % geo.n_sites for m in modes}
    assert len(sites) == 3


@pytest.mark.parametrize(
    "grid, k, expected",
    [
        ("4x4", 4, [(0, 0), (1, 1), (2, 2), (3, 3)]),
        # (3, 0) and (0, 3) are equally far; (3, 0) has the lower mode index
        ("4x4", 5, [(0, 0), (1, 1), (2, 2), (3, 3), (3, 0)]),
        ("2x4", 3, [(0, 0), (1, 1), (0, 3)]),
        ("2x4", 4, [(0, 0), (1, 1), (0, 3), (1, 0)]),
        ("2x2", 9, [(0, 0), (1, 1), (1, 0), (0, 1)]),
    ],
)
def test_spread_sites_fill_the_diagonal_first(
    grid: str, k: int, expected: list[tuple[int, int]]
) -> None:
    assert spread_sites(LatticeGeometry.parse(grid), k) == expected


def test_corner_and_explicit_placement() -> None:
    geo = LatticeGeometry(n_x=2, n_y=2)
    sector = OccupationSector(n_up=2, n_down=1)
    assert place_fermions(geo, sector) == [0, 1, 4]
    # the surplus up fermion goes to the second spread site
    assert place_fermions(geo, sector, "spread") == [0, 2, 4]
    assert place_fermions(geo, sector, "explicit", [5, 0, 3]) == [0, 3, 5]
    with pytest.raises(ValueError, match="hold"):
        place_fermions(geo, sector, "explicit", [0, 4, 5])
    with pytest.raises(IndexError):
        place_fermions(geo, sector, "explicit", [0, 1, 9])
    with pytest.raises(ValueError, match="requires `modes`"):
        InitialStateSpec(kind="basis", sector=sector, placement="explicit")


def test_basis_initial_state() -> None:
    model = HubbardModel.from_grid("2x2")
    init = InitialStateSpec(
        kind="basis", sector=OccupationSector(n_up=1, n_down=1), placement="corner"
    )
    state = initial_state(init, model)
    assert state.probabilities()[1 | 1 << 4] == pytest.approx(1.0)
    assert state.eta == 2


def test_load_parameters(tmp_path: Path) -> None:
    shallow = AnsatzSpec(layers=1, grid="2x2")
    deep = shallow.with_layers(2)

    npy = tmp_path / "params.npy"
    np.save(npy, np.array([0.1, 0.2, 0.3]))
    np.testing.assert_allclose(load_parameters(npy, shallow), [0.1, 0.2, 0.3])
    np.testing.assert_allclose(
        load_parameters(npy, deep), [0.1, 0.2, 0.3, 0.0, 0.0, 0.0]
    )

    record = tmp_path / "record.json"
    record.write_text(json.dumps({"parameters": [1, 2, 3, 4, 5, 6]}))
    np.testing.assert_allclose(load_parameters(record, deep), [1, 2, 3, 4, 5, 6])

    plain = tmp_path / "plain.json"
    plain.write_text(json.dumps([1, 2, 3, 4]))
    with pytest.raises(ParameterCountError):
        load_parameters(plain, deep)

    empty = tmp_path / "empty.json"
    empty.write_text(json.dumps({"energy": 1.0}))
    with pytest.raises(KeyError, match="no 'parameters' entry"):
        load_parameters(empty, deep)
