from __future__ import annotations

from unittest.mock import Mock

import numpy as np
import pytest

from hubbard_vqe.ansatz import default_parameters, parameter_degrees
from hubbard_vqe.optimize import (
    CdConfig,
    Objective,
    OptimizerTrace,
    QuasiNewtonConfig,
    SpendLedger,
    SpsaConfig,
    bernoulli_direction,
    central_difference,
    fit_trig_polynomial,
    minimize_cd,
    minimize_quasinewton_fd,
    minimize_spsa,
    minimize_trig_polynomial,
    spsa_gradient,
    trig_nodes,
)
from hubbard_vqe.types import (
    AnsatzSpec,
    HubbardModel,
    InitialStateSpec,
    OccupationSector,
)

TARGET = np.array([1.0, -0.5])


def _bowl(x: np.ndarray) -> float:
    return float((x[0] - TARGET[0]) ** 2 + 2 * (x[1] - TARGET[1]) ** 2)


def _spend_is_monotonic(trace: OptimizerTrace) -> bool:
    spends = [p.estimates for p in trace]
    return all(a <= b for a, b in zip(spends, spends[1:]))


def test_objective_wrapper() -> None:
    objective = Objective.from_function(_bowl, 2)
    assert objective(TARGET) == 0.0
    assert objective.ledger.estimates == 1
    assert "deterministic" in repr(objective)
    with pytest.raises(ValueError, match="takes 2 parameters"):
        objective(np.zeros(3))
    with pytest.raises(TypeError, match="not backed by an ansatz"):
        objective.state(TARGET)


def test_ledger_and_trace() -> None:
    ledger = SpendLedger()
    with pytest.raises(ValueError, match="only grow"):
        ledger.charge(estimates=-1)
    ledger.charge(estimates=2, energy_measurements=20, circuit_evaluations=60)
    assert ledger.as_tuple() == (2, 20, 60, 0)

    trace = OptimizerTrace("test")
    appended, stage_started = Mock(), Mock()
    trace.appended.connect(appended)
    trace.stage_started.connect(stage_started)
    with pytest.raises(ValueError, match="empty"):
        trace.parameters  # noqa: B018

    trace.start_stage(1)
    stage_started.assert_called_once_with(1)
    first = trace.record([0.1], 3.0, ledger)
    appended.assert_called_once_with(first)
    ledger.charge(estimates=1)
    trace.record([0.2], 2.0, ledger)
    assert trace.best.value == 2.0  # type: ignore[union-attr]
    assert trace.final.stage == 1  # type: ignore[union-attr]
    np.testing.assert_array_equal(trace.parameters, [0.2])
    with pytest.raises(ValueError, match="decreased"):
        trace.record([0.3], 1.0, SpendLedger())

    entries = trace.to_entries()
    assert [e.value for e in entries] == [3.0, 2.0]
    assert entries[0].parameters == (0.1,)
    assert trace.finish("done").status == "done"
    assert "2 points, done" in repr(trace)


def test_central_difference() -> None:
    objective = Objective.from_function(_bowl, 2)
    grad = central_difference(objective, np.zeros(2), 1e-5)
    np.testing.assert_allclose(grad, [-2.0, 2.0], atol=1e-8)
    assert objective.ledger.estimates == 4


def test_quasinewton_on_quadratic_bowl() -> None:
    objective = Objective.from_function(_bowl, 2)
    trace = minimize_quasinewton_fd(objective, np.zeros(2))
    assert trace.status == "converged"
    np.testing.assert_allclose(trace.parameters, TARGET, atol=1e-5)
    assert objective.ledger.estimates < 100
    assert trace.final.estimates == objective.ledger.estimates  # type: ignore
    assert _spend_is_monotonic(trace)


def test_quasinewton_budget() -> None:
    objective = Objective.from_function(_bowl, 2)
    trace = minimize_quasinewton_fd(
        objective, np.zeros(2), QuasiNewtonConfig(max_evaluations=10)
    )
    # scipy may stop on its own evaluation cap first
    assert trace.status in ("budget", "stopped")
    assert objective.ledger.estimates <= 10
    assert trace.final.value <= _bowl(np.zeros(2))  # type: ignore[union-attr]


def test_spsa_gains_and_directions(rng: np.random.Generator) -> None:
    config = SpsaConfig()
    a_0, c_0 = config.gains(0)
    assert c_0 == pytest.approx(0.2)
    assert a_0 == pytest.approx(0.15 / 101**0.602)
    assert sum(SpsaConfig(budget=600).stage_budgets()) == 600
    assert set(bernoulli_direction(1000, rng)) == {-1.0, 1.0}


def test_spsa_stage_validation() -> None:
    with pytest.raises(ValueError, match="equal"):
        SpsaConfig(stage_ratios=(1, 1), stage_shots=(10,), stage_averaging=(1, 1))


def test_spsa_gradient_is_exact_for_linear(rng: np.random.Generator) -> None:
    slope = np.array([1.0, -2.0, 0.5])
    objective = Objective.from_function(lambda x: float(slope @ x), 3)
    grad, _ = spsa_gradient(objective, np.zeros(3), 0.1, rng, averaging=500)
    # the estimate is unbiased; averaging shrinks the cross terms
    np.testing.assert_allclose(grad, slope, atol=0.3)
    assert objective.ledger.estimates == 1000


def test_spsa_spends_budget(rng: np.random.Generator) -> None:
    objective = Objective.from_function(lambda x: float(np.sum((x - 1) ** 2)), 4)
    trace = OptimizerTrace("spsa")
    stages = Mock()
    trace.stage_started.connect(stages)
    config = SpsaConfig(budget=600)
    result = minimize_spsa(objective, np.zeros(4), config, rng, trace=trace)
    assert result is trace
    assert trace.status == "budget"
    assert stages.call_count == 3
    assert objective.ledger.estimates <= 600
    assert _spend_is_monotonic(trace)
    assert objective(trace.parameters) < 4.0


def test_trig_nodes_and_fit() -> None:
    np.testing.assert_allclose(trig_nodes(1), 2 * np.pi * np.array([-1, 0, 1]) / 3)
    with pytest.raises(ValueError, match="non-negative"):
        trig_nodes(-1)

    poly = fit_trig_polynomial(np.cos(trig_nodes(1)), 1)
    np.testing.assert_allclose(poly.coefficients, [0.5, 0.0, 0.5], atol=1e-12)
    assert poly.degree == 1
    const = fit_trig_polynomial(np.full(5, 3.0), 2)
    assert const.coefficients[2] == pytest.approx(3.0)
    with pytest.raises(ValueError, match="needs 3 samples"):
        fit_trig_polynomial(np.ones(4), 1)


def test_trig_minimum() -> None:
    best = minimize_trig_polynomial(fit_trig_polynomial(np.cos(trig_nodes(1)), 1))
    assert abs(best.theta) == pytest.approx(np.pi, abs=1e-6)
    assert best.value == pytest.approx(-1.0)
    assert not best.degenerate

    flat = minimize_trig_polynomial(fit_trig_polynomial(np.full(3, 2.0), 1))
    assert flat.degenerate
    assert (flat.theta, flat.value) == (0.0, pytest.approx(2.0))


def test_trig_minimum_matches_grid_search() -> None:
    def curve(theta: np.ndarray) -> np.ndarray:
        return np.sin(theta) + 0.5 * np.sin(2 * theta)

    poly = fit_trig_polynomial(curve(trig_nodes(2)), 2)
    grid = np.linspace(-np.pi, np.pi, 200_001)
    np.testing.assert_allclose(poly(grid), curve(grid), atol=1e-12)
    best = minimize_trig_polynomial(poly)
    assert best.value == pytest.approx(curve(grid).min(), abs=1e-8)
    assert not best.grid_fallback


def test_cd_single_parameter_in_one_sweep() -> None:
    def curve(x: np.ndarray) -> float:
        return float(np.cos(x[0] - 0.3) + 0.25 * np.cos(2 * x[0]))

    objective = Objective.from_function(curve, 1)
    trace = minimize_cd(objective, [0.0], [2], CdConfig(max_sweeps=1))
    assert trace.status == "max_sweeps"
    assert len(trace) == 1
    grid = np.linspace(-np.pi, np.pi, 200_001)
    expected = min(curve(np.array([g])) for g in grid[::50])
    assert trace.final.value <= expected + 1e-8  # type: ignore[union-attr]
    final = trace.final.value  # type: ignore[union-attr]
    assert objective(trace.parameters) == pytest.approx(final)
    assert objective.ledger.estimates == 6


def test_cd_budget_and_validation(rng: np.random.Generator) -> None:
    objective = Objective.from_function(lambda x: float(np.cos(x).sum()), 2)
    trace = minimize_cd(objective, np.zeros(2), [1, 1], CdConfig(budget=7))
    assert trace.status == "budget"
    assert len(trace) == 2
    assert objective.ledger.estimates == 6
    np.testing.assert_allclose(np.abs(trace.parameters), np.pi, atol=1e-6)

    with pytest.raises(ValueError, match="degrees"):
        minimize_cd(objective, np.zeros(2), [1])
    with pytest.raises(ValueError, match="random generator"):
        minimize_cd(objective, np.zeros(2), [1, 1], CdConfig(order="random"))
    shuffled = minimize_cd(
        objective, np.zeros(2), [1, 1], CdConfig(order="random", max_sweeps=2), rng
    )
    assert shuffled.status == "max_sweeps"
    assert len(shuffled) == 4


@pytest.mark.parametrize("kind", ["ehv", "np"])
def test_energy_is_trig_polynomial_in_each_parameter(
    kind: str, rng: np.random.Generator
) -> None:
    model = HubbardModel.from_grid("2x2")
    spec = AnsatzSpec(kind=kind, layers=1, geometry=model.geometry)
    init = InitialStateSpec(sector=OccupationSector(n_up=1, n_down=1))
    objective = Objective.exact(model, spec, init)
    degrees = parameter_degrees(spec)
    x = default_parameters(spec, random=True, rng=rng)
    for j in (0, 1, len(degrees) - 1):
        nodes = trig_nodes(degrees[j])
        values = []
        for theta in nodes:
            x[j] = theta
            values.append(objective(x))
        poly = fit_trig_polynomial(values, degrees[j])
        for theta in rng.uniform(-np.pi, np.pi, size=20):
            x[j] = theta
            assert objective(x) == pytest.approx(float(poly(theta)), abs=1e-8)


def test_exact_objective_exposes_state() -> None:
    model = HubbardModel.from_grid("1x2")
    spec = AnsatzSpec(layers=1, geometry=model.geometry)
    init = InitialStateSpec(sector=OccupationSector(n_up=1, n_down=1))
    objective = Objective.exact(model, spec, init)
    state = objective.state(np.zeros(2))
    assert state.hamming_support() == (2,)
    assert objective.ledger.estimates == 0
