"""Shared plumbing of the experiment suites: problem setup, single runs, sweeps."""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from functools import partial
from typing import TYPE_CHECKING, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from hubbard_vqe.ansatz import default_parameters, load_parameters, parameter_degrees
from hubbard_vqe.measurement import double_occupancy
from hubbard_vqe.model import jordan_wigner_encode, optimal_occupation
from hubbard_vqe.optimize import (
    Objective,
    OptimizerTrace,
    minimize_cd,
    minimize_quasinewton_fd,
    minimize_spsa,
)
from hubbard_vqe.oracle import exact_ground_state, fidelity
from hubbard_vqe.simulator import expectation_exact, spawn_rngs
from hubbard_vqe.types import (
    AnsatzSpec,
    HubbardModel,
    InitialStateKind,
    InitialStateSpec,
    MeasurementConfig,
    NoiseModel,
    OccupationSector,
    OptimizerKind,
    RunRecord,
)

if TYPE_CHECKING:
    from hubbard_vqe.optimize import TracePoint
    from hubbard_vqe.oracle import SpectrumResult
    from hubbard_vqe.simulator import RandomSource, StateVector
    from hubbard_vqe.types import ExperimentConfig
    from hubbard_vqe.types._experiment import Cell

logger = logging.getLogger(__name__)


class Problem(NamedTuple):
    """A model, its occupation sector and the exact ground state in that sector."""

    model: HubbardModel
    sector: OccupationSector
    ground: SpectrumResult
    ground_state: StateVector
    ground_double_occupancy: float
    epsilon: Optional[float] = None


def prepare_problem(
    config: ExperimentConfig,
    U: Optional[float] = None,
    sector: Optional[OccupationSector] = None,
    epsilon: Optional[float] = None,
) -> Problem:
    """Build the model of `config` (at coupling `U` if given) and solve it exactly.

    The sector is, in order of precedence: `sector`, ``config.eta`` split evenly
    between the spins, or the lowest-energy sector of the model.
    """
    model = HubbardModel(
        geometry=config.geometry, t=config.t, U=config.U if U is None else U
    )
    if sector is None:
        if config.eta is not None:
            sector = OccupationSector.from_eta(config.eta)
        else:
            sector = optimal_occupation(model, cap=config.oracle_cap)
    sector.check_fits(model.geometry)
    ground = exact_ground_state(model, sector, config.oracle_cap)
    state = ground.state()
    if ground.degeneracy > 1:
        logger.warning(
            "Ground state of %s in %s is %d-fold degenerate; fidelities refer to "
            "one representative",
            model,
            sector,
            ground.degeneracy,
        )
    logger.info("%s, sector %s: E0=%.10f", model, sector, ground.energy)
    return Problem(
        model=model,
        sector=sector,
        ground=ground,
        ground_state=state,
        ground_double_occupancy=double_occupancy(state),
        epsilon=config.epsilon if epsilon is None else epsilon,
    )


def ansatz_spec(config: ExperimentConfig, problem: Problem, layers: int) -> AnsatzSpec:
    geometry = problem.model.geometry
    return AnsatzSpec(kind=config.ansatz, layers=layers, geometry=geometry)


def initial_spec(config: ExperimentConfig, problem: Problem) -> InitialStateSpec:
    """Non-interacting ground state, or a basis state when a placement is set."""
    if config.placement is not None:
        return InitialStateSpec(
            kind=InitialStateKind.BASIS,
            sector=problem.sector,
            placement=config.placement,
        )
    return InitialStateSpec(sector=problem.sector, epsilon=problem.epsilon)


def initial_parameters(
    config: ExperimentConfig, spec: AnsatzSpec, rng: RandomSource
) -> np.ndarray:
    if config.init_file is not None:
        return load_parameters(config.init_file, spec)
    return default_parameters(spec, random=config.random_init, rng=rng)


def _shots(config: ExperimentConfig) -> int:
    if config.m is not None:
        return config.m
    if config.optimizer is OptimizerKind.SPSA:
        return config.spsa.stage_shots[-1]
    return config.cd.m


def build_objective(
    config: ExperimentConfig,
    problem: Problem,
    spec: AnsatzSpec,
    rng: RandomSource,
    exact: bool,
    error_detection: bool = False,
) -> Objective:
    """Exact-expectation objective, or one estimated from samples."""
    init = initial_spec(config, problem)
    if exact:
        return Objective.exact(problem.model, spec, init)
    measurement = MeasurementConfig(
        m=_shots(config),
        error_detection=error_detection,
        eta=problem.sector.eta if error_detection else None,
        samples_per_trajectory=config.samples_per_trajectory,
    )
    noise = NoiseModel(p=config.noise)
    return Objective.sampled(problem.model, spec, init, measurement, rng, noise)


def _log_stage(trace: OptimizerTrace, stage: int) -> None:
    logger.debug("%s stage %d starts at point %d", trace.optimizer, stage, len(trace))


def _log_point(point: TracePoint) -> None:
    logger.debug(
        "iteration %d (stage %d): %.8f after %d estimates",
        point.iteration,
        point.stage,
        point.value,
        point.estimates,
    )


def run_optimizer(
    config: ExperimentConfig,
    objective: Objective,
    x0: np.ndarray,
    spec: AnsatzSpec,
    rng: RandomSource,
) -> OptimizerTrace:
    trace = OptimizerTrace(config.optimizer.value)
    trace.stage_started.connect(partial(_log_stage, trace))
    trace.appended.connect(_log_point)
    if config.optimizer is OptimizerKind.LBFGS:
        return minimize_quasinewton_fd(objective, x0, config.lbfgs, trace)
    if config.optimizer is OptimizerKind.SPSA:
        return minimize_spsa(objective, x0, config.spsa, rng, config.m, trace)
    cd = config.cd
    if config.m is not None:
        cd = cd.model_copy(update={"m": config.m})
    return minimize_cd(objective, x0, parameter_degrees(spec), cd, rng, trace)


def run_single(
    config: ExperimentConfig,
    problem: Problem,
    layers: int,
    rng: RandomSource,
    exact: bool,
    run: int = 0,
    error_detection: bool = False,
) -> RunRecord:
    """Optimize one ansatz instance and score its final state against the oracle.

    Parameters
    ----------
    config : ExperimentConfig
        Ansatz, optimizer, measurement and noise settings.
    problem : Problem
        Model and exact ground state.
    layers : int
        Ansatz depth.
    rng : numpy.random.Generator
        Stream of this run.
    exact : bool
        Optimize the exact energy instead of sampled estimates.
    run : int
        Index of the run under ``config.seed``.
    error_detection : bool
        Filter samples by Hamming weight.
    """
    started = time.perf_counter()
    spec = ansatz_spec(config, problem, layers)
    objective = build_objective(config, problem, spec, rng, exact, error_detection)
    x0 = initial_parameters(config, spec, rng)
    trace = run_optimizer(config, objective, x0, spec, rng)

    final = objective.state(trace.parameters)
    hamiltonian = jordan_wigner_encode(problem.model)
    ledger = objective.ledger
    record = RunRecord(
        config_hash=config.config_hash,
        mode=config.mode.value,
        grid=problem.model.geometry.label,
        ansatz=spec.kind.value,
        layers=layers,
        optimizer=config.optimizer.value,
        seed=config.seed,
        run=run,
        U=problem.model.U,
        noise=0.0 if exact else config.noise,
        error_detection=error_detection,
        extrapolated=spec.extrapolated,
        status=trace.status,
        parameters=tuple(float(v) for v in trace.parameters),
        trace=trace.to_entries(),
        exact_energy=problem.ground.energy,
        final_energy=expectation_exact(final, hamiltonian),
        final_fidelity=fidelity(problem.ground_state, final),
        double_occupancy_error=abs(
            double_occupancy(final) - problem.ground_double_occupancy
        ),
        estimates=ledger.estimates,
        measurements_used=ledger.energy_measurements,
        circuit_evaluations=ledger.circuit_evaluations,
        discards=ledger.discarded,
        wall_clock=time.perf_counter() - started,
    )
    logger.info(
        "%s L=%d run %d (%s, %s): infidelity %.3e, energy error %.3e",
        record.grid,
        layers,
        run,
        record.optimizer,
        record.status,
        record.final_infidelity,
        record.final_energy_error,
    )
    return record


def run_replicas(
    config: ExperimentConfig,
    problem: Problem,
    layers: int,
    exact: bool,
    error_detection: bool = False,
) -> List[RunRecord]:
    """``config.run_count`` independent runs, ``config.workers`` at a time.

    Run ``i`` draws from the ``i``-th stream spawned from ``config.seed``, so results
    do not depend on the number of workers.
    """
    rngs = spawn_rngs(config.seed, config.run_count)

    def _one(run: int) -> RunRecord:
        return run_single(
            config, problem, layers, rngs[run], exact, run, error_detection
        )

    if config.workers == 1 or len(rngs) == 1:
        return [_one(i) for i in range(len(rngs))]
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        return list(pool.map(_one, range(len(rngs))))


def median_fidelity(records: Sequence[RunRecord]) -> float:
    return float(np.median([r.final_fidelity for r in records]))


def sweep_layers(
    config: ExperimentConfig,
    problem: Problem,
    exact: bool = True,
    target: Optional[float] = None,
) -> Tuple[List[RunRecord], Optional[int]]:
    """Deepen the ansatz from ``config.layers`` until the target fidelity is reached.

    Stops at ``config.max_layers`` (or after ``config.layers`` when unset). Returns all
    records and the first depth whose median fidelity reaches the target, or None.
    """
    target = config.target_fidelity if target is None else target
    last = max(config.layers, config.max_layers or config.layers)
    records: List[RunRecord] = []
    for layers in range(config.layers, last + 1):
        batch = run_replicas(config, problem, layers, exact)
        records.extend(batch)
        if median_fidelity(batch) >= target:
            logger.info(
                "%s reached fidelity %.3f at depth %d", problem.model, target, layers
            )
            return records, layers
    logger.info(
        "%s did not reach fidelity %.3f by depth %d", problem.model, target, last
    )
    return records, None


def spread_rows(
    records: Sequence[RunRecord], keys: Sequence[str] = ("grid", "layers", "optimizer")
) -> List[Dict[str, Cell]]:
    """Median, minimum and maximum final infidelity per group of records."""
    groups: Dict[Tuple, List[RunRecord]] = {}
    for record in records:
        key = tuple(getattr(record, k) for k in keys)
        groups.setdefault(key, []).append(record)
    rows: List[Dict[str, Cell]] = []
    for key, group in groups.items():
        infidelities = np.array([r.final_infidelity for r in group])
        row: Dict[str, Cell] = dict(zip(keys, key))
        row.update(
            runs=len(group),
            median_infidelity=float(np.median(infidelities)),
            min_infidelity=float(infidelities.min()),
            max_infidelity=float(infidelities.max()),
            median_energy_error=float(
                np.median([r.final_energy_error for r in group])
            ),
            discards=int(sum(r.discards for r in group)),
            circuit_evaluations=int(sum(r.circuit_evaluations for r in group)),
        )
        rows.append(row)
    return rows


def depth_rows(records: Sequence[RunRecord]) -> List[Dict[str, Cell]]:
    """Per-record depth series: infidelity, energy error and double-occupancy error."""
    return [
        {
            "grid": r.grid,
            "ansatz": r.ansatz,
            "U": r.U,
            "depth": r.layers,
            "run": r.run,
            "final_infidelity": r.final_infidelity,
            "final_energy_error": r.final_energy_error,
            "double_occupancy_error": r.double_occupancy_error,
        }
        for r in records
    ]
