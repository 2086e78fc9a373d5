from __future__ import annotations

import logging
from functools import partial
from typing import TYPE_CHECKING, Callable, List, Optional, Tuple, Union

import numpy as np

from hubbard_vqe.model import jordan_wigner_encode
from hubbard_vqe.simulator import (
    Circuit,
    StateVector,
    TrajectorySampler,
    basis_indices,
    popcount,
    run_circuit,
    sample_bitstrings,
)
from hubbard_vqe.types import (
    AllSamplesDiscardedError,
    EnergyEstimate,
    MeasurementConfig,
    NoiseModel,
    TermKind,
)

from ._settings import MeasurementSetting, build_measurement_settings

if TYPE_CHECKING:
    import numpy.typing as npt

    from hubbard_vqe.simulator import RandomSource
    from hubbard_vqe.types import HubbardModel

    Source = Union[StateVector, Tuple[StateVector, Circuit]]
    Draw = Callable[[int, RandomSource], np.ndarray]

logger = logging.getLogger(__name__)


def trajectory_samples(
    sampler: TrajectorySampler, per: int, n: int, rng: RandomSource
) -> np.ndarray:
    """Draw `n` samples, `per` from each trajectory.

    The sampler lists clean trajectories before faulty ones, so the batch is shuffled
    before the surplus of the last trajectory is cut.
    """
    trajectories = -(-n // per)
    samples = sampler.sample(trajectories, rng, per).samples
    if samples.size > n:
        samples = rng.permutation(samples)[:n]
    return samples


def _bind(draw: Draw, rng: RandomSource, n: int) -> np.ndarray:
    return draw(n, rng)


def error_detect_filter(samples: npt.ArrayLike, eta: int) -> Tuple[np.ndarray, int]:
    """Keep the samples of Hamming weight `eta`; return them and the discard count.

    Every gate of the ansatz and of the measurement basis change conserves the number
    of ones, so any other weight signals an error.
    """
    samples = np.asarray(samples, dtype=np.int64)
    keep = popcount(samples) == eta
    return samples[keep], int(samples.size - np.count_nonzero(keep))


def _onsite_masks(n_qubits: int) -> List[int]:
    n_sites = n_qubits // 2
    return [(1 << k) | (1 << (k + n_sites)) for k in range(n_sites)]


def double_occupancy(state: StateVector) -> float:
    """``sum_i <n_i,up n_i,down>`` computed from the full distribution.

    Site ``i`` of the spin-up plane and site ``i`` of the spin-down plane share the same
    offset within their plane, so the pairs are ``(i, i + N)``.

    Examples
    --------
    >>> from hubbard_vqe.simulator import basis_state
    >>> double_occupancy(basis_state(4, [0, 1, 2, 3]))
    2.0
    """
    probs = state.probabilities()
    idx = basis_indices(state.n_qubits)
    masks = _onsite_masks(state.n_qubits)
    return float(sum(probs[(idx & mask) == mask].sum() for mask in masks))


def sampled_double_occupancy(samples: npt.ArrayLike, n_qubits: int) -> float:
    """Mean number of doubly occupied sites over computational-basis samples."""
    samples = np.asarray(samples, dtype=np.int64)
    if samples.size == 0:
        raise ValueError("No samples to average.")
    counts = sum(
        ((samples & mask) == mask).astype(float) for mask in _onsite_masks(n_qubits)
    )
    return float(np.mean(counts))


class EnergyEstimator:
    """Sampled energy estimates for one model and measurement configuration.

    Without noise, every setting samples the stored final state after its basis change,
    so one circuit simulation serves all shots. With noise, each circuit evaluation is a
    separate depolarizing trajectory through the ansatz and the basis change
    (`samples_per_trajectory` relaxes this).

    Parameters
    ----------
    model : HubbardModel
        Model whose energy is estimated.
    config : MeasurementConfig, optional
        Shots per setting and error detection.
    noise : NoiseModel, optional
        Depolarizing noise; noiseless by default.
    """

    def __init__(
        self,
        model: HubbardModel,
        config: Optional[MeasurementConfig] = None,
        noise: Optional[NoiseModel] = None,
    ) -> None:
        self.model = model
        self.config = config or MeasurementConfig()
        self.noise = noise or NoiseModel()
        if self.config.error_detection and self.config.eta is None:
            raise ValueError("Error detection needs the expected Hamming weight eta.")
        self.settings: List[MeasurementSetting] = build_measurement_settings(model)
        self.offset = jordan_wigner_encode(model).offset

    @property
    def n_settings(self) -> int:
        return len(self.settings)

    def _collect(
        self, draw: Callable[[int], np.ndarray], m: int
    ) -> Tuple[np.ndarray, int]:
        if not self.config.error_detection:
            return draw(m), 0
        eta = int(self.config.eta)  # type: ignore[arg-type]
        limit = m * self.config.max_attempt_factor
        kept: List[np.ndarray] = []
        n_kept = discarded = attempts = 0
        while n_kept < m and attempts < limit:
            batch = draw(min(m - n_kept, limit - attempts))
            attempts += batch.size
            good, bad = error_detect_filter(batch, eta)
            kept.append(good)
            n_kept += good.size
            discarded += bad
        if n_kept == 0:
            raise AllSamplesDiscardedError(attempts, eta)
        if n_kept < m:
            logger.warning(
                "Error detection kept %d of %d requested samples after %d attempts",
                n_kept,
                m,
                attempts,
            )
        return np.concatenate(kept)[:m], discarded

    def _drawers(self, source: Source) -> List[Draw]:
        """One sampler per setting, mapping `(n, rng)` to `n` measured bitstrings."""
        if isinstance(source, StateVector):
            initial, circuit = source, Circuit(source.n_qubits)
        else:
            initial, circuit = source

        if self.noise.is_noiseless:
            final = run_circuit(initial, circuit)
            drawers = []
            for setting in self.settings:
                rotated = setting.rotate(final)
                drawers.append(partial(sample_bitstrings, rotated))
        else:
            per = self.config.samples_per_trajectory
            drawers = []
            for setting in self.settings:
                sampler = TrajectorySampler(
                    initial, circuit.then(setting.circuit), self.noise
                )
                drawers.append(partial(trajectory_samples, sampler, per))
        return drawers

    def estimate(
        self, source: Source, rng: RandomSource, m: Optional[int] = None
    ) -> EnergyEstimate:
        """Estimate the energy of `source` from `m` shots per setting.

        Parameters
        ----------
        source : StateVector or (StateVector, Circuit)
            A prepared state, or an input state and the circuit to run on it.
        rng : numpy.random.Generator
            Random stream; consumed setting by setting in group order.
        m : int, optional
            Shots per setting, defaulting to the configured `m`.

        Raises
        ------
        AllSamplesDiscardedError
            If error detection rejects every sample of a setting.
        """
        m = self.config.m if m is None else m
        if m < 1:
            raise ValueError(f"m must be at least 1, got {m}")
        drawers = self._drawers(source)

        value = self.offset
        counts, discards = [], []
        occupancy = 0.0
        for setting, draw in zip(self.settings, drawers):
            samples, discarded = self._collect(partial(_bind, draw, rng), m)
            value += float(np.mean(setting.readout(samples)))
            if setting.kind is TermKind.ONSITE:
                occupancy = float(np.mean(setting.double_occupancy(samples)))
            counts.append(int(samples.size))
            discards.append(discarded)
        logger.debug(
            "estimate %.6f from %s samples, %s discarded", value, counts, discards
        )
        return EnergyEstimate(
            value=value,
            offset=self.offset,
            groups=tuple(s.kind for s in self.settings),
            samples=tuple(counts),
            discarded=tuple(discards),
            double_occupancy=occupancy,
        )

    def exact(self, state: StateVector) -> float:
        """Energy of `state` assembled from the settings' exact group expectations."""
        return self.offset + sum(s.exact(state) for s in self.settings)


def estimate_energy(
    model: HubbardModel,
    source: Source,
    config: MeasurementConfig,
    rng: RandomSource,
    noise: Optional[NoiseModel] = None,
) -> EnergyEstimate:
    """One sampled energy estimate of `source` for `model` (see `EnergyEstimator`)."""
    return EnergyEstimator(model, config, noise).estimate(source, rng)
