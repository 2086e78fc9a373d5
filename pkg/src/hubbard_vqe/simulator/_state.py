from __future__ import annotations

from typing import TYPE_CHECKING, Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from ._bits import basis_indices, mask_of, popcount

if TYPE_CHECKING:
    import numpy.typing as npt

RandomSource = np.random.Generator
SeedLike = Union[None, int, np.random.SeedSequence, np.random.Generator]

_NORM_TOL = 1e-10


def make_rng(seed: SeedLike = None) -> RandomSource:
    """Return a generator for `seed`, passing generators through unchanged."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def spawn_rngs(
    seed: Union[int, np.random.SeedSequence], n: int
) -> "list[RandomSource]":
    """Independent generators for `n` parallel runs derived from one master seed."""
    sequence = seed
    if not isinstance(sequence, np.random.SeedSequence):
        sequence = np.random.SeedSequence(seed)
    return [np.random.default_rng(child) for child in sequence.spawn(n)]


class StateVector:
    """Full 2^n amplitude vector with qubit ``q`` stored at bit ``q`` of the index.

    Parameters
    ----------
    amplitudes : array-like
        Complex amplitudes; must have length ``2**n`` and unit norm.
    eta : int, optional
        Fermion number when the state is known to lie in a fixed-weight subspace.
    check : bool
        Validate length and normalization (default True).
    """

    __slots__ = ("_amplitudes", "_n_qubits", "eta")

    def __init__(
        self, amplitudes: npt.ArrayLike, eta: Optional[int] = None, check: bool = True
    ) -> None:
        amps = np.ascontiguousarray(amplitudes, dtype=np.complex128)
        dim = amps.shape[0]
        n_qubits = dim.bit_length() - 1
        if check:
            if amps.ndim != 1 or dim == 0 or dim != 1 << n_qubits:
                raise ValueError(f"State length {dim} is not a power of two.")
            norm = float(np.vdot(amps, amps).real)
            if abs(norm - 1.0) > _NORM_TOL * max(1, n_qubits):
                raise ValueError(f"State is not normalized (norm^2 = {norm:.12g}).")
        self._amplitudes = amps
        self._n_qubits = n_qubits
        self.eta = eta

    @classmethod
    def zeros(cls, n_qubits: int) -> "StateVector":
        """The all-zeros basis state."""
        return basis_state(n_qubits, ())

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amplitudes

    @property
    def n_qubits(self) -> int:
        return self._n_qubits

    @property
    def dimension(self) -> int:
        return self._amplitudes.shape[0]

    def copy(self) -> "StateVector":
        return StateVector(self._amplitudes.copy(), eta=self.eta, check=False)

    def probabilities(self) -> np.ndarray:
        """Born probabilities of every basis state."""
        return np.abs(self._amplitudes) ** 2

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self._amplitudes, self._amplitudes).real))

    def weight_distribution(self) -> np.ndarray:
        """Probability mass per Hamming weight, indexed ``0 .. n_qubits``."""
        weights = popcount(basis_indices(self._n_qubits))
        return np.bincount(
            weights, weights=self.probabilities(), minlength=self._n_qubits + 1
        )

    def hamming_support(self, tol: float = 1e-12) -> Tuple[int, ...]:
        """Hamming weights carrying more than `tol` probability."""
        dist = self.weight_distribution()
        return tuple(int(w) for w in np.flatnonzero(dist > tol))

    def overlap(self, other: Union["StateVector", np.ndarray]) -> complex:
        """``<self|other>``."""
        vec = other.amplitudes if isinstance(other, StateVector) else other
        return complex(np.vdot(self._amplitudes, vec))

    def fidelity(self, other: Union["StateVector", np.ndarray]) -> float:
        """``|<self|other>|^2``."""
        return abs(self.overlap(other)) ** 2

    def __repr__(self) -> str:
        eta = "" if self.eta is None else f", eta={self.eta}"
        return f"<StateVector on {self._n_qubits} qubits{eta}>"


def basis_state(n_qubits: int, occupied: Iterable[int]) -> StateVector:
    """Computational basis state with the `occupied` qubits set to 1."""
    modes = tuple(occupied)
    if any(not 0 <= q < n_qubits for q in modes):
        raise ValueError(f"Occupied modes {modes} outside [0, {n_qubits}).")
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    amps[mask_of(modes)] = 1.0
    return StateVector(amps, eta=len(set(modes)), check=False)


def embed_sector_vector(
    n_qubits: int, indices: Sequence[int], values: npt.ArrayLike, eta: Optional[int]
) -> StateVector:
    """Scatter amplitudes given on a subset of basis `indices` into a full state."""
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    amps[np.asarray(indices, dtype=np.int64)] = np.asarray(values)
    return StateVector(amps, eta=eta)
