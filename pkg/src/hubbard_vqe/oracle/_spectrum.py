from __future__ import annotations

import logging
from functools import lru_cache
from itertools import product
from typing import TYPE_CHECKING, NamedTuple, Optional

import numpy as np
from scipy.sparse.linalg import eigsh

from hubbard_vqe.simulator import StateVector, embed_sector_vector
from hubbard_vqe.types import OccupationSector, SectorTooLargeError

from ._sector import SectorBasis, sector_dimension, sector_hamiltonian

if TYPE_CHECKING:
    from hubbard_vqe.types import HubbardModel

logger = logging.getLogger(__name__)

DEGENERACY_TOL = 1e-8
# sectors up to this size are diagonalized densely
_DENSE_LIMIT = 400
_EIGSH_K = 3


class SpectrumResult(NamedTuple):
    """Lowest eigenpair of a sector Hamiltonian."""

    energy: float
    vector: np.ndarray
    degeneracy: int
    residual: float
    basis: SectorBasis

    def state(self) -> StateVector:
        """The ground vector embedded in the full qubit register."""
        return embed_sector_vector(
            self.basis.n_qubits, self.basis.masks, self.vector, self.basis.sector.eta
        )


def _fix_phase(vector: np.ndarray) -> np.ndarray:
    # largest component real and positive; first index wins ties
    magnitudes = np.round(np.abs(vector), 12)
    pivot = int(np.argmax(magnitudes))
    return vector * (np.abs(vector[pivot]) / vector[pivot])


@lru_cache(maxsize=32)
def _ground_state(
    model: HubbardModel, sector: OccupationSector, cap: int
) -> SpectrumResult:
    basis, matrix = sector_hamiltonian(model, sector, cap)
    dim = len(basis)
    if dim <= _DENSE_LIMIT:
        energies, vectors = np.linalg.eigh(matrix.toarray())
        vector = vectors[:, 0]
    else:
        v0 = np.linspace(1.0, 2.0, dim)
        energies, vectors = eigsh(matrix, k=_EIGSH_K, which="SA", v0=v0, tol=1e-12)
        order = np.argsort(energies)
        energies, vector = energies[order], vectors[:, order[0]]
    energy = float(energies[0])
    degeneracy = int(np.sum(energies - energy < DEGENERACY_TOL))
    vector = _fix_phase(vector.astype(np.complex128))
    vector /= np.linalg.norm(vector)
    residual = float(np.linalg.norm(matrix @ vector - energy * vector))
    vector.setflags(write=False)
    logger.debug(
        "ground state of %s in %s: E0=%.12g (dim %d, residual %.1e)",
        model,
        sector,
        energy,
        dim,
        residual,
    )
    return SpectrumResult(energy, vector, degeneracy, residual, basis)


def exact_ground_state(
    model: HubbardModel, sector: OccupationSector, cap: int = 2_000_000
) -> SpectrumResult:
    """Lowest eigenpair of the model within one occupation sector.

    Small sectors use a dense eigensolver, larger ones Lanczos with a fixed start
    vector, so results are deterministic. The vector's phase is fixed so that its
    largest component is real and positive.

    Raises
    ------
    SectorTooLargeError
        If the sector dimension exceeds `cap`.

    Examples
    --------
    >>> model = HubbardModel.from_grid("1x2")
    >>> exact_ground_state(model, OccupationSector(n_up=1, n_down=1)).energy
    -1.2360679774997...
    """
    sector.check_fits(model.geometry)
    return _ground_state(model, sector, cap)


def fidelity(a: StateVector, b: StateVector) -> float:
    """Squared overlap ``|<a|b>|^2``, clipped to ``[0, 1]``."""
    if a.dimension != b.dimension:
        raise ValueError(
            f"Cannot compare states on {a.n_qubits} and {b.n_qubits} qubits."
        )
    return float(min(1.0, max(0.0, a.fidelity(b))))


def lowest_sector(
    model: HubbardModel, cap: int = 2_000_000, tol: float = 1e-9
) -> OccupationSector:
    """Sweep every ``(n_up, n_down)`` sector and return the lowest-energy one.

    Only sectors with ``n_up >= n_down`` are visited (spin symmetry). Ties within `tol`
    go to the smaller fermion number, then to the more balanced split.
    """
    n = model.n_sites
    best: Optional[OccupationSector] = None
    best_energy = np.inf
    for n_up, n_down in product(range(n + 1), repeat=2):
        if n_down > n_up:
            continue
        sector = OccupationSector(n_up=n_up, n_down=n_down)
        if sector_dimension(n, sector) > cap:
            raise SectorTooLargeError(sector_dimension(n, sector), cap)
        energy = exact_ground_state(model, sector, cap).energy
        tied = abs(energy - best_energy) <= tol
        if energy < best_energy - tol or (tied and _smaller(sector, best)):
            best, best_energy = sector, energy
    assert best is not None
    logger.info("lowest sector for %s: %s (E0=%.10g)", model, best, best_energy)
    return best


def _smaller(a: OccupationSector, b: Optional[OccupationSector]) -> bool:
    if b is None:
        return True
    return (a.eta, a.n_up - a.n_down) < (b.eta, b.n_up - b.n_down)
