from __future__ import annotations

from typing import TYPE_CHECKING, NamedTuple, Optional, Tuple

import numpy as np

from hubbard_vqe.model import hopping_matrix
from hubbard_vqe.simulator import StateVector
from hubbard_vqe.types import DegenerateFillingError

from ._sector import plane_masks

if TYPE_CHECKING:
    from hubbard_vqe.types import HubbardModel, OccupationSector

DEGENERACY_TOL = 1e-8


class SlaterState(NamedTuple):
    """Lowest orbitals of the hopping matrix, filled per spin."""

    energies: np.ndarray
    orbitals_up: np.ndarray
    orbitals_down: np.ndarray

    @property
    def energy(self) -> float:
        """Sum of the occupied orbital energies."""
        n_up = self.orbitals_up.shape[1]
        n_down = self.orbitals_down.shape[1]
        return float(self.energies[:n_up].sum() + self.energies[:n_down].sum())


def _check_filling(energies: np.ndarray, n: int, spin: str) -> None:
    if 0 < n < energies.shape[0] and energies[n] - energies[n - 1] < DEGENERACY_TOL:
        fermi = energies[n - 1]
        degenerate = energies[np.abs(energies - fermi) < DEGENERACY_TOL]
        raise DegenerateFillingError(degenerate, spin)


def slater_orbitals(
    model: HubbardModel, sector: OccupationSector, epsilon: Optional[float] = None
) -> SlaterState:
    """Diagonalize the hopping matrix and select the occupied orbitals per spin.

    Raises
    ------
    DegenerateFillingError
        If the highest occupied and lowest unoccupied orbitals of either spin have the
        same energy.
    """
    sector.check_fits(model.geometry)
    energies, vectors = np.linalg.eigh(hopping_matrix(model, perturb=epsilon))
    _check_filling(energies, sector.n_up, "up")
    _check_filling(energies, sector.n_down, "down")
    return SlaterState(energies, vectors[:, : sector.n_up], vectors[:, : sector.n_down])


def _plane_amplitudes(orbitals: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    n_sites, n = orbitals.shape
    masks = plane_masks(n_sites, n)
    if n == 0:
        return masks, np.ones(1)
    rows = np.array(
        [[i for i in range(n_sites) if (int(m) >> i) & 1] for m in masks],
        dtype=np.int64,
    )
    # rows are ascending site indices, the Jordan-Wigner canonical order
    return masks, np.linalg.det(orbitals[rows, :])


def noninteracting_ground_state(
    model: HubbardModel, sector: OccupationSector, epsilon: Optional[float] = None
) -> StateVector:
    """Ground state of the ``U = 0`` model in `sector`, as a full-register state.

    Amplitudes are products of spin-up and spin-down determinants of the occupied
    orbital rows. With `epsilon`, the hopping on the designated bond (see
    `hubbard_vqe.model.perturbed_bond`) becomes ``-(t + epsilon)`` before
    diagonalizing, which splits degenerate fillings.
    """
    slater = slater_orbitals(model, sector, epsilon)
    n = model.n_sites
    up_masks, up_amps = _plane_amplitudes(slater.orbitals_up)
    down_masks, down_amps = _plane_amplitudes(slater.orbitals_down)
    amps = np.zeros(1 << (2 * n), dtype=np.complex128)
    index = (up_masks[None, :] | (down_masks[:, None] << n)).ravel()
    amps[index] = (down_amps[:, None] * up_amps[None, :]).ravel()
    return StateVector(amps, eta=sector.eta)
