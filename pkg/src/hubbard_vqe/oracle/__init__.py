"""Exact ground truth: sector diagonalization, Slater determinants and fidelities."""

from ._golden import GoldenCache, golden_key, vector_hash
from ._sector import (
    SectorBasis,
    plane_masks,
    restrict_to_sector,
    sector_basis,
    sector_dimension,
    sector_hamiltonian,
)
from ._slater import SlaterState, noninteracting_ground_state, slater_orbitals
from ._spectrum import (
    DEGENERACY_TOL,
    SpectrumResult,
    exact_ground_state,
    fidelity,
    lowest_sector,
)

__all__ = [
    "DEGENERACY_TOL",
    "GoldenCache",
    "SectorBasis",
    "SlaterState",
    "SpectrumResult",
    "exact_ground_state",
    "fidelity",
    "golden_key",
    "lowest_sector",
    "noninteracting_ground_state",
    "plane_masks",
    "restrict_to_sector",
    "sector_basis",
    "sector_dimension",
    "sector_hamiltonian",
    "slater_orbitals",
    "vector_hash",
]
