"""Lattice, Hubbard Hamiltonian, Jordan-Wigner image and commuting groups."""

from hubbard_vqe.types import (
    FermionicTerm,
    HubbardModel,
    LatticeGeometry,
    OccupationSector,
    PauliTerm,
    QubitHamiltonian,
    TermGroup,
    TermKind,
)

from ._groups import (
    group_commuting_terms,
    group_hamiltonian,
    group_terms,
    paulis_commute,
    unit_generator,
)
from ._occupation import OCCUPATION_TABLE, optimal_occupation
from ._sparse import qubit_hamiltonian_matrix
from ._terms import (
    build_hubbard_terms,
    encode_term,
    hopping_matrix,
    jordan_wigner_encode,
    perturbed_bond,
)

__all__ = [
    "OCCUPATION_TABLE",
    "FermionicTerm",
    "HubbardModel",
    "LatticeGeometry",
    "OccupationSector",
    "PauliTerm",
    "QubitHamiltonian",
    "TermGroup",
    "TermKind",
    "build_hubbard_terms",
    "encode_term",
    "group_commuting_terms",
    "group_hamiltonian",
    "group_terms",
    "hopping_matrix",
    "jordan_wigner_encode",
    "optimal_occupation",
    "paulis_commute",
    "perturbed_bond",
    "qubit_hamiltonian_matrix",
    "unit_generator",
]
