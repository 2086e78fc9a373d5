from __future__ import annotations

from typing import TYPE_CHECKING, Dict, List, Tuple

from hubbard_vqe.types import (
    DOWN,
    UP,
    FermionicTerm,
    QubitHamiltonian,
    TermGroup,
    TermKind,
)

from ._terms import _hopping_paulis, _require_area, encode_term

if TYPE_CHECKING:
    from hubbard_vqe.types import HubbardModel, PauliTerm

_GROUP_ORDER = (TermKind.ONSITE, TermKind.H1, TermKind.H2, TermKind.V1, TermKind.V2)


def paulis_commute(a: PauliTerm, b: PauliTerm) -> bool:
    """Return True if two Pauli strings commute."""
    return a.commutes_with(b)


def group_commuting_terms(model: HubbardModel) -> List[TermGroup]:
    """Partition the model's terms into at most five commuting groups.

    Horizontal bonds go to H1 when their left column is even and H2 otherwise; vertical
    bonds go to V1 when their upper row is even and V2 otherwise. Pairs are listed
    spin-up plane first, ordered by their lower mode. Empty groups are omitted.
    """
    geo = model.geometry
    _require_area(geo)
    pairs: Dict[TermKind, List[Tuple[int, int]]] = {k: [] for k in _GROUP_ORDER}
    for x, y in geo.sites():
        pairs[TermKind.ONSITE].append(
            (geo.mode_index(x, y, UP), geo.mode_index(x, y, DOWN))
        )
    for spin in (UP, DOWN):
        for (x0, y0), (x1, y1) in geo.horizontal_bonds():
            kind = TermKind.H1 if x0 % 2 == 0 else TermKind.H2
            pairs[kind].append(
                _sorted(geo.mode_index(x0, y0, spin), geo.mode_index(x1, y1, spin))
            )
        for (x0, y0), (x1, y1) in geo.vertical_bonds():
            kind = TermKind.V1 if y0 % 2 == 0 else TermKind.V2
            pairs[kind].append(
                _sorted(geo.mode_index(x0, y0, spin), geo.mode_index(x1, y1, spin))
            )

    groups = []
    for kind in _GROUP_ORDER:
        found = pairs[kind]
        if not found:
            continue
        if kind is not TermKind.ONSITE:
            found = sorted(found)
        groups.append(TermGroup(kind=kind, pairs=tuple(found)))
    return groups


def _sorted(i: int, j: int) -> Tuple[int, int]:
    return (i, j) if i < j else (j, i)


def group_terms(model: HubbardModel, group: TermGroup) -> List[FermionicTerm]:
    """Fermionic terms belonging to `group`."""
    if group.kind is TermKind.ONSITE:
        return [
            FermionicTerm(kind="onsite", modes=p, coefficient=model.U)
            for p in group.pairs
        ]
    direction = "vertical" if group.kind.is_vertical else "horizontal"
    return [
        FermionicTerm(
            kind="hopping", modes=p, coefficient=-model.t, direction=direction
        )
        for p in group.pairs
    ]


def group_hamiltonian(model: HubbardModel, group: TermGroup) -> QubitHamiltonian:
    """Jordan-Wigner image of the part of the model belonging to `group`."""
    terms: List[PauliTerm] = []
    offset = 0.0
    for term in group_terms(model, group):
        paulis, shift = encode_term(term)
        terms.extend(paulis)
        offset += shift
    return QubitHamiltonian(n_qubits=model.n_qubits, terms=tuple(terms), offset=offset)


def unit_generator(n_qubits: int, group: TermGroup) -> QubitHamiltonian:
    """Group generator with unit couplings: ``sum n_i n_j`` or ``sum (XX+YY)/2 Z..Z``.

    The HV ansatz evolves each group under this operator for time given by its
    parameter.
    """
    terms: List[PauliTerm] = []
    offset = 0.0
    if group.kind is TermKind.ONSITE:
        for i, j in group.pairs:
            paulis, shift = encode_term(_onsite(i, j))
            terms.extend(paulis)
            offset += shift
    else:
        for i, j in group.pairs:
            terms.extend(_hopping_paulis(i, j, 1.0))
    return QubitHamiltonian(n_qubits=n_qubits, terms=tuple(terms), offset=offset)


def _onsite(i: int, j: int) -> FermionicTerm:
    return FermionicTerm(kind="onsite", modes=(i, j), coefficient=1.0)
