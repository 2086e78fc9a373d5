from __future__ import annotations

from typing import TYPE_CHECKING, List, Optional, Tuple

import numpy as np

from hubbard_vqe.types import DOWN, UP, FermionicTerm, PauliTerm, QubitHamiltonian

if TYPE_CHECKING:
    from hubbard_vqe.types import HubbardModel, LatticeGeometry
    from hubbard_vqe.types._lattice import Bond


def _require_area(geometry: LatticeGeometry) -> None:
    if geometry.n_sites < 2:
        raise ValueError(
            f"A {geometry.label} grid has no bonds; at least two sites are required."
        )


def build_hubbard_terms(
    model: HubbardModel, spin_resolved: bool = True
) -> List[FermionicTerm]:
    """List every fermionic term of the model.

    Hopping terms come first (horizontal bonds, then vertical, per spin plane), then one
    onsite term per site in snake order. With ``spin_resolved=False``
    each bond is listed once, with site indices of the spin-up plane.

    Examples
    --------
    >>> len(build_hubbard_terms(HubbardModel.from_grid("2x2")))
    12
    """
    geo = model.geometry
    _require_area(geo)
    spins = (UP, DOWN) if spin_resolved else (UP,)
    terms: List[FermionicTerm] = []
    for spin in spins:
        for direction, bonds in (
            ("horizontal", list(geo.horizontal_bonds())),
            ("vertical", list(geo.vertical_bonds())),
        ):
            for (x0, y0), (x1, y1) in bonds:
                terms.append(
                    FermionicTerm(
                        kind="hopping",
                        modes=(
                            geo.mode_index(x0, y0, spin),
                            geo.mode_index(x1, y1, spin),
                        ),
                        coefficient=-model.t,
                        direction=direction,
                    )
                )
    for x, y in geo.sites():
        terms.append(
            FermionicTerm(
                kind="onsite",
                modes=(geo.mode_index(x, y, UP), geo.mode_index(x, y, DOWN)),
                coefficient=model.U,
            )
        )
    return terms


def _hopping_paulis(i: int, j: int, coefficient: float) -> Tuple[PauliTerm, PauliTerm]:
    zstring = tuple((k, "Z") for k in range(i + 1, j))
    half = coefficient / 2
    return (
        PauliTerm(coefficient=half, factors=((i, "X"), (j, "X"), *zstring)),
        PauliTerm(coefficient=half, factors=((i, "Y"), (j, "Y"), *zstring)),
    )


def encode_term(term: FermionicTerm) -> Tuple[Tuple[PauliTerm, ...], float]:
    """Jordan-Wigner image of one term as ``(pauli_terms, identity_offset)``."""
    i, j = term.modes
    if term.coefficient == 0:
        return (), 0.0
    if term.kind == "hopping":
        return _hopping_paulis(i, j, term.coefficient), 0.0
    quarter = term.coefficient / 4
    paulis = (
        PauliTerm(coefficient=-quarter, factors=((i, "Z"),)),
        PauliTerm(coefficient=-quarter, factors=((j, "Z"),)),
        PauliTerm(coefficient=quarter, factors=((i, "Z"), (j, "Z"))),
    )
    return paulis, quarter


def jordan_wigner_encode(model: HubbardModel) -> QubitHamiltonian:
    """Map the model to qubits under the snake Jordan-Wigner ordering.

    Hopping ``(i, j)`` becomes ``-t/2 (X_i X_j + Y_i Y_j) Z_{i+1} ... Z_{j-1}``; onsite
    ``U n_i n_j`` becomes ``U/4 (I - Z_i)(I - Z_j)`` with its identity part kept as the
    scalar offset.
    """
    terms: List[PauliTerm] = []
    offset = 0.0
    for term in build_hubbard_terms(model):
        paulis, shift = encode_term(term)
        terms.extend(paulis)
        offset += shift
    return QubitHamiltonian(n_qubits=model.n_qubits, terms=tuple(terms), offset=offset)


def perturbed_bond(geometry: LatticeGeometry) -> Bond:
    """The bond whose hopping is shifted to break degenerate fillings."""
    if geometry.n_x >= 2:
        return (0, 0), (1, 0)
    return (0, 0), (0, 1)


def hopping_matrix(model: HubbardModel, perturb: Optional[float] = None) -> np.ndarray:
    """Single-particle ``N x N`` hopping matrix in snake site order.

    Parameters
    ----------
    model : HubbardModel
        Model supplying geometry and `t`.
    perturb : float, optional
        If given, the hopping on `perturbed_bond` becomes ``-(t + perturb)``.
    """
    geo = model.geometry
    h = np.zeros((geo.n_sites, geo.n_sites))
    special = perturbed_bond(geo) if perturb is not None and geo.n_sites > 1 else None
    for bond in (*geo.horizontal_bonds(), *geo.vertical_bonds()):
        (x0, y0), (x1, y1) = bond
        a, b = geo.mode_index(x0, y0), geo.mode_index(x1, y1)
        value = -model.t
        if bond == special:
            value -= perturb  # type: ignore[operator]
        h[a, b] = h[b, a] = value
    return h
