from __future__ import annotations

from typing import TYPE_CHECKING, List, Sequence, Tuple

from hubbard_vqe.oracle import noninteracting_ground_state
from hubbard_vqe.simulator import StateVector, basis_state
from hubbard_vqe.types import DOWN, UP, InitialStateKind, Placement

if TYPE_CHECKING:
    from hubbard_vqe.types import (
        HubbardModel,
        InitialStateSpec,
        LatticeGeometry,
        OccupationSector,
    )

    Site = Tuple[int, int]


def _manhattan(a: Site, b: Site) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def spread_sites(geometry: LatticeGeometry, k: int) -> List[Site]:
    """Pick `k` sites far apart from each other.

    The main diagonal ``(0, 0), (1, 1), ...`` is taken first. Beyond it, each step adds
    the site whose Manhattan distance to the nearest chosen site is largest, ties going
    to the lowest mode index (the site first in snake order).
    """
    order = list(geometry.sites())
    rank = {site: i for i, site in enumerate(order)}
    k = min(k, len(order))
    diagonal = min(geometry.n_x, geometry.n_y)
    chosen: List[Site] = [(i, i) for i in range(diagonal)][:k]
    while len(chosen) < k:
        free = [s for s in order if s not in chosen]
        chosen.append(
            max(
                free,
                key=lambda s: (min(_manhattan(s, c) for c in chosen), -rank[s]),
            )
        )
    return chosen


def _spread_modes(geometry: LatticeGeometry, sector: OccupationSector) -> List[int]:
    paired = min(sector.n_up, sector.n_down)
    single_spin = UP if sector.n_up >= sector.n_down else DOWN
    sites = spread_sites(geometry, max(sector.n_up, sector.n_down))
    modes = []
    for i, (x, y) in enumerate(sites):
        spins = (UP, DOWN) if i < paired else (single_spin,)
        modes.extend(geometry.mode_index(x, y, s) for s in spins)
    return sorted(modes)


def _check_explicit(
    geometry: LatticeGeometry, sector: OccupationSector, modes: Sequence[int]
) -> List[int]:
    for mode in modes:
        if not 0 <= mode < geometry.n_modes:
            raise IndexError(f"Mode {mode} is outside [0, {geometry.n_modes}).")
    up = sum(mode < geometry.n_sites for mode in modes)
    if (up, len(modes) - up) != (sector.n_up, sector.n_down):
        raise ValueError(
            f"Explicit modes {tuple(modes)} hold ({up}, {len(modes) - up}) fermions, "
            f"the sector needs {sector}."
        )
    return sorted(modes)


def place_fermions(
    geometry: LatticeGeometry,
    sector: OccupationSector,
    placement: Placement = Placement.TOP_CORNER,
    modes: Sequence[int] = (),
) -> List[int]:
    """Occupied modes of a computational-basis start.

    ``corner`` fills the first sites of each spin plane in snake order. ``spread``
    doubly occupies well separated sites (see `spread_sites`) and places any surplus
    fermions of one spin on the next sites of the same sequence. ``explicit`` checks
    and returns `modes`.

    Examples
    --------
    >>> geo = LatticeGeometry(n_x=3, n_y=3)
    >>> place_fermions(geo, OccupationSector(n_up=3, n_down=3), "spread")
    [0, 4, 8, 9, 13, 17]
    """
    sector.check_fits(geometry)
    placement = Placement(placement)
    if placement is Placement.EXPLICIT:
        return _check_explicit(geometry, sector, modes)
    if placement is Placement.SPREAD:
        return _spread_modes(geometry, sector)
    n = geometry.n_sites
    return list(range(sector.n_up)) + [n + i for i in range(sector.n_down)]


def initial_state(init: InitialStateSpec, model: HubbardModel) -> StateVector:
    """Input state of the ansatz circuit for `init` on `model`'s lattice."""
    if init.kind is InitialStateKind.NONINTERACTING:
        return noninteracting_ground_state(model, init.sector, init.epsilon)
    modes = place_fermions(
        model.geometry, init.sector, init.placement, init.modes or ()
    )
    return basis_state(model.n_qubits, modes)
