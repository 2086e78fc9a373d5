from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb
from typing import TYPE_CHECKING, Tuple

import numpy as np
from scipy import sparse

from hubbard_vqe.model import build_hubbard_terms
from hubbard_vqe.simulator import mask_of, parity_sign, popcount
from hubbard_vqe.types import SectorTooLargeError

if TYPE_CHECKING:
    from hubbard_vqe.types import HubbardModel, OccupationSector, QubitHamiltonian


def plane_masks(n_sites: int, n_particles: int) -> np.ndarray:
    """All bitmasks over `n_sites` bits with `n_particles` bits set, ascending."""
    masks = [mask_of(c) for c in combinations(range(n_sites), n_particles)]
    return np.array(sorted(masks), dtype=np.int64)


def sector_dimension(n_sites: int, sector: OccupationSector) -> int:
    return comb(n_sites, sector.n_up) * comb(n_sites, sector.n_down)


class SectorBasis:
    """Basis states of one occupation sector, as full-register bitmasks.

    A mask holds the spin-up plane in bits ``0 .. N-1`` and the spin-down plane in bits
    ``N .. 2N-1``. Masks are stored in ascending order so that positions can be looked
    up by bisection.
    """

    __slots__ = ("_masks", "n_sites", "sector")

    def __init__(self, n_sites: int, sector: OccupationSector) -> None:
        self.n_sites = n_sites
        self.sector = sector
        up = plane_masks(n_sites, sector.n_up)
        down = plane_masks(n_sites, sector.n_down)
        masks = (up[None, :] | (down[:, None] << n_sites)).ravel()
        masks.sort()
        masks.setflags(write=False)
        self._masks = masks

    @property
    def masks(self) -> np.ndarray:
        return self._masks

    @property
    def n_qubits(self) -> int:
        return 2 * self.n_sites

    def __len__(self) -> int:
        return self._masks.shape[0]

    def index_of(self, mask: int) -> int:
        """Position of `mask` in the basis."""
        pos = int(np.searchsorted(self._masks, mask))
        if pos >= len(self) or self._masks[pos] != mask:
            raise KeyError(f"Basis state {mask:#b} is not in sector {self.sector}.")
        return pos

    def positions(self, masks: np.ndarray) -> np.ndarray:
        """Vectorized `index_of`; every mask must belong to the sector."""
        return np.searchsorted(self._masks, masks)

    def __repr__(self) -> str:
        return (
            f"<SectorBasis {self.sector} on {self.n_sites} sites ({len(self)} states)>"
        )


def sector_basis(model: HubbardModel, sector: OccupationSector) -> SectorBasis:
    sector.check_fits(model.geometry)
    return SectorBasis(model.n_sites, sector)


def _check_cap(model: HubbardModel, sector: OccupationSector, cap: int) -> None:
    dim = sector_dimension(model.n_sites, sector)
    if dim > cap:
        raise SectorTooLargeError(dim, cap)


@lru_cache(maxsize=16)
def _sector_hamiltonian(
    model: HubbardModel, sector: OccupationSector
) -> Tuple[SectorBasis, sparse.csr_matrix]:
    basis = sector_basis(model, sector)
    n = model.n_sites
    masks = basis.masks
    rows = [np.arange(len(basis))]
    cols = [np.arange(len(basis))]
    up_plane = (1 << n) - 1
    doubles = popcount((masks & up_plane) & (masks >> n))
    data = [model.U * doubles.astype(float)]

    for term in build_hubbard_terms(model):
        if term.kind != "hopping":
            continue
        i, j = term.modes
        pair = (1 << i) | (1 << j)
        # a†_i a_j + a†_j a_i moves a fermion when exactly one of i, j is set
        movable = np.flatnonzero(popcount(masks & pair) == 1)
        if movable.size == 0:
            continue
        source = masks[movable]
        between = mask_of(range(i + 1, j))
        sign = parity_sign(source & between)
        rows.append(basis.positions(source ^ pair))
        cols.append(movable)
        data.append(term.coefficient * sign)

    matrix = sparse.coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(len(basis), len(basis)),
    ).tocsr()
    return basis, matrix


def sector_hamiltonian(
    model: HubbardModel, sector: OccupationSector, cap: int = 2_000_000
) -> Tuple[SectorBasis, sparse.csr_matrix]:
    """Sector-restricted Hubbard matrix built from fermionic anticommutation rules.

    The matrix element of ``a†_i a_j`` (``i < j``) between basis states carries the
    sign ``(-1)^(number of occupied modes strictly between i and j)``.

    Returns
    -------
    (SectorBasis, scipy.sparse.csr_matrix)
        The basis and the real symmetric sector matrix.
    """
    _check_cap(model, sector, cap)
    return _sector_hamiltonian(model, sector)


def restrict_to_sector(
    hamiltonian: QubitHamiltonian, basis: SectorBasis
) -> sparse.csr_matrix:
    """Rows and columns of a qubit Hamiltonian's full matrix belonging to `basis`."""
    if hamiltonian.n_qubits != basis.n_qubits:
        raise ValueError(
            f"Hamiltonian acts on {hamiltonian.n_qubits} qubits, the basis on "
            f"{basis.n_qubits}."
        )
    full = hamiltonian.to_sparse()
    return full[basis.masks][:, basis.masks].tocsr()
