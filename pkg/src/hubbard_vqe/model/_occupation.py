from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Dict, Tuple

from hubbard_vqe.types import OccupationSector

if TYPE_CHECKING:
    from hubbard_vqe.types import HubbardModel

logger = logging.getLogger(__name__)

# Fermion number with the lowest ground energy at t=1, U=2, keyed by (n_x, n_y) with
# n_x <= n_y.
OCCUPATION_TABLE: Dict[Tuple[int, int], int] = {
    (1, 2): 2,
    (1, 3): 2,
    (2, 2): 2,
    (1, 4): 3,
    (1, 5): 4,
    (1, 6): 4,
    (2, 3): 4,
    (1, 7): 6,
    (1, 8): 6,
    (2, 4): 6,
    (3, 3): 6,
    (1, 9): 7,
    (1, 10): 8,
    (1, 11): 8,
    (2, 5): 8,
    (2, 6): 8,
    (1, 12): 9,
    (3, 4): 9,
}

# coupling ratio the table was computed for
_TABLE_RATIO = 2.0


def optimal_occupation(
    model: HubbardModel, use_table: bool = True, cap: int = 2_000_000
) -> OccupationSector:
    """Return the occupation sector holding the model's lowest-energy state.

    Grids in `OCCUPATION_TABLE` at ``U / t = 2`` are answered from the table. Any
    other grid or coupling (or ``use_table=False``) falls back to diagonalizing every
    sector, which raises `SectorTooLargeError` for sectors larger than `cap`.

    Examples
    --------
    >>> optimal_occupation(HubbardModel.from_grid("3x3")).eta
    6
    """
    geo = model.geometry
    key = (geo.n_x, geo.n_y)
    if use_table and key in OCCUPATION_TABLE and model.t != 0:
        if abs(model.U / model.t - _TABLE_RATIO) < 1e-12:
            return OccupationSector.from_eta(OCCUPATION_TABLE[key])

    from hubbard_vqe.oracle import lowest_sector

    if use_table:
        logger.warning(
            "No tabulated occupation for %s; sweeping all sectors", model
        )
    return lowest_sector(model, cap=cap)
