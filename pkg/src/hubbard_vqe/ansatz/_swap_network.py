from __future__ import annotations

from typing import TYPE_CHECKING, List, Sequence, Tuple

from hubbard_vqe.types import DOWN, UP, SwapNetworkSchedule, SwapRepetition

if TYPE_CHECKING:
    from hubbard_vqe.types import LatticeGeometry

    Pair = Tuple[int, int]


def _swap(order: Sequence[int], pairs: Sequence[Pair]) -> Tuple[int, ...]:
    out = list(order)
    for a, b in pairs:
        out[a], out[b] = out[b], out[a]
    return tuple(out)


def column_pairs(n_x: int) -> Tuple[Tuple[Pair, ...], Tuple[Pair, ...]]:
    """Column locations swapped by ``U_L`` and by ``U_R``."""
    left = tuple((c, c + 1) for c in range(0, n_x - 1, 2))
    right = tuple((c, c + 1) for c in range(1, n_x - 1, 2))
    return left, right


def swap_network(geometry: LatticeGeometry) -> SwapNetworkSchedule:
    """Trace the column permutation through ``n_x`` repetitions of ``U_R U_L``.

    Raises
    ------
    ValueError
        For single-column grids, whose vertical bonds are already JW-adjacent.

    Examples
    --------
    >>> schedule = swap_network(LatticeGeometry(n_x=6, n_y=6))
    >>> [c + 1 for c in schedule.repetitions[0].after_right]
    [2, 4, 1, 6, 3, 5]
    """
    n_x = geometry.n_x
    if n_x < 2:
        raise ValueError("Single-column grids need no swap network.")
    left, right = column_pairs(n_x)
    order: Tuple[int, ...] = tuple(range(n_x))
    reps: List[SwapRepetition] = []
    for _ in range(n_x):
        after_left = _swap(order, left)
        order = _swap(after_left, right)
        reps.append(SwapRepetition(after_left=after_left, after_right=order))
    return SwapNetworkSchedule(
        n_x=n_x, left_pairs=left, right_pairs=right, repetitions=tuple(reps)
    )


def row_pair_qubits(geometry: LatticeGeometry, y: int, spin: int, pair: Pair) -> Pair:
    """Qubits holding column locations `pair` of row `y`."""
    base = spin * geometry.n_sites + y * geometry.n_x
    a, b = (base + geometry.position_in_row(c, y) for c in pair)
    return (a, b) if a < b else (b, a)


def boundary_qubits(geometry: LatticeGeometry, y: int, spin: int) -> Pair:
    """The JW-adjacent qubits joining row `y` to row ``y + 1``."""
    last = spin * geometry.n_sites + (y + 1) * geometry.n_x
    return last - 1, last


def layer_rows(geometry: LatticeGeometry) -> List[Tuple[int, int]]:
    """(row, spin) for every row of both spin planes."""
    return [(y, s) for s in (UP, DOWN) for y in range(geometry.n_y)]


def boundaries(geometry: LatticeGeometry, parity: int) -> List[Tuple[int, int]]:
    """(row, spin) of vertical boundaries whose upper row has the given parity."""
    return [
        (y, s) for s in (UP, DOWN) for y in range(parity, geometry.n_y - 1, 2)
    ]
