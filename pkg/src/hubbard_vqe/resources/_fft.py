"""Depth of initial-state preparation: FFT-based constructions against Givens rotations.

``T_F(n)`` is the depth of a one-dimensional fermionic Fourier transform on ``n``
modes; it defaults to ``n - 1``.
"""

from __future__ import annotations

from typing import Callable, Iterable, List, Optional

from hubbard_vqe.types import FftDepthRow, FormulaValue

DepthFunction = Callable[[int], int]


def linear_fft_depth(n: int) -> int:
    """``T_F(n) = n - 1``."""
    return n - 1


def _t(t_f: Optional[DepthFunction]) -> DepthFunction:
    return linear_fft_depth if t_f is None else t_f


def fft_depth_nearest_neighbour(
    n_x: int, n_y: int, t_f: Optional[DepthFunction] = None
) -> FormulaValue:
    """Asymptotically efficient FFT construction on nearest-neighbour hardware."""
    t = _t(t_f)
    return FormulaValue(
        column="predicted_nn",
        value=t(n_x) + t(n_y) + 2 * (8 * n_x + 4 * n_y - 6),
        provenance="T_F(n_x)+T_F(n_y)+2(8n_x+4n_y-6)",
    )


def initial_state_depth_comparison(
    n_x: int, n_y: int, t_f: Optional[DepthFunction] = None
) -> FftDepthRow:
    """Initial-state depths of the FFT-based methods and of Givens rotations.

    Examples
    --------
    >>> row = initial_state_depth_comparison(4, 4)
    >>> row["predicted"], row["modified"], row["givens"]
    (82, 27, 15)
    """
    if n_x < 1 or n_y < 1:
        raise ValueError(f"Grid sides must be positive, got {n_x}x{n_y}.")
    t = _t(t_f)
    columns = (
        FormulaValue(
            column="naive",
            value=t(n_x) + t(n_y) * n_x**2,
            provenance="T_F(n_x)+T_F(n_y)n_x^2",
        ),
        FormulaValue(
            column="predicted",
            value=t(n_x) + t(n_y) + 2 * (8 * n_x + 2 * n_y - 2),
            provenance="T_F(n_x)+T_F(n_y)+2(8n_x+2n_y-2)",
        ),
        fft_depth_nearest_neighbour(n_x, n_y, t),
        FormulaValue(
            column="modified",
            value=t(n_x) + 2 * n_x * t(n_y),
            provenance="T_F(n_x)+2n_x T_F(n_y)",
        ),
        FormulaValue(
            column="givens", value=n_x * n_y - 1, provenance="n_x n_y - 1"
        ),
    )
    return FftDepthRow(n_x=n_x, n_y=n_y, columns=columns)


def crossover_condition(n: int, t_f: Optional[DepthFunction] = None) -> bool:
    """True when the modified swap network beats the predicted FFT on an n x n grid.

    ``(2n - 1) T_F(n) < 20n - 4``

    Examples
    --------
    >>> crossover_condition(11), crossover_condition(12)
    (True, False)
    """
    return (2 * n - 1) * _t(t_f)(n) < 20 * n - 4


def fft_depth_table(
    sizes: Iterable[int], t_f: Optional[DepthFunction] = None
) -> List[FftDepthRow]:
    """Comparison rows for square grids of the given side lengths."""
    return [initial_state_depth_comparison(n, n, t_f) for n in sizes]
