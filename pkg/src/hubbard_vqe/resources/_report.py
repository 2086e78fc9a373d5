from __future__ import annotations

import csv
import logging
import threading
from pathlib import Path
from typing import TYPE_CHECKING, Dict, Iterable, List, Optional, Sequence

from hubbard_vqe.types import ArchitectureModel, LatticeGeometry

from ._depth import (
    ARCHITECTURES,
    ansatz_depth_per_layer,
    initial_state_gate_bound,
    total_gate_count,
)
from ._fft import DepthFunction, crossover_condition, fft_depth_table

if TYPE_CHECKING:
    from hubbard_vqe.types import FormulaValue
    from hubbard_vqe.types._experiment import Cell

logger = logging.getLogger(__name__)

FORMULA_COLUMNS = ("grid", "column", "value", "provenance")

# one lock for every CSV this process appends to
_WRITE_LOCK = threading.Lock()


def formula_rows(grid: str, values: Iterable[FormulaValue]) -> List[Dict[str, Cell]]:
    """Long-format rows ``(grid, column, value, provenance)``."""
    return [
        {
            "grid": grid,
            "column": v.column,
            "value": v.value,
            "provenance": v.provenance,
        }
        for v in values
    ]


def layer_depth_table(
    sizes: Sequence[int],
    architectures: Sequence[ArchitectureModel] = ARCHITECTURES,
) -> List[Dict[str, Cell]]:
    """Per-layer depth of every architecture for square grids of the given sides.

    All nearest-neighbour layouts are emitted side by side.
    """
    rows: List[Dict[str, Cell]] = []
    for n in sizes:
        values = [ansatz_depth_per_layer(arch, n) for arch in architectures]
        rows.extend(formula_rows(f"{n}x{n}", values))
    return rows


def gate_count_table(
    grids: Sequence[str], layers: Sequence[int]
) -> List[Dict[str, Cell]]:
    """Gate bounds for every grid at every layer count, plus the initial-state part."""
    rows: List[Dict[str, Cell]] = []
    for grid in grids:
        geo = LatticeGeometry.parse(grid).oriented()
        values = [initial_state_gate_bound(geo.n_x, geo.n_y)]
        for n_layers in layers:
            bound = total_gate_count(geo.n_x, geo.n_y, n_layers)
            column = f"gate_bound[L={n_layers}]"
            values.append(bound.model_copy(update={"column": column}))
        rows.extend(formula_rows(geo.label, values))
    return rows


def fft_comparison_table(
    sizes: Sequence[int], t_f: Optional[DepthFunction] = None
) -> List[Dict[str, Cell]]:
    """FFT against Givens initial-state depths, plus the crossover flag per size."""
    rows: List[Dict[str, Cell]] = []
    for row in fft_depth_table(sizes, t_f):
        grid = f"{row.n_x}x{row.n_y}"
        rows.extend(formula_rows(grid, row.columns))
        rows.append(
            {
                "grid": grid,
                "column": "modified_beats_predicted",
                "value": int(crossover_condition(row.n_x, t_f)),
                "provenance": "(2n-1)T_F(n) < 20n-4",
            }
        )
    return rows


def write_rows_csv(
    path: Path | str,
    rows: Sequence[Dict[str, Cell]],
    append: bool = False,
    fieldnames: Optional[Sequence[str]] = None,
) -> Path:
    """Write `rows` to a CSV file.

    With ``append=True`` the rows are added to an existing file and the header is
    only written when the file is new. Writes are serialized across threads so that
    concurrent runs never interleave rows.

    Parameters
    ----------
    path : Path or str
        Target file; parent directories are created.
    rows : Sequence[dict]
        Rows to write; every row must have the same keys.
    append : bool
        Append instead of overwriting.
    fieldnames : Sequence[str], optional
        Column order. Defaults to the keys of the first row.
    """
    path = Path(path)
    if not rows and fieldnames is None:
        raise ValueError(f"No rows and no columns to write to {str(path)!r}.")
    columns = list(fieldnames or rows[0])
    path.parent.mkdir(parents=True, exist_ok=True)
    with _WRITE_LOCK:
        new = not append or not path.exists() or path.stat().st_size == 0
        with path.open("a" if append else "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=columns)
            if new:
                writer.writeheader()
            writer.writerows(rows)
    logger.debug("wrote %d rows to %s", len(rows), path)
    return path
