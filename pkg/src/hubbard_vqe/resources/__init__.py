"""Closed-form circuit depths, gate bounds and initial-state depth comparisons."""

from ._depth import (
    ARCHITECTURES,
    ansatz_depth_per_layer,
    constructed_gate_count,
    depth_report,
    initial_state_gate_bound,
    total_gate_count,
)
from ._fft import (
    crossover_condition,
    fft_depth_nearest_neighbour,
    fft_depth_table,
    initial_state_depth_comparison,
    linear_fft_depth,
)
from ._report import (
    FORMULA_COLUMNS,
    fft_comparison_table,
    formula_rows,
    gate_count_table,
    layer_depth_table,
    write_rows_csv,
)

__all__ = [
    "ARCHITECTURES",
    "FORMULA_COLUMNS",
    "ansatz_depth_per_layer",
    "constructed_gate_count",
    "crossover_condition",
    "depth_report",
    "initial_state_gate_bound",
    "fft_comparison_table",
    "fft_depth_nearest_neighbour",
    "fft_depth_table",
    "formula_rows",
    "gate_count_table",
    "initial_state_depth_comparison",
    "layer_depth_table",
    "linear_fft_depth",
    "total_gate_count",
    "write_rows_csv",
]
