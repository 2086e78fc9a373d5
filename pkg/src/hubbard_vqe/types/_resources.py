from enum import Enum
from typing import Literal, Optional, Tuple

from pydantic_compat import Field, model_validator

from ._base import _BaseModel


class Architecture(str, Enum):
    FULLY_CONNECTED = "fully-connected"
    NEAREST_NEIGHBOUR = "nearest-neighbour"
    SYCAMORE = "sycamore"


NNLayout = Literal["interlaced", "separated", "tabulated"]


class ArchitectureModel(_BaseModel):
    """Qubit connectivity assumed by the depth formulas.

    Nearest-neighbour hardware comes in two layouts: spin planes interlaced row by row,
    or placed side by side. The `tabulated` layout reproduces the headline
    nearest-neighbour row of the per-layer depth table, which differs from both.
    """

    kind: Architecture = Field(..., description="Connectivity family.")
    layout: Optional[NNLayout] = Field(
        None, description="Layout, required for nearest-neighbour connectivity."
    )

    @model_validator(mode="after")
    def _layout_matches(self) -> "ArchitectureModel":
        nn = self.kind is Architecture.NEAREST_NEIGHBOUR
        if nn and self.layout is None:
            raise ValueError("Nearest-neighbour architectures need a layout.")
        if not nn and self.layout is not None:
            raise ValueError(f"{self.kind.value} architectures take no layout.")
        return self

    @property
    def label(self) -> str:
        return f"{self.kind.value}/{self.layout}" if self.layout else self.kind.value


class FormulaValue(_BaseModel):
    """A number together with the formula that produced it."""

    column: str = Field(..., description="Column or quantity name.")
    value: int = Field(..., description="Evaluated value.")
    provenance: str = Field(..., description="Formula that produced the value.")


class FftDepthRow(_BaseModel):
    """Initial-state preparation depths for one grid."""

    n_x: int = Field(..., ge=1)
    n_y: int = Field(..., ge=1)
    columns: Tuple[FormulaValue, ...] = Field(..., description="One entry per method.")

    def __getitem__(self, column: str) -> int:
        for entry in self.columns:
            if entry.column == column:
                return entry.value
        raise KeyError(f"No column {column!r} in FFT depth row")


class DepthReport(_BaseModel):
    """Depth and gate budget of a complete run of the circuit."""

    grid: str = Field(..., description="Grid label, e.g. '2x4'.")
    layers: int = Field(..., ge=1)
    architecture: str = Field(..., description="Architecture label.")
    per_layer_depth: FormulaValue = Field(..., description="Depth of one layer.")
    ansatz_depth: int = Field(..., description="Depth of all layers.")
    initial_state_depth: FormulaValue = Field(
        ..., description="Depth of the initial-state preparation."
    )
    measurement_depth: int = Field(..., description="Depth of basis-change gates.")
    total_depth: int = Field(..., description="Sum of the depth parts.")
    gate_bound: FormulaValue = Field(..., description="2-qubit gate upper bound.")

    @model_validator(mode="after")
    def _totals(self) -> "DepthReport":
        parts = self.ansatz_depth + self.initial_state_depth.value
        if self.total_depth != parts + self.measurement_depth:
            raise ValueError("total_depth must equal the sum of its parts")
        return self
