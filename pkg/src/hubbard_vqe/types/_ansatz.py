from enum import Enum
from typing import Optional, Tuple

from pydantic_compat import Field, field_validator, model_validator

from ._base import _BaseModel
from ._errors import UnsupportedOrderingError
from ._hamiltonian import TermKind
from ._lattice import LatticeGeometry, OccupationSector, _GridModel


class AnsatzKind(str, Enum):
    """Variational circuit families."""

    HV = "hv"
    EHV = "ehv"
    NP = "np"


# Per-layer group order for each grid family, indexed by number of columns.
TERM_ORDERINGS: "dict[int, Tuple[TermKind, ...]]" = {
    1: (TermKind.ONSITE, TermKind.V1, TermKind.V2),
    2: (TermKind.ONSITE, TermKind.H1, TermKind.V1, TermKind.V2),
    3: (TermKind.ONSITE, TermKind.H1, TermKind.V1, TermKind.V2, TermKind.H2),
}


def term_ordering(n_x: int, extrapolate: bool = True) -> Tuple[TermKind, ...]:
    """Group order of the grid family with `n_x` columns.

    Wider grids reuse the three-column pattern unless `extrapolate` is False, in
    which case `UnsupportedOrderingError` is raised.
    """
    if n_x < 1:
        raise ValueError(f"Grids need at least one column, got {n_x}")
    if n_x in TERM_ORDERINGS:
        return TERM_ORDERINGS[n_x]
    if not extrapolate:
        raise UnsupportedOrderingError(
            f"No term ordering is tabulated for {n_x} columns (known: "
            f"{sorted(TERM_ORDERINGS)})."
        )
    return TERM_ORDERINGS[max(TERM_ORDERINGS)]


class AnsatzSpec(_GridModel):
    """Shape of a layered variational circuit."""

    kind: AnsatzKind = Field(AnsatzKind.EHV, description="Ansatz family.")
    layers: int = Field(1, ge=1, description="Number of layers L.")
    geometry: LatticeGeometry = Field(..., description="Lattice the ansatz acts on.")

    @field_validator("geometry")
    @classmethod
    def _orient(cls, geometry: LatticeGeometry) -> LatticeGeometry:
        return geometry.oriented()

    @property
    def extrapolated(self) -> bool:
        """True when the term ordering extends the three-column pattern."""
        return self.geometry.n_x > max(TERM_ORDERINGS)

    @property
    def ordering(self) -> Tuple[TermKind, ...]:
        """Group order within one layer, restricted to groups the grid has."""
        family = term_ordering(self.geometry.n_x)
        present = set(_present_groups(self.geometry))
        return tuple(kind for kind in family if kind in present)

    def with_layers(self, layers: int) -> "AnsatzSpec":
        return AnsatzSpec(kind=self.kind, layers=layers, geometry=self.geometry)

    def __str__(self) -> str:
        return f"{self.kind.value.upper()} L={self.layers} on {self.geometry.label}"


def _present_groups(geometry: LatticeGeometry) -> Tuple[TermKind, ...]:
    kinds = [TermKind.ONSITE]
    if geometry.n_x >= 2:
        kinds.append(TermKind.H1)
    if geometry.n_x >= 3:
        kinds.append(TermKind.H2)
    if geometry.n_y >= 2:
        kinds.append(TermKind.V1)
    if geometry.n_y >= 3:
        kinds.append(TermKind.V2)
    return tuple(kinds)


class Placement(str, Enum):
    """Computational-basis placements of the initial fermions."""

    TOP_CORNER = "corner"
    SPREAD = "spread"
    EXPLICIT = "explicit"


class InitialStateKind(str, Enum):
    NONINTERACTING = "noninteracting"
    BASIS = "basis"


class InitialStateSpec(_BaseModel):
    """How the circuit's input state is prepared.

    The default is the ground state of the non-interacting model in the given sector.
    A computational basis state can be requested instead, either by a placement rule or
    by an explicit set of occupied modes. When `epsilon` is set, a degenerate orbital
    filling is split by changing one hopping coefficient by `epsilon`.
    """

    kind: InitialStateKind = Field(
        InitialStateKind.NONINTERACTING, description="Preparation method."
    )
    sector: OccupationSector = Field(..., description="Fermions per spin.")
    placement: Placement = Field(
        Placement.TOP_CORNER, description="Placement rule for basis-state starts."
    )
    modes: Optional[Tuple[int, ...]] = Field(
        None, description="Occupied modes for explicit placement."
    )
    epsilon: Optional[float] = Field(
        None,
        description="(Optional) Perturbation of the designated hopping coefficient "
        "used to break a degenerate non-interacting filling, e.g. 1e-4.",
    )

    @model_validator(mode="after")
    def _check_explicit(self) -> "InitialStateSpec":
        if self.kind is InitialStateKind.BASIS and self.placement is Placement.EXPLICIT:
            if self.modes is None:
                raise ValueError("Explicit placement requires `modes`.")
            if len(set(self.modes)) != len(self.modes):
                raise ValueError(f"Repeated modes in explicit placement: {self.modes}")
            if len(self.modes) != self.sector.eta:
                raise ValueError(
                    f"Explicit placement occupies {len(self.modes)} modes but the "
                    f"sector holds {self.sector.eta} fermions."
                )
        return self


class SwapRepetition(_BaseModel):
    """One ``U_R U_L`` repetition of the column swap network.

    Permutations list, for each column location, the original column currently there.
    After the repetition, the vertical bonds of the original column at the right end are
    JW-adjacent for rows with even ``y`` (V1), and those of the column at the left end
    for rows with odd ``y`` (V2).
    """

    after_left: Tuple[int, ...] = Field(..., description="Permutation after U_L.")
    after_right: Tuple[int, ...] = Field(..., description="Permutation after U_R.")

    @property
    def v1_column(self) -> int:
        return self.after_right[-1]

    @property
    def v2_column(self) -> int:
        return self.after_right[0]


class SwapNetworkSchedule(_BaseModel):
    """Column permutations of the fermionic swap network over one layer."""

    n_x: int = Field(..., ge=2, description="Number of columns.")
    left_pairs: Tuple[Tuple[int, int], ...] = Field(
        ..., description="Column locations swapped by U_L."
    )
    right_pairs: Tuple[Tuple[int, int], ...] = Field(
        ..., description="Column locations swapped by U_R."
    )
    repetitions: Tuple[SwapRepetition, ...] = Field(..., description="n_x entries.")

    def __len__(self) -> int:
        return len(self.repetitions)

    @property
    def final_order(self) -> Tuple[int, ...]:
        return self.repetitions[-1].after_right
