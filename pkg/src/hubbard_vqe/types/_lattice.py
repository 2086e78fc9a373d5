from typing import Iterator, Tuple

from pydantic_compat import Field, model_validator

from ._base import _BaseModel
from ._utils import parse_grid

Site = Tuple[int, int]
Bond = Tuple[Site, Site]

UP, DOWN = 0, 1


class LatticeGeometry(_BaseModel):
    """Rectangular grid of sites with open boundaries.

    Sites are addressed as ``(x, y)`` with ``x`` the column and ``y`` the row. Modes
    (site, spin) are laid out in snake order: the spin-up plane occupies indices
    ``0 .. N-1`` and the spin-down plane ``N .. 2N-1``; even rows run left to right and
    odd rows right to left, so that horizontally adjacent sites of equal spin are always
    adjacent in the Jordan-Wigner ordering.
    """

    n_x: int = Field(..., ge=1, description="Number of columns.")
    n_y: int = Field(..., ge=1, description="Number of rows.")

    @classmethod
    def parse(cls, text: str) -> "LatticeGeometry":
        """Create a geometry from a grid string such as ``"2x3"``."""
        n_x, n_y = parse_grid(text)
        return cls(n_x=n_x, n_y=n_y)

    @property
    def n_sites(self) -> int:
        """Number of lattice sites N."""
        return self.n_x * self.n_y

    @property
    def n_modes(self) -> int:
        """Number of fermionic modes (and qubits), 2N."""
        return 2 * self.n_sites

    @property
    def label(self) -> str:
        return f"{self.n_x}x{self.n_y}"

    def __str__(self) -> str:
        return self.label

    def transposed(self) -> "LatticeGeometry":
        """Return the geometry with rows and columns exchanged."""
        return LatticeGeometry(n_x=self.n_y, n_y=self.n_x)

    def oriented(self) -> "LatticeGeometry":
        """Return the orientation with the fewer columns (``n_x <= n_y``)."""
        return self.transposed() if self.n_y < self.n_x else self

    def position_in_row(self, x: int, y: int) -> int:
        """Offset of column `x` along the snake within row `y`."""
        return x if y % 2 == 0 else self.n_x - 1 - x

    def mode_index(self, x: int, y: int, spin: int = UP) -> int:
        """Jordan-Wigner index of the mode at site ``(x, y)`` with `spin`."""
        if not (0 <= x < self.n_x and 0 <= y < self.n_y):
            raise IndexError(f"Site {(x, y)} is outside the {self.label} grid.")
        if spin not in (UP, DOWN):
            raise ValueError(f"spin must be 0 (up) or 1 (down), got {spin!r}")
        return spin * self.n_sites + y * self.n_x + self.position_in_row(x, y)

    def site_of(self, mode: int) -> Tuple[int, int, int]:
        """Inverse of `mode_index`: return ``(x, y, spin)`` for a mode index."""
        if not 0 <= mode < self.n_modes:
            raise IndexError(f"Mode {mode} is outside [0, {self.n_modes}).")
        spin, rest = divmod(mode, self.n_sites)
        y, offset = divmod(rest, self.n_x)
        x = offset if y % 2 == 0 else self.n_x - 1 - offset
        return x, y, spin

    def sites(self) -> Iterator[Site]:
        """Iterate over sites in snake order."""
        for y in range(self.n_y):
            for offset in range(self.n_x):
                yield (offset if y % 2 == 0 else self.n_x - 1 - offset), y

    def horizontal_bonds(self) -> Iterator[Bond]:
        """Iterate over bonds ``((x, y), (x + 1, y))``."""
        for y in range(self.n_y):
            for x in range(self.n_x - 1):
                yield (x, y), (x + 1, y)

    def vertical_bonds(self) -> Iterator[Bond]:
        """Iterate over bonds ``((x, y), (x, y + 1))``."""
        for y in range(self.n_y - 1):
            for x in range(self.n_x):
                yield (x, y), (x, y + 1)


class OccupationSector(_BaseModel):
    """Fixed number of spin-up and spin-down fermions."""

    n_up: int = Field(..., ge=0, description="Number of spin-up fermions.")
    n_down: int = Field(..., ge=0, description="Number of spin-down fermions.")

    @classmethod
    def from_eta(cls, eta: int) -> "OccupationSector":
        """Split `eta` fermions between the spins, the spare one going up."""
        if eta < 0:
            raise ValueError(f"eta must be non-negative, got {eta}")
        return cls(n_up=eta - eta // 2, n_down=eta // 2)

    @property
    def eta(self) -> int:
        """Total number of fermions."""
        return self.n_up + self.n_down

    def check_fits(self, geometry: LatticeGeometry) -> "OccupationSector":
        """Raise if either spin holds more fermions than there are sites."""
        if max(self.n_up, self.n_down) > geometry.n_sites:
            raise ValueError(
                f"Sector ({self.n_up}, {self.n_down}) does not fit on a "
                f"{geometry.label} grid with {geometry.n_sites} sites."
            )
        return self

    def __str__(self) -> str:
        return f"({self.n_up},{self.n_down})"


class _GridModel(_BaseModel):
    """Mixin that accepts ``grid="AxB"`` in place of a geometry."""

    @model_validator(mode="before")
    @classmethod
    def _grid_to_geometry(cls, data: object) -> object:
        if isinstance(data, dict) and "grid" in data and "geometry" not in data:
            data = dict(data)
            data["geometry"] = LatticeGeometry.parse(data.pop("grid"))
        return data
