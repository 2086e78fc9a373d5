import math
from enum import Enum
from typing import TYPE_CHECKING, Dict, Literal, Tuple

from pydantic_compat import Field, field_validator

from ._base import _BaseModel
from ._lattice import LatticeGeometry, _GridModel

if TYPE_CHECKING:
    from pydantic import ValidationInfo
    from scipy.sparse import csr_matrix

PauliLetter = Literal["X", "Y", "Z"]


class HubbardModel(_GridModel):
    """Fermi-Hubbard model on an open rectangular grid.

    ``H = -t * sum_<ij>,s (a†_is a_js + h.c.) + U * sum_i n_i,up n_i,down``

    The geometry is stored in its canonical orientation (``n_x <= n_y``), so depth
    formulas and swap networks always run over the shorter dimension.
    """

    geometry: LatticeGeometry = Field(..., description="Lattice geometry.")
    t: float = Field(1.0, description="Tunnelling amplitude.")
    U: float = Field(2.0, description="Onsite Coulomb potential.")

    @field_validator("geometry")
    @classmethod
    def _orient(cls, geometry: LatticeGeometry) -> LatticeGeometry:
        return geometry.oriented()

    @classmethod
    def from_grid(cls, grid: str, t: float = 1.0, U: float = 2.0) -> "HubbardModel":
        """Create a model from a grid string such as ``"2x3"``."""
        return cls(geometry=LatticeGeometry.parse(grid), t=t, U=U)

    @property
    def n_sites(self) -> int:
        return self.geometry.n_sites

    @property
    def n_qubits(self) -> int:
        return self.geometry.n_modes

    def with_couplings(self, **couplings: float) -> "HubbardModel":
        """Return a copy with `t` and/or `U` replaced."""
        return HubbardModel(
            geometry=self.geometry,
            t=couplings.get("t", self.t),
            U=couplings.get("U", self.U),
        )

    def __str__(self) -> str:
        return f"Hubbard {self.geometry.label} (t={self.t:g}, U={self.U:g})"


class FermionicTerm(_BaseModel):
    """A hopping bond or an onsite interaction of the Hubbard Hamiltonian.

    For hopping terms `modes` are the two mode indices ``(i, j)``, ``i < j``, and
    the operator is ``coefficient * (a†_i a_j + a†_j a_i)``. For onsite terms they
    are the spin-up and spin-down modes of one site, and the operator is
    ``coefficient * n_i n_j``. When terms are built without spin resolution, `modes`
    hold site indices within one spin plane instead.
    """

    kind: Literal["hopping", "onsite"] = Field(..., description="Term type.")
    modes: Tuple[int, int] = Field(..., description="Sorted pair of indices.")
    coefficient: float = Field(..., description="Scalar prefactor (-t or U).")
    direction: Literal["horizontal", "vertical", "none"] = Field(
        "none", description="Bond direction for hopping terms."
    )

    @field_validator("modes")
    @classmethod
    def _sorted_pair(cls, modes: Tuple[int, int]) -> Tuple[int, int]:
        i, j = modes
        if i == j:
            raise ValueError(f"A term needs two distinct indices, got {modes}")
        return (i, j) if i < j else (j, i)


class PauliTerm(_BaseModel):
    """Real coefficient times a tensor product of single-qubit Pauli operators."""

    coefficient: float = Field(..., description="Finite, nonzero real coefficient.")
    factors: Tuple[Tuple[int, PauliLetter], ...] = Field(
        ...,
        description="(qubit, letter) pairs sorted by qubit; qubits not listed carry "
        "the identity.",
    )

    @field_validator("coefficient")
    @classmethod
    def _finite_nonzero(cls, value: float) -> float:
        if not math.isfinite(value) or value == 0:
            raise ValueError(f"Pauli coefficient must be finite and nonzero: {value}")
        return value

    @field_validator("factors", mode="before")
    @classmethod
    def _normalize_factors(cls, value: object) -> object:
        if isinstance(value, dict):
            value = tuple(value.items())
        items = sorted(tuple(v) for v in value)  # type: ignore[attr-defined]
        qubits = [q for q, _ in items]
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"Qubit repeated in Pauli factors: {qubits}")
        if any(q < 0 for q in qubits):
            raise ValueError(f"Negative qubit index in Pauli factors: {qubits}")
        return tuple(items)

    @property
    def factor_map(self) -> Dict[int, str]:
        return dict(self.factors)

    @property
    def x_mask(self) -> int:
        """Bitmask of qubits carrying X or Y (the bits the operator flips)."""
        return sum(1 << q for q, p in self.factors if p in "XY")

    @property
    def z_mask(self) -> int:
        """Bitmask of qubits carrying Z or Y (the bits contributing a sign)."""
        return sum(1 << q for q, p in self.factors if p in "YZ")

    @property
    def y_count(self) -> int:
        return sum(p == "Y" for _, p in self.factors)

    @property
    def is_diagonal(self) -> bool:
        return self.x_mask == 0

    def commutes_with(self, other: "PauliTerm") -> bool:
        """Symplectic test: commute iff the anticommuting overlap has even size."""
        overlap = (self.x_mask & other.z_mask) ^ (self.z_mask & other.x_mask)
        return bin(overlap).count("1") % 2 == 0

    def __str__(self) -> str:
        body = " ".join(f"{p}{q}" for q, p in self.factors) or "I"
        return f"{self.coefficient:+g} {body}"


class QubitHamiltonian(_BaseModel):
    """Sum of Pauli terms plus a scalar identity offset."""

    n_qubits: int = Field(..., ge=1, description="Number of qubits acted upon.")
    terms: Tuple[PauliTerm, ...] = Field(..., description="Pauli terms.")
    offset: float = Field(0.0, description="Coefficient of the identity.")

    @field_validator("terms")
    @classmethod
    def _terms_in_range(
        cls, terms: Tuple[PauliTerm, ...], info: "ValidationInfo"
    ) -> Tuple[PauliTerm, ...]:
        n_qubits = info.data.get("n_qubits")
        if n_qubits is not None:
            for term in terms:
                if term.factors and term.factors[-1][0] >= n_qubits:
                    raise ValueError(
                        f"Term {term} addresses a qubit outside [0, {n_qubits})."
                    )
        return terms

    def __len__(self) -> int:
        return len(self.terms)

    def to_sparse(self) -> "csr_matrix":
        """Return the full 2^n x 2^n matrix as a cached ``scipy.sparse.csr_matrix``."""
        from hubbard_vqe.model._sparse import qubit_hamiltonian_matrix

        return qubit_hamiltonian_matrix(self)


class TermKind(str, Enum):
    """Commuting group labels."""

    ONSITE = "O"
    H1 = "H1"
    H2 = "H2"
    V1 = "V1"
    V2 = "V2"

    @property
    def is_vertical(self) -> bool:
        return self in (TermKind.V1, TermKind.V2)

    @property
    def is_hopping(self) -> bool:
        return self is not TermKind.ONSITE


class TermGroup(_BaseModel):
    """Mutually commuting Hamiltonian terms, measurable in one setting.

    Horizontal groups split bonds by the parity of their left column, vertical groups
    by the parity of their upper row. Hopping pairs are mode pairs ``(i, j)`` with
    ``i < j``; onsite pairs are the (up, down) modes of each site.
    """

    kind: TermKind = Field(..., description="Group label.")
    pairs: Tuple[Tuple[int, int], ...] = Field(..., description="Mode pairs.")

    def zstring(self, pair: Tuple[int, int]) -> range:
        """Modes strictly between a pair, carrying the parity string."""
        i, j = pair
        return range(i + 1, j) if self.kind.is_vertical else range(0)

    def __len__(self) -> int:
        return len(self.pairs)
