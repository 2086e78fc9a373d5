from typing import Optional, Tuple

from pydantic_compat import Field

from ._base import _BaseModel
from ._hamiltonian import TermKind


class NoiseModel(_BaseModel):
    """Depolarizing noise after every 2-qubit gate.

    Each qubit touched by a 2-qubit gate independently suffers, with probability `p`,
    one of X, Y or Z chosen uniformly.
    """

    p: float = Field(0.0, ge=0.0, le=1.0, description="Per-qubit error probability.")

    @property
    def is_noiseless(self) -> bool:
        return self.p == 0.0


class MeasurementConfig(_BaseModel):
    """How energy estimates are sampled."""

    m: int = Field(10_000, ge=1, description="Shots per measurement setting.")
    error_detection: bool = Field(
        False, description="Discard samples whose Hamming weight differs from eta."
    )
    eta: Optional[int] = Field(
        None, ge=0, description="Expected Hamming weight (required with detection)."
    )
    samples_per_trajectory: int = Field(
        1,
        ge=1,
        description="Bitstrings drawn from each noisy trajectory. 1 is faithful; "
        "larger values trade bias for speed.",
    )
    max_attempt_factor: int = Field(
        100,
        ge=1,
        description="Under error detection, stop after m * factor circuit runs.",
    )


class EnergyEstimate(_BaseModel):
    """Result of one sampled energy estimate."""

    value: float = Field(..., description="Estimated energy, offset included.")
    offset: float = Field(..., description="Scalar identity contribution.")
    groups: Tuple[TermKind, ...] = Field(..., description="Measured settings.")
    samples: Tuple[int, ...] = Field(..., description="Valid samples per setting.")
    discarded: Tuple[int, ...] = Field(
        ..., description="Samples discarded by error detection, per setting."
    )
    double_occupancy: float = Field(
        ..., description="Empirical double occupancy from the onsite setting."
    )

    @property
    def total_discarded(self) -> int:
        return sum(self.discarded)

    @property
    def total_samples(self) -> int:
        return sum(self.samples)
