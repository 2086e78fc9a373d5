from enum import Enum
from typing import Literal, Tuple

from pydantic_compat import Field, model_validator

from ._base import _BaseModel


class OptimizerKind(str, Enum):
    LBFGS = "lbfgs"
    SPSA = "spsa"
    CD = "cd"


class QuasiNewtonConfig(_BaseModel):
    """Limited-memory quasi-Newton with central finite-difference gradients."""

    step: float = Field(1e-5, gt=0, description="Finite-difference step (radians).")
    memory: int = Field(10, ge=1, description="Stored correction pairs.")
    gtol: float = Field(1e-6, gt=0, description="Projected-gradient tolerance.")
    ftol: float = Field(1e-12, ge=0, description="Relative decrease tolerance.")
    max_evaluations: int = Field(
        200_000, ge=1, description="Objective evaluation budget (gradients included)."
    )


class SpsaConfig(_BaseModel):
    """Three-stage SPSA with the standard gain sequences."""

    a: float = Field(0.15, gt=0, description="Step-size numerator.")
    c: float = Field(0.2, gt=0, description="Perturbation-size numerator.")
    alpha: float = Field(0.602, gt=0, description="Step-size decay exponent.")
    gamma: float = Field(0.101, gt=0, description="Perturbation decay exponent.")
    A: float = Field(100.0, ge=0, description="Step-size stability constant.")
    stage_ratios: Tuple[int, ...] = Field(
        (10, 3, 1), description="Relative share of the estimate budget per stage."
    )
    stage_shots: Tuple[int, ...] = Field(
        (100, 1_000, 10_000), description="Shots per setting (m) in each stage."
    )
    stage_averaging: Tuple[int, ...] = Field(
        (1, 1, 2), description="Gradient estimates averaged per step in each stage."
    )
    budget: int = Field(12_000, ge=2, description="Total energy-estimate budget.")

    @model_validator(mode="after")
    def _stages_align(self) -> "SpsaConfig":
        n = len(self.stage_ratios)
        if not n or len(self.stage_shots) != n or len(self.stage_averaging) != n:
            raise ValueError(
                "stage_ratios, stage_shots and stage_averaging must have equal, "
                "nonzero length."
            )
        if min(self.stage_ratios) <= 0 or min(self.stage_averaging) <= 0:
            raise ValueError("Stage ratios and averaging counts must be positive.")
        return self

    def gains(self, k: int) -> Tuple[float, float]:
        """Return ``(a_k, c_k)`` for iteration `k` (counted from 0 within a stage)."""
        a_k = self.a / (k + 1 + self.A) ** self.alpha
        c_k = self.c / (k + 1) ** self.gamma
        return a_k, c_k

    def stage_budgets(self) -> Tuple[int, ...]:
        """Split `budget` over the stages by `stage_ratios`, remainder to the first."""
        total = sum(self.stage_ratios)
        shares = [self.budget * r // total for r in self.stage_ratios]
        shares[0] += self.budget - sum(shares)
        return tuple(shares)


class CdConfig(_BaseModel):
    """Coordinate descent by trigonometric interpolation."""

    budget: int = Field(1_200, ge=1, description="Total energy-estimate budget.")
    m: int = Field(10_000, ge=1, description="Shots per setting at each node.")
    order: Literal["cyclic", "random"] = Field(
        "cyclic", description="Parameter visiting order within a sweep."
    )
    root_tolerance: float = Field(
        1e-6, gt=0, description="Accept derivative roots with |1 - |z|| below this."
    )
    max_sweeps: int = Field(10_000, ge=1, description="Upper bound on sweeps.")
