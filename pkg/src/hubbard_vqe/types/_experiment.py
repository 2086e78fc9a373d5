import hashlib
import json
from enum import Enum
from pathlib import Path
from typing import (
    TYPE_CHECKING,
    Any,
    Callable,
    Dict,
    Generic,
    Literal,
    Optional,
    Tuple,
    TypeVar,
    Union,
)

from pydantic_compat import Field, field_validator

from ._ansatz import AnsatzKind, Placement
from ._base import _BaseModel
from ._lattice import LatticeGeometry
from ._optimize import CdConfig, OptimizerKind, QuasiNewtonConfig, SpsaConfig
from ._utils import _validate_python_name, parse_grid

# maintain runtime compatibility with older typing_extensions
if TYPE_CHECKING:
    from typing_extensions import ParamSpec

    P = ParamSpec("P")
else:
    try:
        from typing_extensions import ParamSpec

        P = ParamSpec("P")
    except ImportError:
        P = TypeVar("P")
R = TypeVar("R")

Cell = Union[str, int, float, bool, None]

# fields that change where or how fast results are produced, not what they are
_UNHASHED_FIELDS = {"out", "workers"}


class ExperimentMode(str, Enum):
    """Experiment suites, one per CLI verb."""

    REPRESENT = "represent"
    REALISTIC = "realistic"
    NOISY = "noisy"
    USWEEP = "usweep"
    HALFFILL = "halffill"
    RESOURCES = "resources"
    STATERROR = "staterror"


_DEFAULT_RUNS = {ExperimentMode.REALISTIC: 5, ExperimentMode.NOISY: 3}


class ExperimentConfig(_BaseModel):
    """Everything needed to reproduce one experiment.

    Loaded from a JSON document (`from_file`) and/or command-line flags. Defaults
    follow the reference setup: t=1, U=2, parameters 1/L, tabulated occupations.
    """

    mode: ExperimentMode = Field(ExperimentMode.REPRESENT, description="Suite to run.")
    grid: str = Field("2x2", description="Grid as 'AxB'.")
    t: float = Field(1.0, description="Tunnelling amplitude.")
    U: float = Field(2.0, description="Onsite Coulomb potential.")
    ansatz: AnsatzKind = Field(AnsatzKind.EHV, description="Ansatz family.")
    layers: int = Field(1, ge=1, description="Layers, or first depth of a sweep.")
    max_layers: Optional[int] = Field(
        None, ge=1, description="(Optional) Last depth of a layer sweep."
    )
    target_fidelity: float = Field(
        0.99, gt=0, le=1, description="Fidelity that ends a layer sweep."
    )
    optimizer: OptimizerKind = Field(OptimizerKind.LBFGS, description="Optimizer.")
    lbfgs: QuasiNewtonConfig = Field(default_factory=QuasiNewtonConfig)
    spsa: SpsaConfig = Field(default_factory=SpsaConfig)
    cd: CdConfig = Field(default_factory=CdConfig)
    m: Optional[int] = Field(
        None,
        ge=1,
        description="(Optional) Shots per setting; overrides the coordinate-descent "
        "node shots and the final stage of SPSA.",
    )
    noise: float = Field(0.0, ge=0, le=1, description="Depolarizing probability p.")
    error_detection: Optional[Literal["on", "off", "both"]] = Field(
        None,
        description="(Optional) Hamming-weight error detection; noisy runs default "
        "to both settings, every other mode to off.",
    )
    samples_per_trajectory: int = Field(1, ge=1)
    random_init: bool = Field(
        False, description="Draw initial parameters uniformly in [0, 2pi/100]."
    )
    init_file: Optional[Path] = Field(
        None, description="(Optional) Stored parameter vector seeding the run."
    )
    placement: Optional[Placement] = Field(
        None,
        description="(Optional) Start from a computational basis state placed by "
        "this rule instead of the non-interacting ground state.",
    )
    eta: Optional[int] = Field(
        None, ge=0, description="(Optional) Fermion number overriding the table."
    )
    epsilon: Optional[float] = Field(
        None, description="(Optional) Hopping perturbation for degenerate fillings."
    )
    u_values: Tuple[float, ...] = Field(
        (0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0),
        description="Coulomb values of a U sweep.",
    )
    m_values: Tuple[int, ...] = Field(
        (100, 1_000, 10_000, 100_000),
        description="Shot counts of the statistical-error experiment.",
    )
    estimates_per_m: int = Field(
        1_000, ge=2, description="Repeated estimates per shot count."
    )
    fft_sizes: Tuple[int, ...] = Field(
        (2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12),
        description="Square grid sizes of the FFT depth comparison.",
    )
    t_f: Optional[str] = Field(
        None,
        description="(Optional) 'module:function' giving the 1D FFT depth T_F(n); "
        "defaults to n - 1.",
    )
    oracle_cap: int = Field(2_000_000, ge=1, description="Largest sector dimension.")
    seed: int = Field(0, ge=0, description="Master seed.")
    runs: Optional[int] = Field(
        None,
        ge=1,
        description="(Optional) Independent runs per setting; 5 for realistic, 3 for "
        "noisy and 1 for every other mode by default.",
    )
    workers: int = Field(1, ge=1, description="Runs executed concurrently.")
    out: Optional[Path] = Field(None, description="(Optional) Output directory.")

    @field_validator("grid")
    @classmethod
    def _valid_grid(cls, grid: str) -> str:
        n_x, n_y = parse_grid(grid)
        if n_x * n_y < 2:
            raise ValueError(f"Grid {grid!r} needs at least two sites.")
        return f"{n_x}x{n_y}"

    @field_validator("init_file")
    @classmethod
    def _file_exists(cls, path: Optional[Path]) -> Optional[Path]:
        if path is not None and not Path(path).is_file():
            raise ValueError(f"Parameter file {str(path)!r} does not exist.")
        return path

    @field_validator("t_f")
    @classmethod
    def _valid_t_f(cls, name: Optional[str]) -> Optional[str]:
        return None if name is None else _validate_python_name(name)

    @classmethod
    def from_file(cls, path: Union[str, Path], **overrides: Any) -> "ExperimentConfig":
        """Load a JSON config document, applying `overrides` on top."""
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        if not isinstance(data, dict):
            raise TypeError(f"Config file {str(path)!r} must hold a JSON object.")
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**data)

    @property
    def geometry(self) -> LatticeGeometry:
        return LatticeGeometry.parse(self.grid)

    @property
    def run_count(self) -> int:
        return self.runs if self.runs is not None else _DEFAULT_RUNS.get(self.mode, 1)

    @property
    def detection_settings(self) -> Tuple[bool, ...]:
        """Error-detection settings to run, in order."""
        setting = self.error_detection
        if setting is None:
            setting = "both" if self.mode is ExperimentMode.NOISY else "off"
        return {"on": (True,), "off": (False,), "both": (True, False)}[setting]

    @property
    def config_hash(self) -> str:
        """Stable digest of every field that affects results."""
        payload = self.model_dump(mode="json", exclude=_UNHASHED_FIELDS)
        text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    def replace(self, **changes: Any) -> "ExperimentConfig":
        """Return a validated copy with `changes` applied."""
        return ExperimentConfig(**{**self.model_dump(), **changes})


class TraceEntry(_BaseModel):
    """Serialized optimizer trace record."""

    iteration: int
    stage: int
    value: float
    energy_measurements: int
    circuit_evaluations: int
    discarded: int
    parameters: Tuple[float, ...]


class RunRecord(_BaseModel):
    """Outcome of one optimization run."""

    config_hash: str = Field(..., description="Hash of the producing config.")
    mode: str
    grid: str
    ansatz: str
    layers: int
    optimizer: str
    seed: int = Field(..., description="Master seed of the experiment.")
    run: int = Field(0, ge=0, description="Index of the run under the seed.")
    U: float
    noise: float = 0.0
    error_detection: bool = False
    extrapolated: bool = Field(False, description="Term ordering was extrapolated.")
    status: str = Field(..., description="Optimizer termination status.")
    parameters: Tuple[float, ...] = Field(..., description="Final parameters.")
    trace: Tuple[TraceEntry, ...] = Field(..., description="Per-iteration trace.")
    exact_energy: float = Field(..., description="Ground-state energy in the sector.")
    final_energy: float = Field(..., description="Exact energy of the final state.")
    final_fidelity: float = Field(..., description="Overlap with the ground state.")
    double_occupancy_error: float = Field(
        ..., description="|<D>_final - <D>_ground| summed over sites."
    )
    estimates: int = Field(..., description="Energy estimates spent.")
    measurements_used: int = Field(..., description="Energy measurements spent.")
    circuit_evaluations: int = Field(..., description="Valid circuit evaluations.")
    discards: int = Field(..., description="Samples discarded by error detection.")
    wall_clock: float = Field(..., description="Seconds spent in the run.")

    @property
    def final_infidelity(self) -> float:
        return 1.0 - self.final_fidelity

    @property
    def final_energy_error(self) -> float:
        return abs(self.final_energy - self.exact_energy)

    def summary_row(self) -> Dict[str, Cell]:
        """Flat row for the CSV summary."""
        return {
            "config_hash": self.config_hash,
            "grid": self.grid,
            "ansatz": self.ansatz,
            "depth": self.layers,
            "optimizer": self.optimizer,
            "seed": self.seed,
            "run": self.run,
            "U": self.U,
            "noise": self.noise,
            "error_detection": self.error_detection,
            "final_infidelity": self.final_infidelity,
            "final_energy_error": self.final_energy_error,
            "measurements_used": self.measurements_used,
            "discards": self.discards,
            "status": self.status,
        }


class ExperimentReport(_BaseModel):
    """Everything an experiment produced: run records and derived tables."""

    mode: ExperimentMode
    config: ExperimentConfig
    records: Tuple[RunRecord, ...] = ()
    tables: Dict[str, Tuple[Dict[str, Cell], ...]] = Field(default_factory=dict)

    @property
    def config_hash(self) -> str:
        return self.config.config_hash


class Experiment(_BaseModel, Generic[P, R]):
    """A runnable experiment suite, registered under its CLI verb."""

    id: str = Field(..., description="Identifier, also the CLI verb.")
    title: str = Field(..., description="One-line description shown in help.")
    callback: Union[Callable[P, R], str] = Field(
        ...,
        description="Function running the experiment. If a string is provided, it "
        "must be a fully qualified name to a callable python object, of the form "
        "`{obj.__module__}:{obj.__qualname__}`; it is imported on first use.",
    )

    @field_validator("callback")
    def _validate_callback(callback: object) -> Union[Callable, str]:
        """Assert that `callback` is a callable or valid fully qualified name."""
        if callable(callback):
            return callback
        elif isinstance(callback, str):
            return _validate_python_name(str(callback))
        raise TypeError("callback must be a callable or a string")  # pragma: no cover
