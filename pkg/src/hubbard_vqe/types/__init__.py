"""Value types shared across the package."""

from typing import TYPE_CHECKING

from ._ansatz import (
    TERM_ORDERINGS,
    AnsatzKind,
    AnsatzSpec,
    InitialStateKind,
    InitialStateSpec,
    Placement,
    SwapNetworkSchedule,
    SwapRepetition,
    term_ordering,
)
from ._errors import (
    AllSamplesDiscardedError,
    DegenerateFillingError,
    ParameterCountError,
    SectorTooLargeError,
    UnsupportedOrderingError,
)
from ._experiment import (
    Experiment,
    ExperimentConfig,
    ExperimentMode,
    ExperimentReport,
    RunRecord,
    TraceEntry,
)
from ._hamiltonian import (
    FermionicTerm,
    HubbardModel,
    PauliTerm,
    QubitHamiltonian,
    TermGroup,
    TermKind,
)
from ._lattice import DOWN, UP, LatticeGeometry, OccupationSector
from ._measurement import EnergyEstimate, MeasurementConfig, NoiseModel
from ._optimize import CdConfig, OptimizerKind, QuasiNewtonConfig, SpsaConfig
from ._resources import (
    Architecture,
    ArchitectureModel,
    DepthReport,
    FftDepthRow,
    FormulaValue,
)

if TYPE_CHECKING:
    from typing import Callable, TypeAlias

    DisposeCallable: TypeAlias = Callable[[], None]

__all__ = [
    "DOWN",
    "TERM_ORDERINGS",
    "UP",
    "AllSamplesDiscardedError",
    "AnsatzKind",
    "AnsatzSpec",
    "Architecture",
    "ArchitectureModel",
    "CdConfig",
    "DegenerateFillingError",
    "DepthReport",
    "EnergyEstimate",
    "Experiment",
    "ExperimentConfig",
    "ExperimentMode",
    "ExperimentReport",
    "FermionicTerm",
    "FftDepthRow",
    "FormulaValue",
    "HubbardModel",
    "InitialStateKind",
    "InitialStateSpec",
    "LatticeGeometry",
    "MeasurementConfig",
    "NoiseModel",
    "OccupationSector",
    "OptimizerKind",
    "ParameterCountError",
    "PauliTerm",
    "Placement",
    "QuasiNewtonConfig",
    "QubitHamiltonian",
    "RunRecord",
    "SectorTooLargeError",
    "SpsaConfig",
    "SwapNetworkSchedule",
    "SwapRepetition",
    "TermGroup",
    "TermKind",
    "TraceEntry",
    "UnsupportedOrderingError",
    "term_ordering",
]
