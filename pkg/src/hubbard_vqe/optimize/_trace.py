from __future__ import annotations

from typing import TYPE_CHECKING, Iterator, List, NamedTuple, Optional, Tuple

import numpy as np
from psygnal import Signal

from hubbard_vqe.types import TraceEntry

if TYPE_CHECKING:
    import numpy.typing as npt


class SpendLedger:
    """Cumulative measurement spend of an objective.

    An energy estimate is ``m`` energy measurements; an energy measurement is one
    circuit evaluation per measurement setting. Samples rejected by error detection
    are counted in `discarded` and not in `circuit_evaluations`.
    """

    __slots__ = ("circuit_evaluations", "discarded", "energy_measurements", "estimates")

    def __init__(self) -> None:
        self.estimates = 0
        self.energy_measurements = 0
        self.circuit_evaluations = 0
        self.discarded = 0

    def charge(
        self,
        estimates: int = 1,
        energy_measurements: int = 0,
        circuit_evaluations: int = 0,
        discarded: int = 0,
    ) -> None:
        if min(estimates, energy_measurements, circuit_evaluations, discarded) < 0:
            raise ValueError("Spend can only grow.")
        self.estimates += estimates
        self.energy_measurements += energy_measurements
        self.circuit_evaluations += circuit_evaluations
        self.discarded += discarded

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (
            self.estimates,
            self.energy_measurements,
            self.circuit_evaluations,
            self.discarded,
        )

    def __repr__(self) -> str:
        return (
            f"SpendLedger(estimates={self.estimates}, "
            f"energy_measurements={self.energy_measurements}, "
            f"circuit_evaluations={self.circuit_evaluations}, "
            f"discarded={self.discarded})"
        )


class TracePoint(NamedTuple):
    iteration: int
    stage: int
    value: float
    estimates: int
    energy_measurements: int
    circuit_evaluations: int
    discarded: int
    parameters: np.ndarray


class OptimizerTrace:
    """Append-only record of an optimization run.

    Each point stores the parameters after an iteration, the objective value the
    optimizer saw there and the cumulative spend of the objective at that moment.
    """

    appended = Signal(object)
    stage_started = Signal(int)

    def __init__(self, optimizer: str) -> None:
        self.optimizer = optimizer
        self.status = "running"
        self._points: List[TracePoint] = []
        self._stage = 0

    @property
    def stage(self) -> int:
        return self._stage

    def start_stage(self, stage: int) -> None:
        """Mark the start of a new optimizer stage (restart with new settings)."""
        self._stage = stage
        self.stage_started.emit(stage)

    def record(
        self, parameters: npt.ArrayLike, value: float, ledger: SpendLedger
    ) -> TracePoint:
        """Append the state after one iteration."""
        estimates, measurements, evaluations, discarded = ledger.as_tuple()
        if self._points:
            last = self._points[-1]
            if (
                estimates < last.estimates
                or measurements < last.energy_measurements
                or evaluations < last.circuit_evaluations
            ):
                raise ValueError("Cumulative spend decreased between trace points.")
        point = TracePoint(
            iteration=len(self._points),
            stage=self._stage,
            value=float(value),
            estimates=estimates,
            energy_measurements=measurements,
            circuit_evaluations=evaluations,
            discarded=discarded,
            parameters=np.array(parameters, dtype=float),
        )
        self._points.append(point)
        self.appended.emit(point)
        return point

    def finish(self, status: str) -> "OptimizerTrace":
        self.status = status
        return self

    @property
    def points(self) -> Tuple[TracePoint, ...]:
        return tuple(self._points)

    @property
    def final(self) -> Optional[TracePoint]:
        return self._points[-1] if self._points else None

    @property
    def best(self) -> Optional[TracePoint]:
        """Point with the lowest recorded objective value."""
        return min(self._points, key=lambda p: p.value) if self._points else None

    @property
    def parameters(self) -> np.ndarray:
        """Final parameters of the run."""
        if not self._points:
            raise ValueError("The trace is empty.")
        return self._points[-1].parameters

    def to_entries(self) -> Tuple[TraceEntry, ...]:
        """Serializable form of the trace."""
        return tuple(
            TraceEntry(
                iteration=p.iteration,
                stage=p.stage,
                value=p.value,
                energy_measurements=p.energy_measurements,
                circuit_evaluations=p.circuit_evaluations,
                discarded=p.discarded,
                parameters=tuple(float(v) for v in p.parameters),
            )
            for p in self._points
        )

    def __len__(self) -> int:
        return len(self._points)

    def __iter__(self) -> Iterator[TracePoint]:
        return iter(self._points)

    def __repr__(self) -> str:
        return f"<OptimizerTrace {self.optimizer}: {len(self)} points, {self.status}>"
