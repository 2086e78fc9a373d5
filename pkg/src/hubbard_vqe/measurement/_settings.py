from __future__ import annotations

from typing import TYPE_CHECKING, List, Tuple

import numpy as np

from hubbard_vqe.model import group_commuting_terms
from hubbard_vqe.simulator import (
    BASIS_CHANGE,
    Circuit,
    Operation,
    StateVector,
    basis_indices,
    mask_of,
    moment,
    parity_sign,
    run_circuit,
)
from hubbard_vqe.types import TermKind

if TYPE_CHECKING:
    import numpy.typing as npt

    from hubbard_vqe.types import HubbardModel, TermGroup


class MeasurementSetting:
    """One computational-basis measurement covering a commuting group.

    Hopping groups append a basis change to every pair, after which the pair's hopping
    operator ``(XX + YY)/2`` reads as ``b_j - b_i`` on the measured bits ``b``. Vertical
    pairs multiply that by the parity of the bits strictly between them; the basis
    changes of nested pairs preserve this parity because they commute with ``Z Z``.
    The onsite group is read directly from the occupation bits.

    Parameters
    ----------
    group : TermGroup
        Terms measured by this setting.
    coefficient : float
        Coupling of every term of the group: ``-t`` for hopping, ``U`` for onsite.
    n_qubits : int
        Register width.
    """

    __slots__ = ("_circuit", "_first", "_second", "_strings", "coefficient", "group")

    def __init__(self, group: TermGroup, coefficient: float, n_qubits: int) -> None:
        self.group = group
        self.coefficient = float(coefficient)
        pairs = np.array(group.pairs, dtype=np.int64).reshape(-1, 2)
        self._first = pairs[:, 0]
        self._second = pairs[:, 1]
        self._strings = np.array(
            [mask_of(group.zstring(p)) for p in group.pairs], dtype=np.int64
        )
        if group.kind.is_hopping:
            ops = [Operation(BASIS_CHANGE, tuple(p)) for p in group.pairs]
            label = f"measure {group.kind.value}"
            self._circuit = Circuit(n_qubits, [moment(ops, label)])
        else:
            self._circuit = Circuit(n_qubits)

    @property
    def kind(self) -> TermKind:
        return self.group.kind

    @property
    def circuit(self) -> Circuit:
        """Gates appended to the state before measuring (empty for onsite)."""
        return self._circuit

    @property
    def n_qubits(self) -> int:
        return self._circuit.n_qubits

    def _bits(self, samples: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        s = np.asarray(samples, dtype=np.int64)[:, None]
        return (s >> self._first) & 1, (s >> self._second) & 1

    def readout(self, samples: npt.ArrayLike) -> np.ndarray:
        """Per-sample value of the group's Pauli terms (identity offset excluded)."""
        samples = np.asarray(samples, dtype=np.int64)
        b_i, b_j = self._bits(samples)
        if self.kind is TermKind.ONSITE:
            # U n_i n_j = U/4 (Z_i Z_j - Z_i - Z_j) + U/4
            values = b_i * b_j - 0.25
        else:
            values = (b_j - b_i).astype(float)
            if self.kind.is_vertical:
                values = values * parity_sign(samples[:, None] & self._strings)
        return self.coefficient * values.sum(axis=1)

    def double_occupancy(self, samples: npt.ArrayLike) -> np.ndarray:
        """Per-sample number of doubly occupied sites (onsite setting only)."""
        if self.kind is not TermKind.ONSITE:
            raise ValueError(
                "Double occupancy is read from the onsite setting, not "
                f"{self.kind.value}."
            )
        b_i, b_j = self._bits(np.asarray(samples, dtype=np.int64))
        return (b_i * b_j).sum(axis=1).astype(float)

    def rotate(self, state: StateVector) -> StateVector:
        """The state as it is measured: `state` followed by the basis change."""
        return run_circuit(state, self._circuit)

    def exact(self, state: StateVector) -> float:
        """Expectation of the group's Pauli terms, from the full distribution."""
        probs = self.rotate(state).probabilities()
        return float(probs @ self.readout(basis_indices(self.n_qubits)))

    def __repr__(self) -> str:
        return (
            f"<MeasurementSetting {self.kind.value}: {len(self.group)} pairs, "
            f"coefficient {self.coefficient:g}>"
        )


def build_measurement_settings(model: HubbardModel) -> List[MeasurementSetting]:
    """One setting per nonempty commuting group of `model`.

    Examples
    --------
    >>> len(build_measurement_settings(HubbardModel.from_grid("4x4")))
    5
    """
    return [
        MeasurementSetting(
            group,
            model.U if group.kind is TermKind.ONSITE else -model.t,
            model.n_qubits,
        )
        for group in group_commuting_terms(model)
    ]
