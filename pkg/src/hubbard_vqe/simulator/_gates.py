"""Gate library.

A gate is an immutable ``(name, params)`` pair; its unitary is built on demand and
cached. Two-qubit matrices are indexed by ``2 * bit_a + bit_b`` where ``a`` is the
first qubit the gate is applied to.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Dict, NamedTuple, Tuple

import numpy as np

_SQRT_HALF = 1.0 / np.sqrt(2.0)
_WEIGHTS = {1: (0, 1), 2: (0, 1, 1, 2)}


def _number_preserving(theta: float, phi: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array(
        [
            [1, 0, 0, 0],
            [0, c, 1j * s, 0],
            [0, 1j * s, c, 0],
            [0, 0, 0, np.exp(1j * phi)],
        ],
        dtype=np.complex128,
    )


def _fswap() -> np.ndarray:
    return np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, -1]], dtype=np.complex128
    )


def _basis_change() -> np.ndarray:
    h = _SQRT_HALF
    return np.array(
        [[1, 0, 0, 0], [0, h, h, 0], [0, h, -h, 0], [0, 0, 0, 1]], dtype=np.complex128
    )


def _cnot() -> np.ndarray:
    return np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.complex128
    )


def _zz_phase(angle: float) -> np.ndarray:
    """``exp(i * angle * Z_a Z_b)``."""
    plus, minus = np.exp(1j * angle), np.exp(-1j * angle)
    return np.diag([plus, minus, minus, plus]).astype(np.complex128)


_BUILDERS: Dict[str, Tuple[int, Callable[..., np.ndarray]]] = {
    "np": (2, _number_preserving),
    "fswap": (2, _fswap),
    "fswap_np": (2, lambda theta, phi: _fswap() @ _number_preserving(theta, phi)),
    "basis_change": (2, _basis_change),
    "basis_change_dag": (2, lambda: _basis_change().conj().T),
    "cnot": (2, _cnot),
    "zz": (2, _zz_phase),
    "x": (1, lambda: np.array([[0, 1], [1, 0]], dtype=np.complex128)),
    "y": (1, lambda: np.array([[0, -1j], [1j, 0]], dtype=np.complex128)),
    "z": (1, lambda: np.diag([1, -1]).astype(np.complex128)),
}


@lru_cache(maxsize=4096)
def _matrix(name: str, params: Tuple[float, ...]) -> np.ndarray:
    matrix = _BUILDERS[name][1](*params)
    matrix.setflags(write=False)
    return matrix


class Gate(NamedTuple):
    """A named unitary with real parameters."""

    name: str
    params: Tuple[float, ...] = ()

    @property
    def num_qubits(self) -> int:
        return _BUILDERS[self.name][0]

    @property
    def matrix(self) -> np.ndarray:
        """Read-only unitary matrix."""
        return _matrix(self.name, tuple(float(p) for p in self.params))

    @property
    def is_number_preserving(self) -> bool:
        """True if the gate never connects basis states of different weight."""
        weights = np.array(_WEIGHTS[self.num_qubits])
        crossing = weights[:, None] != weights[None, :]
        return bool(np.allclose(self.matrix[crossing], 0.0))

    def dagger(self) -> "Gate":
        """Return the inverse gate where it has a closed form."""
        if self.name == "np":
            theta, phi = self.params
            return number_preserving(-theta, -phi)
        if self.name == "zz":
            return zz_phase(-self.params[0])
        if self.name == "basis_change":
            return BASIS_CHANGE_DAG
        if self.name == "basis_change_dag":
            return BASIS_CHANGE
        if self.name in ("fswap", "cnot", "x", "y", "z"):
            return self
        raise NotImplementedError(f"No closed-form inverse for gate {self.name!r}")

    def __str__(self) -> str:
        if not self.params:
            return self.name
        return f"{self.name}({', '.join(f'{p:.6g}' for p in self.params)})"


def number_preserving(theta: float, phi: float = 0.0) -> Gate:
    """Number-preserving gate.

    Acts as the identity on ``|00>``, as ``[[cos θ, i sin θ], [i sin θ, cos θ]]`` on
    ``{|01>, |10>}`` and multiplies ``|11>`` by ``exp(i φ)``.
    """
    return Gate("np", (float(theta), float(phi)))


def hopping_gate(theta: float) -> Gate:
    """``exp(i θ (XX + YY) / 2)``."""
    return number_preserving(theta, 0.0)


def onsite_gate(theta: float) -> Gate:
    """``exp(-i θ n_a n_b)``."""
    return number_preserving(0.0, -theta)


def fswap_np(theta: float, phi: float = 0.0) -> Gate:
    """Fermionic swap applied after a number-preserving gate, fused into one gate."""
    return Gate("fswap_np", (float(theta), float(phi)))


def zz_phase(angle: float) -> Gate:
    """``exp(i * angle * Z_a Z_b)``."""
    return Gate("zz", (float(angle),))


FSWAP = Gate("fswap")
BASIS_CHANGE = Gate("basis_change")
BASIS_CHANGE_DAG = Gate("basis_change_dag")
CNOT = Gate("cnot")
PAULI_X = Gate("x")
PAULI_Y = Gate("y")
PAULI_Z = Gate("z")
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)
