"""Vectorized bit utilities over arrays of basis-state indices."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    import numpy.typing as npt

_POPCOUNT8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)


def basis_indices(n_qubits: int) -> np.ndarray:
    """All basis indices ``0 .. 2**n_qubits - 1`` as int64."""
    return np.arange(1 << n_qubits, dtype=np.int64)


def popcount(values: npt.ArrayLike) -> np.ndarray:
    """Hamming weight of each (non-negative, < 2**63) integer."""
    arr = np.ascontiguousarray(values, dtype=np.int64)
    as_bytes = arr.reshape(-1, 1).view(np.uint8)
    return _POPCOUNT8[as_bytes].sum(axis=1).reshape(arr.shape)


def parity_sign(values: npt.ArrayLike) -> np.ndarray:
    """``(-1) ** popcount(values)`` as float64."""
    return 1.0 - 2.0 * (popcount(values) & 1)


def bit(values: np.ndarray, position: int) -> np.ndarray:
    """Bit `position` of each value, as int64 0/1."""
    return (values >> position) & 1


def mask_of(qubits: "range | tuple[int, ...] | list[int]") -> int:
    """Bitmask with the given qubit positions set."""
    out = 0
    for q in qubits:
        out |= 1 << q
    return out


def format_bitstring(index: int, n_qubits: int) -> str:
    """Render a basis index as a bitstring, qubit 0 first."""
    return "".join(str((index >> q) & 1) for q in range(n_qubits))
