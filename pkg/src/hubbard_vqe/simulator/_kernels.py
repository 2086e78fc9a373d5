"""In-place gate kernels over full state vectors, compiled with numba."""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True, inline="always")
def _insert_zero(value, position):  # type: ignore[no-untyped-def]
    low = value & ((1 << position) - 1)
    return ((value >> position) << (position + 1)) | low


@njit(cache=True, nogil=True)
def apply_one_qubit(amplitudes, qubit, matrix):  # type: ignore[no-untyped-def]
    mask = 1 << qubit
    u00, u01 = matrix[0, 0], matrix[0, 1]
    u10, u11 = matrix[1, 0], matrix[1, 1]
    for k in range(amplitudes.shape[0] >> 1):
        i0 = _insert_zero(k, qubit)
        i1 = i0 | mask
        a0 = amplitudes[i0]
        a1 = amplitudes[i1]
        amplitudes[i0] = u00 * a0 + u01 * a1
        amplitudes[i1] = u10 * a0 + u11 * a1


@njit(cache=True, nogil=True)
def apply_two_qubit(amplitudes, qubit_a, qubit_b, u):  # type: ignore[no-untyped-def]
    low = min(qubit_a, qubit_b)
    high = max(qubit_a, qubit_b)
    mask_a = 1 << qubit_a
    mask_b = 1 << qubit_b
    for k in range(amplitudes.shape[0] >> 2):
        i0 = _insert_zero(_insert_zero(k, low), high)
        i1 = i0 | mask_b
        i2 = i0 | mask_a
        i3 = i2 | mask_b
        a0 = amplitudes[i0]
        a1 = amplitudes[i1]
        a2 = amplitudes[i2]
        a3 = amplitudes[i3]
        amplitudes[i0] = u[0, 0] * a0 + u[0, 1] * a1 + u[0, 2] * a2 + u[0, 3] * a3
        amplitudes[i1] = u[1, 0] * a0 + u[1, 1] * a1 + u[1, 2] * a2 + u[1, 3] * a3
        amplitudes[i2] = u[2, 0] * a0 + u[2, 1] * a1 + u[2, 2] * a2 + u[2, 3] * a3
        amplitudes[i3] = u[3, 0] * a0 + u[3, 1] * a1 + u[3, 2] * a2 + u[3, 3] * a3


def as_kernel_matrix(matrix: np.ndarray) -> np.ndarray:
    """Contiguous complex128 copy of `matrix`, as the kernels expect."""
    return np.ascontiguousarray(matrix, dtype=np.complex128)
