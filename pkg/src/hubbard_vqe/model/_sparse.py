from __future__ import annotations

from functools import lru_cache
from typing import TYPE_CHECKING, Dict, List

import numpy as np
from scipy import sparse

from hubbard_vqe.simulator._bits import basis_indices, parity_sign

if TYPE_CHECKING:
    from hubbard_vqe.types import QubitHamiltonian

_PHASES = (1.0, 1j, -1.0, -1j)


@lru_cache(maxsize=8)
def qubit_hamiltonian_matrix(hamiltonian: QubitHamiltonian) -> sparse.csr_matrix:
    """Full ``2^n x 2^n`` CSR matrix of a qubit Hamiltonian, offset on the diagonal.

    A Pauli string maps ``|b>`` to ``i^{#Y} (-1)^{|b & z|} |b ^ x>``, where ``x`` marks
    the X/Y factors and ``z`` the Y/Z factors; terms sharing ``x`` share a sparsity
    pattern and are summed before assembly.
    """
    n = hamiltonian.n_qubits
    dim = 1 << n
    cols = basis_indices(n)
    by_flip: Dict[int, np.ndarray] = {0: np.full(dim, hamiltonian.offset, complex)}
    for term in hamiltonian.terms:
        values = term.coefficient * _PHASES[term.y_count % 4] * parity_sign(
            cols & term.z_mask
        )
        if term.x_mask in by_flip:
            by_flip[term.x_mask] = by_flip[term.x_mask] + values
        else:
            by_flip[term.x_mask] = values.astype(complex)

    rows: List[np.ndarray] = []
    data: List[np.ndarray] = []
    col_parts: List[np.ndarray] = []
    for x_mask, values in by_flip.items():
        keep = np.abs(values) > 1e-15
        col_parts.append(cols[keep])
        rows.append(cols[keep] ^ x_mask)
        data.append(values[keep])
    matrix = sparse.coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(col_parts))),
        shape=(dim, dim),
    )
    return matrix.tocsr()
