"""One layer of the HV, EHV and NP circuits."""

from __future__ import annotations

from typing import TYPE_CHECKING, List, Optional, Sequence, Set, Tuple

import numpy as np

from hubbard_vqe.model import group_commuting_terms
from hubbard_vqe.simulator import (
    BASIS_CHANGE,
    BASIS_CHANGE_DAG,
    CNOT,
    FSWAP,
    Circuit,
    Gate,
    Operation,
    fswap_np,
    hopping_gate,
    moment,
    number_preserving,
    onsite_gate,
    pack_moments,
    zz_phase,
)
from hubbard_vqe.types import (
    DOWN,
    UP,
    AnsatzKind,
    HubbardModel,
    ParameterCountError,
    TermKind,
)

from ._swap_network import (
    boundaries,
    boundary_qubits,
    layer_rows,
    row_pair_qubits,
    swap_network,
)

if TYPE_CHECKING:
    from hubbard_vqe.simulator import Moment
    from hubbard_vqe.types import AnsatzSpec, LatticeGeometry

# eigenvalue spread of the generators: 1/2 (XX + YY) has {-1, 0, 1}, n n has {0, 1}
HOPPING_DEGREE = 2
ONSITE_DEGREE = 1


def layer_parameter_count(spec: AnsatzSpec) -> int:
    """Number of parameters in one layer."""
    if spec.kind is AnsatzKind.NP:
        geo = spec.geometry
        return 10 * geo.n_sites - 4 * geo.n_x - 4 * geo.n_y
    return len(spec.ordering)


class ParameterCursor:
    """Hands out the gates of one layer and records which parameters they use.

    HV and EHV share one parameter per group; NP gives every gate its own ``(θ, φ)``
    pair, allocated in creation order.

    Parameters
    ----------
    spec : AnsatzSpec
        Ansatz the layer belongs to.
    params : Sequence[float], optional
        Layer parameters; zeros when only the parameter bookkeeping is needed.
    """

    def __init__(self, spec: AnsatzSpec, params: Optional[Sequence[float]] = None):
        count = layer_parameter_count(spec)
        values = np.zeros(count) if params is None else np.asarray(params, float)
        if values.shape != (count,):
            raise ParameterCountError(count, values.size, "layer parameters")
        self._values = values
        self._per_gate = spec.kind is AnsatzKind.NP
        self._group_index = {kind: i for i, kind in enumerate(spec.ordering)}
        self._next = 0
        self.uses: List[Tuple[int, int]] = []

    def _group(self, kind: TermKind, degree: int) -> float:
        index = self._group_index[kind]
        self.uses.append((index, degree))
        return float(self._values[index])

    def _pair(self) -> Tuple[float, float]:
        i = self._next
        self._next += 2
        self.uses.extend(((i, HOPPING_DEGREE), (i + 1, ONSITE_DEGREE)))
        return float(self._values[i]), float(self._values[i + 1])

    def onsite(self) -> Gate:
        if self._per_gate:
            return number_preserving(*self._pair())
        return onsite_gate(self._group(TermKind.ONSITE, ONSITE_DEGREE))

    def hopping(self, kind: TermKind, fused: bool = False) -> Gate:
        """Hopping gate of group `kind`, fused with a fermionic swap if requested."""
        if self._per_gate:
            theta, phi = self._pair()
        else:
            theta, phi = self._group(kind, HOPPING_DEGREE), 0.0
        return fswap_np(theta, phi) if fused else number_preserving(theta, phi)

    def angle(self, kind: TermKind) -> float:
        """Shared angle of group `kind`, for evolutions built from several gates."""
        return self._group(kind, HOPPING_DEGREE)

    def degrees(self) -> Tuple[int, ...]:
        """Per-parameter degree: the generator degree summed over the gates using it."""
        out = [0] * self._values.size
        for index, degree in self.uses:
            out[index] += degree
        return tuple(out)


def onsite_pairs(geometry: LatticeGeometry) -> List[Tuple[int, int]]:
    return [
        (geometry.mode_index(x, y, UP), geometry.mode_index(x, y, DOWN))
        for x, y in geometry.sites()
    ]


def _vertical_ops(
    geometry: LatticeGeometry,
    cursor: ParameterCursor,
    kind: TermKind,
    present: Set[TermKind],
) -> List[Operation]:
    if kind not in present:
        return []
    parity = 0 if kind is TermKind.V1 else 1
    return [
        Operation(cursor.hopping(kind), boundary_qubits(geometry, y, s))
        for y, s in boundaries(geometry, parity)
    ]


def _network_layer(spec: AnsatzSpec, cursor: ParameterCursor) -> List[Moment]:
    geo = spec.geometry
    present = set(spec.ordering)
    moments = [
        moment(
            [Operation(cursor.onsite(), pair) for pair in onsite_pairs(geo)], "onsite"
        )
    ]
    if geo.n_x == 1:
        for kind in spec.ordering[1:]:
            ops = _vertical_ops(geo, cursor, kind, present)
            moments.append(moment(ops, kind.value))
        return moments

    schedule = swap_network(geo)
    odd = geo.n_x % 2 == 1
    last = len(schedule) - 1
    rows = layer_rows(geo)
    deferred: List[Operation] = []
    for i in range(len(schedule)):
        fuse = TermKind.H1 if i == 0 and TermKind.H1 in present else None
        ops = _swap_ops(geo, cursor, rows, schedule.left_pairs, fuse) + deferred
        moments.append(moment(ops, f"U_L{i + 1}"))

        fuse = TermKind.H2 if i == last and TermKind.H2 in present else None
        ops = _swap_ops(geo, cursor, rows, schedule.right_pairs, fuse)
        v1 = _vertical_ops(geo, cursor, TermKind.V1, present)
        v2 = _vertical_ops(geo, cursor, TermKind.V2, present)
        # the right end moves under U_R when n_x is odd, so V1 waits for the next U_L
        deferred = v1 if odd else []
        ops += v2 if odd else v1 + v2
        if ops:
            moments.append(moment(ops, f"U_R{i + 1}"))
    if deferred:
        moments.append(moment(deferred, "V1"))
    return moments


def _swap_ops(
    geometry: LatticeGeometry,
    cursor: ParameterCursor,
    rows: Sequence[Tuple[int, int]],
    pairs: Sequence[Tuple[int, int]],
    fuse: Optional[TermKind],
) -> List[Operation]:
    ops = []
    for y, s in rows:
        for pair in pairs:
            gate = FSWAP if fuse is None else cursor.hopping(fuse, fused=True)
            ops.append(Operation(gate, row_pair_qubits(geometry, y, s, pair)))
    return ops


def string_evolution(i: int, j: int, theta: float) -> List[Operation]:
    """``exp(i θ (X_i X_j + Y_i Y_j)/2 Z_{i+1} ... Z_{j-1})`` from 2-qubit gates.

    A CNOT ladder gathers the parity of the string on qubit ``j - 1``; the pair is
    rotated into the basis where the hopping is ``(Z_i - Z_j)/2``, two ZZ rotations
    against the parity qubit follow, and everything is undone.
    """
    if j == i + 1:
        return [Operation(hopping_gate(theta), (i, j))]
    string = list(range(i + 1, j))
    parity = string[-1]
    ladder = [Operation(CNOT, (a, b)) for a, b in zip(string, string[1:])]
    core = [
        Operation(BASIS_CHANGE, (i, j)),
        Operation(zz_phase(theta / 2), (i, parity)),
        Operation(zz_phase(-theta / 2), (j, parity)),
        Operation(BASIS_CHANGE_DAG, (i, j)),
    ]
    return ladder + core + ladder[::-1]


def _hv_layer(spec: AnsatzSpec, cursor: ParameterCursor) -> Circuit:
    geo = spec.geometry
    groups = {g.kind: g for g in group_commuting_terms(HubbardModel(geometry=geo))}
    ops: List[Operation] = []
    for kind in spec.ordering:
        group = groups[kind]
        for i, j in group.pairs:
            if kind is TermKind.ONSITE:
                ops.append(Operation(cursor.onsite(), (i, j)))
            elif kind.is_vertical:
                ops.extend(string_evolution(i, j, cursor.angle(kind)))
            else:
                ops.append(Operation(cursor.hopping(kind), (i, j)))
    return pack_moments(geo.n_modes, ops)


def _build(spec: AnsatzSpec, cursor: ParameterCursor) -> Circuit:
    if spec.kind is AnsatzKind.HV:
        return _hv_layer(spec, cursor)
    return Circuit(spec.geometry.n_modes, _network_layer(spec, cursor))


def build_layer(spec: AnsatzSpec, layer_params: Sequence[float]) -> Circuit:
    """Circuit of one ansatz layer.

    EHV starts with the onsite gates, then runs the column swap network with the H1
    hoppings fused into the first ``U_L``, the H2 hoppings into the last ``U_R``, and
    the vertical hoppings applied wherever the network makes them JW-adjacent. NP uses
    the same schedule with an independent ``(θ, φ)`` for every gate. HV evolves each
    group in turn, without swaps.

    Raises
    ------
    ParameterCountError
        If `layer_params` does not match `layer_parameter_count`.
    """
    return _build(spec, ParameterCursor(spec, layer_params))


def layer_degrees(spec: AnsatzSpec) -> Tuple[int, ...]:
    """Trigonometric degree of the energy in each parameter of one layer."""
    cursor = ParameterCursor(spec)
    _build(spec, cursor)
    return cursor.degrees()

