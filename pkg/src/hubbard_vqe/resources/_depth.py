from __future__ import annotations

from typing import TYPE_CHECKING, Tuple

from hubbard_vqe.ansatz import build_circuit, default_parameters
from hubbard_vqe.measurement import build_measurement_settings
from hubbard_vqe.simulator import two_qubit_gate_count
from hubbard_vqe.types import (
    Architecture,
    ArchitectureModel,
    DepthReport,
    FormulaValue,
    HubbardModel,
    LatticeGeometry,
)

if TYPE_CHECKING:
    from hubbard_vqe.types import AnsatzSpec

ARCHITECTURES: Tuple[ArchitectureModel, ...] = (
    ArchitectureModel(kind=Architecture.FULLY_CONNECTED),
    ArchitectureModel(kind=Architecture.NEAREST_NEIGHBOUR, layout="interlaced"),
    ArchitectureModel(kind=Architecture.NEAREST_NEIGHBOUR, layout="separated"),
    ArchitectureModel(kind=Architecture.NEAREST_NEIGHBOUR, layout="tabulated"),
    ArchitectureModel(kind=Architecture.SYCAMORE),
)

# (even n_x, odd n_x) as (slope, intercept) pairs
_LAYER_DEPTHS = {
    (Architecture.FULLY_CONNECTED, None): ((2, 1), (2, 2)),
    (Architecture.NEAREST_NEIGHBOUR, "interlaced"): ((4, 1), (4, 1)),
    (Architecture.NEAREST_NEIGHBOUR, "separated"): ((4, -1), (4, 0)),
    (Architecture.NEAREST_NEIGHBOUR, "tabulated"): ((4, 0), (4, 1)),
    (Architecture.SYCAMORE, None): ((6, 1), (6, 2)),
}


def _affine(slope: int, intercept: int) -> str:
    if intercept == 0:
        return f"{slope}n_x"
    sign = "+" if intercept > 0 else "-"
    return f"{slope}n_x{sign}{abs(intercept)}"


def ansatz_depth_per_layer(arch: ArchitectureModel, n_x: int) -> FormulaValue:
    """2-qubit depth of one EHV layer on `arch`, for the shorter grid side `n_x`.

    Examples
    --------
    >>> fc = ArchitectureModel(kind="fully-connected")
    >>> ansatz_depth_per_layer(fc, 5).value
    12
    """
    if n_x < 2:
        raise ValueError(f"Layer depth formulas need n_x >= 2, got {n_x}.")
    even, odd = _LAYER_DEPTHS[(arch.kind, arch.layout)]
    slope, intercept = even if n_x % 2 == 0 else odd
    parity = "even" if n_x % 2 == 0 else "odd"
    return FormulaValue(
        column=f"layer_depth[{arch.label}]",
        value=slope * n_x + intercept,
        provenance=f"{_affine(slope, intercept)} ({parity} n_x, {arch.label})",
    )


def _geometry(n_x: int, n_y: int) -> LatticeGeometry:
    return LatticeGeometry(n_x=n_x, n_y=n_y).oriented()


def initial_state_gate_bound(n_x: int, n_y: int) -> FormulaValue:
    """2-qubit gates of the Givens-rotation initial state, as counted by the bound."""
    geo = _geometry(n_x, n_y)
    n = geo.n_sites
    if geo.n_x % 2 == 0:
        return FormulaValue(
            column="initial_gates", value=(n - 1) * n, provenance="(N-1)N"
        )
    return FormulaValue(
        column="initial_gates",
        value=2 * (n - 1) * (n // 2),
        provenance="2(N-1)floor(N/2)",
    )


def total_gate_count(n_x: int, n_y: int, layers: int) -> FormulaValue:
    """Upper bound on the 2-qubit gates of a complete run of the EHV circuit.

    Even ``n_x``: ``(N-1)N + (2n_x+1)NL + N``; odd ``n_x``:
    ``2(N-1)⌊N/2⌋ + (2n_x+2)NL + N``, with ``N = n_x n_y`` sites and `layers` L.

    Examples
    --------
    >>> total_gate_count(2, 4, 2).value
    144
    """
    if layers < 1:
        raise ValueError(f"layers must be at least 1, got {layers}")
    geo = _geometry(n_x, n_y)
    n, nx = geo.n_sites, geo.n_x
    initial = initial_state_gate_bound(nx, geo.n_y)
    extra = 1 if nx % 2 == 0 else 2
    per_layer = 2 * nx + extra
    return FormulaValue(
        column="gate_bound",
        value=initial.value + per_layer * n * layers + n,
        provenance=f"{initial.provenance} + ({_affine(2, extra)})NL + N",
    )


def constructed_gate_count(spec: AnsatzSpec) -> FormulaValue:
    """2-qubit gates of a run as constructed.

    Sums the initial-state bound, the gates of the built ansatz circuit and the
    largest measurement basis change.
    """
    geo = spec.geometry
    initial = initial_state_gate_bound(geo.n_x, geo.n_y)
    ansatz = two_qubit_gate_count(build_circuit(spec, default_parameters(spec)))
    settings = build_measurement_settings(HubbardModel(geometry=geo))
    measurement = max(two_qubit_gate_count(s.circuit) for s in settings)
    return FormulaValue(
        column="constructed_gates",
        value=initial.value + ansatz + measurement,
        provenance=f"{initial.provenance} + {ansatz} ansatz + {measurement} "
        "measurement",
    )


def depth_report(
    n_x: int,
    n_y: int,
    layers: int,
    arch: ArchitectureModel = ARCHITECTURES[0],
) -> DepthReport:
    """Depth of initial state, `layers` EHV layers and measurement, plus gate bound.

    The initial state is counted at the Givens-rotation depth ``N - 1``; the basis
    change of a hopping setting is one layer of 2-qubit gates.
    """
    geo = _geometry(n_x, n_y)
    per_layer = ansatz_depth_per_layer(arch, geo.n_x)
    initial = FormulaValue(
        column="initial_depth", value=geo.n_sites - 1, provenance="N-1 (Givens)"
    )
    measurement = 1
    ansatz = per_layer.value * layers
    return DepthReport(
        grid=geo.label,
        layers=layers,
        architecture=arch.label,
        per_layer_depth=per_layer,
        ansatz_depth=ansatz,
        initial_state_depth=initial,
        measurement_depth=measurement,
        total_depth=ansatz + initial.value + measurement,
        gate_bound=total_gate_count(geo.n_x, geo.n_y, layers),
    )
