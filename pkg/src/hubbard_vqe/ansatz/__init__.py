"""HV, EHV and NP ansatz circuits, their swap network and initial states."""

from ._circuits import (
    AnsatzCircuit,
    build_circuit,
    default_parameters,
    full_circuit,
    load_parameters,
    parameter_count,
    parameter_degrees,
)
from ._initial import initial_state, place_fermions, spread_sites
from ._layers import (
    HOPPING_DEGREE,
    ONSITE_DEGREE,
    ParameterCursor,
    build_layer,
    layer_degrees,
    layer_parameter_count,
    onsite_pairs,
    string_evolution,
)
from ._swap_network import boundary_qubits, column_pairs, swap_network

__all__ = [
    "HOPPING_DEGREE",
    "ONSITE_DEGREE",
    "AnsatzCircuit",
    "ParameterCursor",
    "boundary_qubits",
    "build_circuit",
    "build_layer",
    "column_pairs",
    "default_parameters",
    "full_circuit",
    "initial_state",
    "layer_degrees",
    "layer_parameter_count",
    "load_parameters",
    "onsite_pairs",
    "parameter_count",
    "parameter_degrees",
    "place_fermions",
    "spread_sites",
    "string_evolution",
    "swap_network",
]
