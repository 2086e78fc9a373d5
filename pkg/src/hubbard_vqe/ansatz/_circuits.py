from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import TYPE_CHECKING, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from hubbard_vqe.simulator import Circuit, StateVector, make_rng
from hubbard_vqe.types import HubbardModel, ParameterCountError

from ._initial import initial_state
from ._layers import build_layer, layer_degrees, layer_parameter_count

if TYPE_CHECKING:
    from hubbard_vqe.simulator._state import SeedLike
    from hubbard_vqe.types import AnsatzSpec, InitialStateSpec

logger = logging.getLogger(__name__)

RANDOM_INIT_SCALE = 2 * np.pi / 100
# column counts already warned about
_WARNED_EXTRAPOLATION: "set[int]" = set()


class AnsatzCircuit(NamedTuple):
    """Input state and parametrized circuit of one ansatz evaluation."""

    initial: StateVector
    circuit: Circuit


def parameter_count(spec: AnsatzSpec) -> int:
    """Total number of parameters over all layers.

    Examples
    --------
    >>> parameter_count(AnsatzSpec(kind="np", layers=1, grid="2x3"))
    40
    """
    return layer_parameter_count(spec) * spec.layers


def parameter_degrees(spec: AnsatzSpec) -> Tuple[int, ...]:
    """Degree of the trigonometric polynomial of the energy in every parameter."""
    return layer_degrees(spec) * spec.layers


def _as_vector(spec: AnsatzSpec, params: Sequence[float]) -> np.ndarray:
    values = np.asarray(params, dtype=float).ravel()
    expected = parameter_count(spec)
    if values.size != expected:
        raise ParameterCountError(expected, values.size)
    return values


def build_circuit(spec: AnsatzSpec, params: Sequence[float]) -> Circuit:
    """Concatenate `spec.layers` layers, each with its slice of `params`.

    Raises
    ------
    ParameterCountError
        If `params` does not have `parameter_count(spec)` entries.
    """
    values = _as_vector(spec, params)
    if spec.extrapolated and spec.geometry.n_x not in _WARNED_EXTRAPOLATION:
        _WARNED_EXTRAPOLATION.add(spec.geometry.n_x)
        logger.warning(
            "No tabulated term ordering for %s columns; using the three-column "
            "pattern %s",
            spec.geometry.n_x,
            ",".join(k.value for k in spec.ordering),
        )
    per_layer = layer_parameter_count(spec)
    circuit = Circuit(spec.geometry.n_modes)
    for layer in values.reshape(spec.layers, per_layer):
        circuit = circuit.then(build_layer(spec, layer))
    return circuit


def full_circuit(
    spec: AnsatzSpec,
    params: Sequence[float],
    init: InitialStateSpec,
    model: Optional[HubbardModel] = None,
) -> AnsatzCircuit:
    """Prepare the input state of `init` and the circuit for `params`.

    `model` supplies the couplings of the non-interacting start; it defaults to the
    ``t = 1`` model on the ansatz geometry.
    """
    if model is None:
        model = HubbardModel(geometry=spec.geometry)
    elif model.geometry != spec.geometry:
        raise ValueError(
            f"Model grid {model.geometry.label} does not match ansatz grid "
            f"{spec.geometry.label}."
        )
    return AnsatzCircuit(initial_state(init, model), build_circuit(spec, params))


def default_parameters(
    spec: AnsatzSpec, random: bool = False, rng: SeedLike = None
) -> np.ndarray:
    """Starting parameters: every entry ``1/L``, or uniform in ``[0, 2π/100]``.

    Examples
    --------
    >>> default_parameters(AnsatzSpec(layers=4, grid="2x2"))[:3]
    array([0.25, 0.25, 0.25])
    """
    n = parameter_count(spec)
    if random:
        return make_rng(rng).uniform(0.0, RANDOM_INIT_SCALE, size=n)
    return np.full(n, 1.0 / spec.layers)


def load_parameters(path: Union[str, Path], spec: AnsatzSpec) -> np.ndarray:
    """Read a stored parameter vector for `spec`.

    Accepts ``.npy`` arrays, JSON lists and run-record JSON documents (their
    ``"parameters"`` entry). A vector for fewer layers of the same ansatz is padded
    with zeros, so shallower optima seed deeper runs.
    """
    path = Path(path)
    if path.suffix == ".npy":
        values = np.load(path).astype(float).ravel()
    else:
        data = json.loads(path.read_text(encoding="utf-8"))
        if isinstance(data, dict):
            if "parameters" not in data:
                raise KeyError(f"{str(path)!r} has no 'parameters' entry.")
            data = data["parameters"]
        values = np.asarray(data, dtype=float).ravel()

    expected = parameter_count(spec)
    per_layer = layer_parameter_count(spec)
    if values.size < expected and values.size and values.size % per_layer == 0:
        logger.info(
            "Padding %d stored parameters to %d for %s", values.size, expected, spec
        )
        values = np.concatenate([values, np.zeros(expected - values.size)])
    if values.size != expected:
        raise ParameterCountError(expected, values.size, f"parameters in {path.name}")
    return values
