from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple, Sequence, Tuple

from ._gates import Gate


class Operation(NamedTuple):
    """A gate applied to specific qubits (first listed is qubit ``a``)."""

    gate: Gate
    qubits: Tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.gate}@{','.join(map(str, self.qubits))}"


class Moment(NamedTuple):
    """Operations on pairwise disjoint qubits, executed in parallel."""

    operations: Tuple[Operation, ...]
    label: str = ""

    @property
    def has_two_qubit(self) -> bool:
        return any(len(op.qubits) == 2 for op in self.operations)

    @property
    def qubits(self) -> Tuple[int, ...]:
        return tuple(q for op in self.operations for q in op.qubits)


def moment(operations: Iterable[Operation], label: str = "") -> Moment:
    """Build a `Moment`, checking that no qubit is used twice."""
    ops = tuple(operations)
    used: "set[int]" = set()
    for op in ops:
        if len(op.qubits) != op.gate.num_qubits:
            raise ValueError(
                f"Gate {op.gate} acts on {op.gate.num_qubits} qubits, "
                f"got {op.qubits}."
            )
        if used.intersection(op.qubits) or len(set(op.qubits)) != len(op.qubits):
            raise ValueError(f"Moment {label!r} uses a qubit twice: {op}")
        used.update(op.qubits)
    return Moment(ops, label)


class Circuit:
    """An ordered list of moments over a fixed number of qubits.

    Depth counts only moments that contain at least one 2-qubit gate.

    Parameters
    ----------
    n_qubits : int
        Width of the register.
    moments : Sequence[Moment]
        Moments in execution order.
    """

    __slots__ = ("_moments", "_n_qubits")

    def __init__(self, n_qubits: int, moments: Sequence[Moment] = ()) -> None:
        self._n_qubits = n_qubits
        for m in moments:
            for q in m.qubits:
                if not 0 <= q < n_qubits:
                    raise ValueError(
                        f"Moment {m.label!r} addresses qubit {q} outside "
                        f"[0, {n_qubits})."
                    )
        self._moments = tuple(moments)

    @property
    def n_qubits(self) -> int:
        return self._n_qubits

    @property
    def moments(self) -> Tuple[Moment, ...]:
        return self._moments

    @property
    def depth(self) -> int:
        return circuit_depth(self)

    def operations(self) -> Iterator[Operation]:
        """Iterate over all operations in execution order."""
        for m in self._moments:
            yield from m.operations

    def two_qubit_operations(self) -> Iterator[Operation]:
        return (op for op in self.operations() if len(op.qubits) == 2)

    def then(self, other: "Circuit") -> "Circuit":
        """Return this circuit followed by `other`."""
        if other.n_qubits != self._n_qubits:
            raise ValueError("Cannot concatenate circuits of different widths.")
        return Circuit(self._n_qubits, self._moments + other.moments)

    def __len__(self) -> int:
        return len(self._moments)

    def __iter__(self) -> Iterator[Moment]:
        return iter(self._moments)

    def __repr__(self) -> str:
        name = self.__class__.__name__
        return (
            f"<{name} on {self._n_qubits} qubits ({len(self)} moments, "
            f"depth {self.depth})>"
        )


def circuit_depth(circuit: Circuit) -> int:
    """Number of moments containing at least one 2-qubit gate."""
    return sum(m.has_two_qubit for m in circuit.moments)


def two_qubit_gate_count(circuit: Circuit) -> int:
    """Number of 2-qubit operations in the circuit."""
    return sum(1 for _ in circuit.two_qubit_operations())


def pack_moments(
    n_qubits: int, operations: Iterable[Operation], label: str = ""
) -> Circuit:
    """Schedule operations as early as possible, keeping their order on each qubit."""
    frontier = [0] * n_qubits
    slots: "list[list[Operation]]" = []
    for op in operations:
        t = max(frontier[q] for q in op.qubits)
        while len(slots) <= t:
            slots.append([])
        slots[t].append(op)
        for q in op.qubits:
            frontier[q] = t + 1
    return Circuit(n_qubits, [moment(ops, label) for ops in slots])
