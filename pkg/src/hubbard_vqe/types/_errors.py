from typing import Sequence


class DegenerateFillingError(ValueError):
    """Raised when the lowest orbitals cannot be filled unambiguously.

    Parameters
    ----------
    energies : Sequence[float]
        Single-particle energies that are degenerate at the Fermi level.
    spin : str
        Spin plane ("up" or "down") whose filling is ambiguous.
    """

    def __init__(self, energies: Sequence[float], spin: str) -> None:
        self.energies = tuple(float(e) for e in energies)
        self.spin = spin
        levels = ", ".join(f"{e:.12g}" for e in self.energies)
        super().__init__(
            f"Degenerate orbital filling for spin {spin}: orbital energies "
            f"[{levels}] straddle the Fermi level. Configure an epsilon perturbation "
            "(e.g. `epsilon=1e-4`) to split the degeneracy."
        )


class SectorTooLargeError(ValueError):
    """Raised when an occupation sector exceeds the configured dimension cap."""

    def __init__(self, dimension: int, cap: int) -> None:
        self.dimension = dimension
        self.cap = cap
        super().__init__(
            f"Sector dimension {dimension} exceeds the configured cap of {cap}."
        )


class AllSamplesDiscardedError(RuntimeError):
    """Raised when error detection discards every sample of a measurement setting."""

    def __init__(self, attempts: int, eta: int) -> None:
        self.attempts = attempts
        self.eta = eta
        super().__init__(
            f"All {attempts} samples were discarded by error detection (expected "
            f"Hamming weight {eta}); the noise rate is too high for this circuit."
        )


class UnsupportedOrderingError(ValueError):
    """Raised when no term ordering is available for a grid family."""


class ParameterCountError(ValueError):
    """Raised when a parameter vector does not match its ansatz."""

    def __init__(self, expected: int, received: int, what: str = "parameters") -> None:
        self.expected = expected
        self.received = received
        super().__init__(f"Expected {expected} {what}, received {received}.")
