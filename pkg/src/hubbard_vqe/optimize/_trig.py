"""Trigonometric interpolation of single-parameter energy curves.

A parameter entering the circuit only through gates ``exp(i θ G)`` whose generators
have integer spectra produces an energy that is a trigonometric polynomial in ``θ`` of
degree ``D``, the largest eigenvalue gap summed over the gates sharing the parameter.
``2D + 1`` samples determine it exactly.
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, NamedTuple

import numpy as np
from numpy.polynomial import polynomial as P

if TYPE_CHECKING:
    import numpy.typing as npt

logger = logging.getLogger(__name__)

GRID_POINTS = 4096


def trig_nodes(degree: int) -> np.ndarray:
    """Fit nodes ``2πl / (2D + 1)`` for ``l = -D .. D``."""
    if degree < 0:
        raise ValueError(f"degree must be non-negative, got {degree}")
    n = 2 * degree + 1
    return 2 * np.pi * np.arange(-degree, degree + 1) / n


class TrigPolynomial(NamedTuple):
    """``f(θ) = Σ_k c_k e^{ikθ}`` for ``k = -D .. D``, real on real ``θ``.

    `coefficients` holds ``c_k`` at index ``k + D``.
    """

    coefficients: np.ndarray

    @property
    def degree(self) -> int:
        return (self.coefficients.size - 1) // 2

    def __call__(self, theta: npt.ArrayLike) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        k = np.arange(-self.degree, self.degree + 1)
        phases = np.exp(1j * np.multiply.outer(theta, k))
        return (phases @ self.coefficients).real

    def derivative(self, theta: npt.ArrayLike) -> np.ndarray:
        k = np.arange(-self.degree, self.degree + 1)
        return TrigPolynomial(1j * k * self.coefficients)(theta)


def fit_trig_polynomial(values: npt.ArrayLike, degree: int) -> TrigPolynomial:
    """Fit from samples at `trig_nodes(degree)` by a discrete Fourier transform.

    ``c_k = 1/(2D+1) Σ_l f(θ_l) e^{-ikθ_l}``

    Examples
    --------
    >>> poly = fit_trig_polynomial(np.cos(trig_nodes(1)), 1)
    >>> np.allclose(poly.coefficients, [0.5, 0.0, 0.5])
    True
    """
    values = np.asarray(values, dtype=float)
    nodes = trig_nodes(degree)
    if values.shape != nodes.shape:
        raise ValueError(
            f"A degree-{degree} fit needs {nodes.size} samples, got {values.size}."
        )
    k = np.arange(-degree, degree + 1)
    coefficients = np.exp(-1j * np.multiply.outer(k, nodes)) @ values / nodes.size
    return TrigPolynomial(coefficients)


class TrigMinimum(NamedTuple):
    theta: float
    value: float
    degenerate: bool = False
    grid_fallback: bool = False


def minimize_trig_polynomial(
    poly: TrigPolynomial, tolerance: float = 1e-6
) -> TrigMinimum:
    """Global minimum of `poly` on the circle.

    The stationary points are the unit-circle roots of ``z^D f'(θ)`` written as a
    degree-``2D`` polynomial in ``z = e^{iθ}``; the roots come from the eigenvalues of
    its companion matrix and are kept when ``|1 - |z|| < tolerance``. A dense grid scan
    replaces them if none survive. A constant polynomial is flagged degenerate and
    minimized at ``θ = 0``.
    """
    d = poly.degree
    k = np.arange(-d, d + 1)
    # coefficient of z^(k + D) in z^D f'(θ)
    g = 1j * k * poly.coefficients
    scale = max(1.0, float(np.abs(poly.coefficients).max()))
    if np.abs(g).max() < 1e-12 * scale:
        return TrigMinimum(0.0, float(poly(0.0)), degenerate=True)

    roots = P.polyroots(P.polytrim(g, 1e-14 * scale))
    on_circle = roots[np.abs(1 - np.abs(roots)) < tolerance]
    if on_circle.size:
        candidates = np.angle(on_circle)
        values = poly(candidates)
        best = int(np.argmin(values))
        return TrigMinimum(float(candidates[best]), float(values[best]))

    logger.warning(
        "No unit-circle stationary point among %d roots; scanning a grid", roots.size
    )
    grid = np.linspace(-np.pi, np.pi, GRID_POINTS, endpoint=False)
    values = poly(grid)
    best = int(np.argmin(values))
    return TrigMinimum(float(grid[best]), float(values[best]), grid_fallback=True)
