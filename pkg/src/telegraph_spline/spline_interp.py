"""Quintic spline coefficients, evaluation and interpolation.

Coefficients are stored in a flat array ``c`` of length ``N + 5`` where
``c[m]`` is the coefficient of ``B_{m-2}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .banded import BandedSystem, build
from .exceptions import DimensionError, GridDomainError
from .quintic_basis import UniformGrid, local_basis, nodal_stencils

__all__ = [
    "SplineCoefficients",
    "eval_spline",
    "nodal_values",
    "fit_interpolant",
    "ghost_coefficients",
    "end_second_derivative",
]


@dataclass
class SplineCoefficients:
    grid: UniformGrid
    c: np.ndarray
    time_level: int = 0

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float)
        if self.c.shape != (self.grid.N + 5,):
            raise DimensionError(
                f"expected {self.grid.N + 5} coefficients, got shape {self.c.shape}"
            )
        if not np.all(np.isfinite(self.c)):
            raise ValueError("spline coefficients must be finite")
        if self.time_level < 0:
            raise ValueError(f"time_level must be nonnegative, got {self.time_level}")

    def __getitem__(self, i: int) -> float:
        """Coefficient ``c_i`` for a logical index ``-2 <= i <= N + 2``."""
        if not -2 <= i <= self.grid.N + 2:
            raise IndexError(i)
        return float(self.c[i + 2])

    @property
    def interior(self) -> np.ndarray:
        return self.c[2 : self.grid.N + 3]

    def __call__(self, x, order: int = 0):
        return eval_spline(self, x, order)

    def copy(self) -> SplineCoefficients:
        return SplineCoefficients(self.grid, self.c.copy(), self.time_level)


def nodal_values(coeffs: SplineCoefficients, order: int = 0) -> np.ndarray:
    """``U``, ``U'`` or ``U''`` at all nodes through the five-point stencils."""
    stencil = nodal_stencils()[order]
    c = coeffs.c
    n1 = coeffs.grid.N + 1
    w0, w1, w2, w3, w4 = stencil.weights
    out = w0 * c[0:n1] + w1 * c[1 : n1 + 1] + w3 * c[3 : n1 + 3] + w4 * c[4 : n1 + 4]
    if w2:
        out = out + w2 * c[2 : n1 + 2]
    if stencil.h_power:
        out = out * coeffs.grid.h**stencil.h_power
    return out


def eval_spline(coeffs: SplineCoefficients, x, order: int = 0):
    """Evaluate ``sum_i c_i B_i^(order)(x)``.

    Works on scalars and arrays.  Points that coincide with a node go through
    the nodal stencils, so they agree bit for bit with :func:`nodal_values`.
    """
    grid = coeffs.grid
    x_arr = np.asarray(x, dtype=float)
    j, basis = local_basis(grid, x_arr, order)
    # c index of B_{j-2+m} is j + m
    idx = j[..., None] + np.arange(6)
    out = np.sum(coeffs.c[idx] * basis, axis=-1)

    u = (x_arr - grid.a) / grid.h
    at_node = np.abs(u - np.rint(u)) <= 1e-12 * np.maximum(1.0, np.abs(u))
    if np.any(at_node):
        nodes = np.clip(np.rint(u[at_node]).astype(int), 0, grid.N)
        out = np.array(out, dtype=float)
        out[at_node] = nodal_values(coeffs, order)[nodes]
    if x_arr.ndim == 0:
        return float(out)
    return out


def ghost_coefficients(inner, g_value_left, g_value_right, g_slope_left, g_slope_right, h):
    """Coefficients ``(c_{-2}, c_{-1}, c_{N+1}, c_{N+2})`` from boundary data.

    ``inner`` holds ``c_0 .. c_N``.  The formulas follow from requiring the
    spline to take the given values and slopes at both ends.
    """
    c0, c1, c2 = inner[0], inner[1], inner[2]
    cn, cn1, cn2 = inner[-1], inner[-2], inner[-3]
    left1 = -33 / 8 * c0 - 9 / 4 * c1 - 1 / 8 * c2 + h * g_slope_left / 80 + g_value_left / 16
    left2 = (
        165 / 4 * c0 + 65 / 2 * c1 + 9 / 4 * c2 - 13 * h * g_slope_left / 40 - 5 * g_value_left / 8
    )
    right1 = (
        -33 / 8 * cn - 9 / 4 * cn1 - 1 / 8 * cn2 - h * g_slope_right / 80 + g_value_right / 16
    )
    right2 = (
        165 / 4 * cn + 65 / 2 * cn1 + 9 / 4 * cn2 + 13 * h * g_slope_right / 40 - 5 * g_value_right / 8
    )
    return left2, left1, right1, right2


@lru_cache(maxsize=None)
def _hermite_end_weights() -> tuple[np.ndarray, float]:
    """Weights for ``f''(x_0)`` from ``f(x_0..x_4)`` and ``f'(x_0)`` (unit spacing).

    The quintic through those six data reproduces ``f''`` to ``O(h^4)``.
    """
    # rows: p(0..4) and p'(0) for p(s) = sum a_m s^m, m = 0..5
    rows = [[float(s) ** m for m in range(6)] for s in range(5)]
    rows.append([0.0, 1.0, 0.0, 0.0, 0.0, 0.0])
    inverse = np.linalg.inv(np.array(rows))
    # p''(0) = 2 a_2
    weights = 2.0 * inverse[2]
    return weights[:5].copy(), float(weights[5])


def end_second_derivative(values, slope, h, side="left") -> float:
    """Estimate ``f''`` at one end of the grid from nodal values and the end slope."""
    w_values, w_slope = _hermite_end_weights()
    values = np.asarray(values, dtype=float)
    if side == "left":
        return float((w_values @ values[:5] + w_slope * slope * h) / h**2)
    # mirror: s -> -s flips the sign of the slope term only
    return float((w_values @ values[::-1][:5] - w_slope * slope * h) / h**2)


def _interpolation_system(N: int) -> BandedSystem:
    """Matrix for value conditions at nodes 1..N-1 and curvature at both ends.

    Rows 0 and N carry ``h^2 U''`` with the ghost coefficients eliminated.
    """
    n = N + 1
    # h^2 U''(x_0) = 20 c_{-2} + 40 c_{-1} - 120 c_0 + 40 c_1 + 20 c_2
    # with c_{-1}, c_{-2} substituted -> 540 c_0 + 600 c_1 + 60 c_2 + data
    end = (20 * 165 / 4 - 40 * 33 / 8 - 120, 20 * 65 / 2 - 40 * 9 / 4 + 40, 20 * 9 / 4 - 40 / 8 + 20)
    rows = [{0: end[0], 1: end[1], 2: end[2]}]
    # row 1: c_{-1} + 26 c_0 + 66 c_1 + 26 c_2 + c_3 with c_{-1} substituted
    rows.append({0: 26 - 33 / 8, 1: 66 - 9 / 4, 2: 26 - 1 / 8, 3: 1.0})
    for i in range(2, N - 1):
        rows.append({i - 2: 1.0, i - 1: 26.0, i: 66.0, i + 1: 26.0, i + 2: 1.0})
    rows.append({N - 3: 1.0, N - 2: 26 - 1 / 8, N - 1: 66 - 9 / 4, N: 26 - 33 / 8})
    rows.append({N - 2: end[2], N - 1: end[1], N: end[0]})
    return build(n, rows, 2, 2).factor()


def fit_interpolant(
    grid: UniformGrid,
    values,
    d_left: float,
    d_right: float,
    d2_left: float | None = None,
    d2_right: float | None = None,
    time_level: int = 0,
) -> SplineCoefficients:
    """Quintic spline through nodal ``values`` with prescribed end slopes.

    Values and slopes fix four boundary conditions; the two remaining degrees
    of freedom are fixed by the second derivative at each end.  When
    ``d2_left``/``d2_right`` are not supplied they are estimated from the
    local Hermite quintic through the first five values and the end slope.

    Parameters
    ----------
    grid : UniformGrid
    values : array_like, shape (N + 1,)
    d_left, d_right : float
        First derivative at ``a`` and ``b``.
    d2_left, d2_right : float, optional
        Second derivative at ``a`` and ``b``.
    time_level : int
        Stored on the result.
    """
    values = np.asarray(values, dtype=float)
    N, h = grid.N, grid.h
    if values.shape != (N + 1,):
        raise DimensionError(f"expected {N + 1} nodal values, got shape {values.shape}")
    if not np.all(np.isfinite(values)):
        raise GridDomainError("nodal values must be finite")
    if d2_left is None:
        d2_left = end_second_derivative(values, d_left, h, "left")
    if d2_right is None:
        d2_right = end_second_derivative(values, d_right, h, "right")

    g0, g1 = values[0], values[-1]
    rhs = values.copy()
    # constant parts of the ghosts (all interior coefficients set to zero)
    zero = np.zeros(N + 1)
    l2, l1, r1, r2 = ghost_coefficients(zero, g0, g1, d_left, d_right, h)
    rhs[0] = h * h * d2_left - 20 * l2 - 40 * l1
    rhs[1] = values[1] - l1
    rhs[N - 1] = values[N - 1] - r1
    rhs[N] = h * h * d2_right - 20 * r2 - 40 * r1

    inner = _interpolation_system(N).solve(rhs)
    l2, l1, r1, r2 = ghost_coefficients(inner, g0, g1, d_left, d_right, h)
    c = np.concatenate(([l2, l1], inner, [r1, r2]))
    return SplineCoefficients(grid, c, time_level)
