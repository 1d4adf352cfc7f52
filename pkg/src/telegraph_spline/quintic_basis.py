"""Quintic B-spline basis on a uniform grid.

The basis functions are normalised so that ``B_i(x_i) = 66`` and the whole
family sums to 120 everywhere on ``[a, b]``.  Knots outside ``[a, b]`` are
virtual: the grid is extended by the same spacing on both sides.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .exceptions import GridDomainError

__all__ = [
    "UniformGrid",
    "Stencil",
    "NodalStencils",
    "basis_eval",
    "local_basis",
    "nodal_stencils",
]

# Each piece of B_i written in the shifted variable s = (x - x_{i-3}) / h,
# as a list of (weight, knot offset, direction).  direction +1 means the term
# is (s - offset)^5, direction -1 means (offset - s)^5.
_PIECES = (
    ((1.0, 0.0, 1),),
    ((1.0, 0.0, 1), (-6.0, 1.0, 1)),
    ((1.0, 0.0, 1), (-6.0, 1.0, 1), (15.0, 2.0, 1)),
    ((1.0, 6.0, -1), (-6.0, 5.0, -1), (15.0, 4.0, -1)),
    ((1.0, 6.0, -1), (-6.0, 5.0, -1)),
    ((1.0, 6.0, -1),),
)
# d^k/ds^k of s^5 is _FALLING[k] * s^(5-k)
_FALLING = (1.0, 5.0, 20.0)

# Relative slack (in units of h) when checking that x lies in [a, b].
DOMAIN_SLACK = 1e-12


@dataclass(frozen=True)
class UniformGrid:
    """Uniform partition ``a = x_0 < x_1 < ... < x_N = b``."""

    a: float
    b: float
    N: int

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 5:
            raise GridDomainError(f"N must be an integer >= 5, got {self.N!r}")
        if not (np.isfinite(self.a) and np.isfinite(self.b)) or self.b <= self.a:
            raise GridDomainError(f"need finite a < b, got a={self.a!r}, b={self.b!r}")
        object.__setattr__(self, "N", int(self.N))

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.N

    @property
    def nodes(self) -> np.ndarray:
        return self.a + self.h * np.arange(self.N + 1)

    def knot(self, j: int) -> float:
        """Position of knot ``j``; any integer is allowed (virtual knots)."""
        return self.a + j * self.h

    def check_inside(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        tol = DOMAIN_SLACK * self.h
        bad = (x < self.a - tol) | (x > self.b + tol) | ~np.isfinite(x)
        if np.any(bad):
            first = x[bad].flat[0] if x.ndim else float(x)
            raise GridDomainError(f"x={first!r} is outside [{self.a}, {self.b}]")
        return x

    def locate(self, x) -> tuple[np.ndarray, np.ndarray]:
        """Interval index ``j`` and local coordinate ``t = (x - x_j)/h``.

        Intervals are half-open except the last, which also owns ``b``.
        """
        x = self.check_inside(x)
        u = (x - self.a) / self.h
        j = np.clip(np.floor(u).astype(int), 0, self.N - 1)
        return j, u - j


def _piece_value(piece: int, s, order: int):
    total = 0.0
    for weight, offset, direction in _PIECES[piece]:
        arg = direction * (s - offset)
        total = total + weight * direction**order * _FALLING[order] * arg ** (5 - order)
    return total


def _check_order(order: int) -> None:
    if order not in (0, 1, 2):
        raise GridDomainError(f"derivative order must be 0, 1 or 2, got {order!r}")


def basis_eval(grid: UniformGrid, i: int, x: float, order: int = 0) -> float:
    """Value of ``B_i`` (or its first/second derivative) at ``x``.

    Parameters
    ----------
    grid : UniformGrid
    i : int
        Basis index in ``[-2, N + 2]``.
    x : float
        Evaluation point in ``[a, b]``.
    order : {0, 1, 2}
        Derivative order.

    Returns
    -------
    float
        Zero outside the support ``[x_{i-3}, x_{i+3}]``.
    """
    _check_order(order)
    if not -2 <= i <= grid.N + 2:
        raise GridDomainError(f"basis index {i} outside [-2, {grid.N + 2}]")
    j, t = grid.locate(x)
    piece = int(j) - i + 3
    if not 0 <= piece <= 5:
        return 0.0
    return float(_piece_value(piece, float(t) + piece, order)) / grid.h**order


def local_basis(grid: UniformGrid, x, order: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate the six basis functions that are active at each point of ``x``.

    Returns ``(j, values)`` where ``values[..., m]`` belongs to ``B_{j-2+m}``.
    """
    _check_order(order)
    j, t = grid.locate(x)
    values = np.empty(np.shape(t) + (6,))
    for m in range(6):
        # B_{j-2+m} sits on its piece 5-m over [x_j, x_{j+1})
        piece = 5 - m
        values[..., m] = _piece_value(piece, t + piece, order)
    return j, values / grid.h**order


class Stencil(NamedTuple):
    """Weights applied to ``c_{i-2} .. c_{i+2}``, to be scaled by ``h**h_power``."""

    weights: tuple[float, float, float, float, float]
    h_power: int


class NodalStencils(NamedTuple):
    value: Stencil
    first: Stencil
    second: Stencil


_NODAL = NodalStencils(
    value=Stencil((1.0, 26.0, 66.0, 26.0, 1.0), 0),
    first=Stencil((-5.0, -50.0, 0.0, 50.0, 5.0), -1),
    second=Stencil((20.0, 40.0, -120.0, 40.0, 20.0), -2),
)


def nodal_stencils() -> NodalStencils:
    """Five-point weights giving ``U``, ``U'`` and ``U''`` at a node."""
    return _NODAL
