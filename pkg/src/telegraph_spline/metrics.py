"""Discrete error norms and observed convergence orders."""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionError, GridDomainError
from .spline_interp import SplineCoefficients, nodal_values

__all__ = ["ErrorReport", "error_norms", "nodal_errors", "observed_order"]


@dataclass(frozen=True)
class ErrorReport:
    t: float
    l_inf: float
    l2: float
    rms: float
    l2_scaled: float = math.nan
    N: int | None = None
    k: float | None = None
    gamma_choice: object = None


def error_norms(numeric, exact, h: float, *, t: float = math.nan, N=None, k=None, gamma_choice=None):
    """L-infinity, discrete L2 and RMS norms of ``numeric - exact``.

    ``l2 = sqrt(h * sum e_i^2)`` and ``rms = sqrt(sum e_i^2 / M)`` for ``M``
    samples.  ``l2_scaled = h * sqrt(sum e_i^2)`` is reported alongside.
    """
    numeric = np.asarray(numeric, dtype=float)
    exact = np.asarray(exact, dtype=float)
    if numeric.shape != exact.shape or numeric.ndim != 1 or numeric.size == 0:
        raise DimensionError(
            f"need two nonempty vectors of equal length, got {numeric.shape} and {exact.shape}"
        )
    err = np.abs(numeric - exact)
    peak = float(np.max(err))
    # scale by the peak so tiny errors do not underflow when squared
    root = peak * math.sqrt(float(np.sum((err / peak) ** 2))) if peak > 0 else 0.0
    return ErrorReport(
        t=t,
        l_inf=peak,
        l2=math.sqrt(h) * root,
        rms=root / math.sqrt(err.size),
        l2_scaled=h * root,
        N=N,
        k=k,
        gamma_choice=gamma_choice,
    )


def nodal_errors(coeffs: SplineCoefficients, exact: Callable, t: float, **meta) -> ErrorReport:
    """Norms over nodes ``x_1 .. x_N`` (the left end node is excluded)."""
    grid = coeffs.grid
    x = grid.nodes[1:]
    numeric = nodal_values(coeffs, 0)[1:]
    return error_norms(numeric, exact(x, t), grid.h, t=t, N=grid.N, **meta)


def observed_order(pairs: Sequence[tuple[float, float]]) -> list[float]:
    """Orders ``log(e1/e2) / log(s1/s2)`` between successive ``(step, error)`` pairs."""
    if len(pairs) < 2:
        raise GridDomainError("need at least two (step, error) pairs")
    for s, e in pairs:
        if not e > 0:
            raise GridDomainError(f"error {e!r} is not positive; order is undefined")
        if not s > 0:
            raise GridDomainError(f"step {s!r} is not positive")
    orders = []
    for (s1, e1), (s2, e2) in zip(pairs, pairs[1:]):
        if not s2 < s1:
            raise GridDomainError("step sizes must be strictly decreasing")
        orders.append(math.log(e1 / e2) / math.log(s1 / s2))
    return orders
