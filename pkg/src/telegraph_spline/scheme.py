"""Quintic B-spline collocation scheme for the telegraph equation.

Solves ``u_tt + 2 alpha u_t + beta^2 u = u_xx + f(x, t)`` on ``[a, b]`` with
Dirichlet and Neumann data at both ends.  Time is discretised with a
three-level central scheme in which ``u_xx`` is averaged over levels
``n - 1`` and ``n + 1``; space by collocation at the grid nodes.
"""

from __future__ import annotations

import enum
import math
import warnings
from collections.abc import Callable, Iterable
from dataclasses import dataclass

import numpy as np

from .banded import BandedSystem, build
from .exceptions import ConfigurationError
from .quintic_basis import UniformGrid
from .spline_interp import (
    SplineCoefficients,
    fit_interpolant,
    ghost_coefficients,
    nodal_values,
)

__all__ = [
    "GammaChoice",
    "TelegraphProblem",
    "SchemeParams",
    "TimeState",
    "SchemeCoefficients",
    "gamma",
    "scheme_coefficients",
    "assemble_matrix",
    "startup_values",
    "assemble_rhs",
    "recover_ghost_coefficients",
    "step",
    "solve_to_time",
]

Func1 = Callable[[np.ndarray], np.ndarray]
Func2 = Callable[[np.ndarray, float], np.ndarray]
TimeFunc = Callable[[float], float]

CORNER_TOL = 1e-9
SLOPE_TOL = 1e-6
STEP_TOL = 1e-9


class GammaChoice(enum.Enum):
    """Time-step surrogate used in the difference quotients."""

    PLAIN_K = "k"
    TWO_SIN_HALF_K = "2sin"

    @classmethod
    def parse(cls, text) -> GammaChoice:
        if isinstance(text, cls):
            return text
        for member in cls:
            if text in (member.value, member.name):
                return member
        raise ConfigurationError(f"unknown gamma choice {text!r} (use 'k' or '2sin')", "gamma")


def gamma(k: float, choice: GammaChoice) -> float:
    if k <= 0:
        raise ConfigurationError(f"time step must be positive, got {k}", "k")
    if GammaChoice.parse(choice) is GammaChoice.PLAIN_K:
        return k
    return 2.0 * math.sin(k / 2.0)


def _slope_estimate(f: Func1, x: float, direction: float, span: float) -> float:
    # fourth-order one-sided difference pointing into the domain
    d = 1e-3 * span * direction
    pts = x + d * np.arange(5)
    vals = np.asarray(f(pts), dtype=float)
    weights = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0
    return float(weights @ vals) / d


@dataclass(frozen=True)
class TelegraphProblem:
    """Data of one telegraph-equation initial/boundary value problem.

    All spatial callables must accept numpy arrays.  ``exact`` is optional
    and only used for error reporting and consistency checks.
    """

    alpha: float
    beta: float
    forcing: Func2
    f0: Func1
    f1: Func1
    f0_second_derivative: Func1
    g0: TimeFunc
    g1: TimeFunc
    g2: TimeFunc
    g3: TimeFunc
    a: float = 0.0
    b: float = 1.0
    exact: Func2 | None = None
    name: str = "custom"

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        f0_ends = np.asarray(self.f0(np.array([self.a, self.b])), dtype=float)
        for label, got, want in (
            ("g0", self.g0(0.0), f0_ends[0]),
            ("g1", self.g1(0.0), f0_ends[1]),
        ):
            if abs(got - want) > CORNER_TOL * (1.0 + abs(want)):
                raise ConfigurationError(
                    f"corner mismatch: {label}(0)={got!r} but f0 gives {want!r}", label
                )
        if self.exact is None:
            return
        span = self.b - self.a
        initial = lambda x: self.exact(x, 0.0)  # noqa: E731
        for label, got, x, direction in (
            ("g2", self.g2(0.0), self.a, 1.0),
            ("g3", self.g3(0.0), self.b, -1.0),
        ):
            want = _slope_estimate(initial, x, direction, span)
            if abs(got - want) > SLOPE_TOL * (1.0 + abs(want)):
                raise ConfigurationError(
                    f"slope mismatch: {label}(0)={got!r} but the exact solution gives {want!r}",
                    label,
                )

    def boundary(self, t: float) -> tuple[float, float, float, float]:
        return self.g0(t), self.g1(t), self.g2(t), self.g3(t)


@dataclass(frozen=True)
class SchemeParams:
    N: int
    k: float
    gamma_choice: GammaChoice = GammaChoice.PLAIN_K
    t_final: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "gamma_choice", GammaChoice.parse(self.gamma_choice))
        if int(self.N) != self.N or self.N < 5:
            raise ConfigurationError(f"must be an integer >= 5, got {self.N!r}", "N")
        if not self.k > 0:
            raise ConfigurationError(f"must be positive, got {self.k!r}", "k")
        if not self.t_final > 0:
            raise ConfigurationError(f"must be positive, got {self.t_final!r}", "t_final")
        if self.k > self.t_final:
            raise ConfigurationError(f"k={self.k} exceeds t_final={self.t_final}", "k")
        ratio = self.t_final / self.k
        if abs(ratio - round(ratio)) > STEP_TOL * max(1.0, ratio):
            raise ConfigurationError(
                f"t_final={self.t_final} is not a whole number of steps of k={self.k}",
                "t_final",
            )

    @property
    def n_steps(self) -> int:
        return int(round(self.t_final / self.k))

    @property
    def gamma_k(self) -> float:
        return gamma(self.k, self.gamma_choice)

    def level_of(self, t: float) -> int:
        """Time level holding ``t``; ``t`` must be a whole multiple of ``k``."""
        ratio = t / self.k
        n = int(round(ratio))
        if abs(ratio - n) > STEP_TOL * max(1.0, abs(ratio)) or n < 0 or n > self.n_steps:
            raise ConfigurationError(
                f"report time {t} is not a multiple of k={self.k} within [0, {self.t_final}]",
                "report_times",
            )
        return n


@dataclass
class TimeState:
    level: int
    prev: SplineCoefficients
    curr: SplineCoefficients

    def __post_init__(self):
        if not (self.prev.time_level + 1 == self.curr.time_level == self.level):
            raise ValueError(
                f"inconsistent levels: prev={self.prev.time_level}, "
                f"curr={self.curr.time_level}, level={self.level}"
            )


@dataclass(frozen=True)
class SchemeCoefficients:
    v: float
    w: float
    a_acc: float
    b_acc: float
    c_acc: float


def scheme_coefficients(alpha: float, beta: float, gamma_k: float, h: float) -> SchemeCoefficients:
    """Coefficients of the collocated level ``n + 1`` operator ``v U + w U''``.

    ``beta`` does not enter the left-hand side; it is accepted so callers can
    pass the full parameter set.
    """
    if h <= 0:
        raise ConfigurationError(f"spacing must be positive, got {h}", "h")
    v = 1.0 + alpha * gamma_k
    w = -(gamma_k**2) / 2.0
    r = w / h**2
    return SchemeCoefficients(v, w, v + 20 * r, 26 * v + 40 * r, 66 * v - 120 * r)


def assemble_matrix(N: int, a_acc: float, b_acc: float, c_acc: float) -> BandedSystem:
    """Collocation matrix for ``c_0 .. c_N`` with the ghost coefficients eliminated."""
    if N < 5:
        raise ConfigurationError(f"must be >= 5, got {N}", "N")
    a, b, c = a_acc, b_acc, c_acc
    edge = {0: c - 33 * b / 8 + 165 * a / 4, 1: 65 * a / 2 - 5 * b / 4, 2: 13 * a / 4 - b / 8}
    near = {0: b - 33 * a / 8, 1: c - 9 * a / 4, 2: b - a / 8, 3: a}
    rows = [edge, near]
    for i in range(2, N - 1):
        rows.append({i - 2: a, i - 1: b, i: c, i + 1: b, i + 2: a})
    rows.append({N - j: val for j, val in near.items()})
    rows.append({N - j: val for j, val in edge.items()})
    return build(N + 1, rows, 2, 2)


def startup_values(problem: TelegraphProblem, k: float, grid: UniformGrid) -> np.ndarray:
    """Second-order Taylor estimate of ``u(x_i, k)`` at every node."""
    x = grid.nodes
    f0 = np.asarray(problem.f0(x), dtype=float)
    f1 = np.asarray(problem.f1(x), dtype=float)
    f0_xx = np.asarray(problem.f0_second_derivative(x), dtype=float)
    forcing = np.asarray(problem.forcing(x, 0.0), dtype=float)
    u_tt = forcing - problem.beta**2 * f0 - 2 * problem.alpha * f1 + f0_xx
    return f0 + k * f1 + 0.5 * k * k * u_tt


def _boundary_corrections(coef: SchemeCoefficients, h: float, data) -> np.ndarray:
    """Right-hand side terms contributed by the eliminated ghosts, rows 0, 1, N-1, N."""
    g0, g1, g2, g3 = data
    a, b = coef.a_acc, coef.b_acc
    return np.array(
        [
            (-b * h / 80 + 13 * a * h / 40) * g2 + (-b / 16 + 5 * a / 8) * g0,
            -h * a / 80 * g2 - a / 16 * g0,
            h * a / 80 * g3 - a / 16 * g1,
            (b * h / 80 - 13 * a * h / 40) * g3 + (-b / 16 + 5 * a / 8) * g1,
        ]
    )


def assemble_rhs(
    problem: TelegraphProblem,
    params: SchemeParams,
    state: TimeState,
    grid: UniformGrid,
    v: float,
    w: float,
) -> np.ndarray:
    """Right-hand side ``Q`` for advancing from level ``n`` to ``n + 1``.

    Nodal values come from the five-point stencils applied to the stored
    coefficients.  ``v`` is accepted for signature symmetry with the matrix
    assembly and is not used.
    """
    del v
    gk2 = -2.0 * w
    gk = math.sqrt(gk2)
    n = state.level
    t_n = n * params.k
    u_curr = nodal_values(state.curr, 0)
    u_prev = nodal_values(state.prev, 0)
    uxx_prev = nodal_values(state.prev, 2)
    forcing = np.asarray(problem.forcing(grid.nodes, t_n), dtype=float)
    alpha, beta = problem.alpha, problem.beta
    rhs = (
        (2.0 - (beta * gk) ** 2) * u_curr
        + (alpha * gk - 1.0) * u_prev
        + 0.5 * gk2 * uxx_prev
        + gk2 * forcing
    )
    coef = scheme_coefficients(alpha, beta, gk, grid.h)
    corr = _boundary_corrections(coef, grid.h, problem.boundary(t_n + params.k))
    rhs[[0, 1, -2, -1]] += corr
    return rhs


def recover_ghost_coefficients(
    interior,
    g_data,
    h: float,
    grid: UniformGrid,
    time_level: int = 0,
) -> SplineCoefficients:
    """Complete ``c_0 .. c_N`` with the four ghosts implied by ``g_data``.

    ``g_data`` is ``(g0, g1, g2, g3)`` evaluated at the new time level.
    """
    interior = np.asarray(interior, dtype=float)
    g0, g1, g2, g3 = g_data
    left2, left1, right1, right2 = ghost_coefficients(interior, g0, g1, g2, g3, h)
    c = np.concatenate(([left2, left1], interior, [right1, right2]))
    return SplineCoefficients(grid, c, time_level)


def step(
    problem: TelegraphProblem,
    params: SchemeParams,
    state: TimeState,
    system: BandedSystem,
    grid: UniformGrid | None = None,
) -> TimeState:
    """Advance ``state`` by one level using the factored collocation ``system``."""
    if grid is None:
        grid = UniformGrid(problem.a, problem.b, params.N)
    coef = scheme_coefficients(problem.alpha, problem.beta, params.gamma_k, grid.h)
    rhs = assemble_rhs(problem, params, state, grid, coef.v, coef.w)
    interior = system.solve(rhs)
    level = state.level + 1
    new = recover_ghost_coefficients(
        interior, problem.boundary(level * params.k), grid.h, grid, level
    )
    return TimeState(level, state.curr, new)


def initial_levels(
    problem: TelegraphProblem, params: SchemeParams, grid: UniformGrid
) -> tuple[SplineCoefficients, SplineCoefficients]:
    """Coefficients at ``t = 0`` and ``t = k``.

    Level 0 interpolates ``f0`` with exact end curvature; level 1 interpolates
    the Taylor start-up values (boundary data at the end nodes) with
    estimated end curvature.
    """
    k = params.k
    x_ends = np.array([grid.a, grid.b])
    f0_xx_ends = np.asarray(problem.f0_second_derivative(x_ends), dtype=float)
    first = fit_interpolant(
        grid,
        np.asarray(problem.f0(grid.nodes), dtype=float),
        problem.g2(0.0),
        problem.g3(0.0),
        float(f0_xx_ends[0]),
        float(f0_xx_ends[1]),
        time_level=0,
    )
    startup = startup_values(problem, k, grid)
    # boundary nodes take the prescribed data rather than the Taylor estimate
    startup[0], startup[-1] = problem.g0(k), problem.g1(k)
    second = fit_interpolant(
        grid,
        startup,
        problem.g2(k),
        problem.g3(k),
        time_level=1,
    )
    return first, second


def solve_to_time(
    problem: TelegraphProblem,
    params: SchemeParams,
    report_times: Iterable[float] | None = None,
) -> list[tuple[float, SplineCoefficients]]:
    """March from ``t = 0`` to ``params.t_final``.

    Parameters
    ----------
    problem : TelegraphProblem
    params : SchemeParams
    report_times : iterable of float, optional
        Times to return; each must be a whole multiple of ``k``.  All levels
        are returned when omitted.

    Returns
    -------
    list of (t, SplineCoefficients)
        Snapshots in increasing time order (copies, safe to keep).
    """
    if params.t_final < 2 * params.k * (1 - STEP_TOL):
        raise ConfigurationError(
            f"t_final={params.t_final} must be at least two steps of k={params.k}", "t_final"
        )
    grid = UniformGrid(problem.a, problem.b, params.N)
    if report_times is None:
        wanted = set(range(params.n_steps + 1))
    else:
        wanted = {params.level_of(t) for t in report_times}

    coef = scheme_coefficients(problem.alpha, problem.beta, params.gamma_k, grid.h)
    if coef.v <= 0:
        warnings.warn(
            f"v = 1 + alpha*Gamma(k) = {coef.v:g} <= 0; the scheme is not expected to be stable",
            RuntimeWarning,
            stacklevel=2,
        )
    system = assemble_matrix(params.N, coef.a_acc, coef.b_acc, coef.c_acc).factor()

    level0, level1 = initial_levels(problem, params, grid)
    snapshots = []
    for level in (level0, level1):
        if level.time_level in wanted:
            snapshots.append((level.time_level * params.k, level.copy()))
    state = TimeState(1, level0, level1)
    for _ in range(1, params.n_steps):
        state = step(problem, params, state, system, grid)
        if state.level in wanted:
            snapshots.append((state.level * params.k, state.curr.copy()))
    return snapshots
