"""Built-in problems with closed-form solutions.

Every problem here is manufactured from an exact solution ``u``: the
forcing is ``u_tt + 2 alpha u_t + beta^2 u - u_xx`` and all initial and
boundary data are read off ``u``.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .exceptions import ConfigurationError
from .scheme import TelegraphProblem

__all__ = ["ExactSolution", "manufactured_problem", "REGISTRY", "get_problem", "describe"]

PI = np.pi


@dataclass(frozen=True)
class ExactSolution:
    """A closed-form ``u(x, t)`` with the partial derivatives the scheme needs."""

    u: Callable
    u_t: Callable
    u_tt: Callable
    u_x: Callable
    u_xx: Callable


def manufactured_problem(
    sol: ExactSolution,
    alpha: float,
    beta: float,
    a: float = 0.0,
    b: float = 1.0,
    forcing: Callable | None = None,
    name: str = "manufactured",
) -> TelegraphProblem:
    """Build the problem whose solution is ``sol``.

    ``forcing`` may be passed to use a hand-written closed form instead of
    the one derived from ``sol``.
    """
    if forcing is None:

        def forcing(x, t):
            return (
                sol.u_tt(x, t)
                + 2 * alpha * sol.u_t(x, t)
                + beta**2 * sol.u(x, t)
                - sol.u_xx(x, t)
            )

    return TelegraphProblem(
        alpha=alpha,
        beta=beta,
        forcing=forcing,
        f0=lambda x: sol.u(x, 0.0),
        f1=lambda x: sol.u_t(x, 0.0),
        f0_second_derivative=lambda x: sol.u_xx(x, 0.0),
        g0=lambda t: float(sol.u(a, t)),
        g1=lambda t: float(sol.u(b, t)),
        g2=lambda t: float(sol.u_x(a, t)),
        g3=lambda t: float(sol.u_x(b, t)),
        a=a,
        b=b,
        exact=sol.u,
        name=name,
    )


def _zeros(x, t=0.0):
    return np.zeros_like(np.asarray(x, dtype=float))


def _const(value):
    return lambda x, t=0.0: np.full_like(np.asarray(x, dtype=float), value)


def example1() -> TelegraphProblem:
    """``u = sin(pi t) sin(pi x)`` with ``alpha = beta = pi``."""
    sol = ExactSolution(
        u=lambda x, t: np.sin(PI * t) * np.sin(PI * x),
        u_t=lambda x, t: PI * np.cos(PI * t) * np.sin(PI * x),
        u_tt=lambda x, t: -(PI**2) * np.sin(PI * t) * np.sin(PI * x),
        u_x=lambda x, t: PI * np.sin(PI * t) * np.cos(PI * x),
        u_xx=lambda x, t: -(PI**2) * np.sin(PI * t) * np.sin(PI * x),
    )

    def forcing(x, t):
        return PI**2 * np.sin(PI * x) * (np.sin(PI * t) + 2 * np.cos(PI * t))

    return manufactured_problem(sol, PI, PI, forcing=forcing, name="example1")


def example2(alpha: float = 20.0, beta: float = 10.0) -> TelegraphProblem:
    """``u = exp(-2t) sinh(x)``."""
    sol = ExactSolution(
        u=lambda x, t: np.exp(-2 * t) * np.sinh(x),
        u_t=lambda x, t: -2 * np.exp(-2 * t) * np.sinh(x),
        u_tt=lambda x, t: 4 * np.exp(-2 * t) * np.sinh(x),
        u_x=lambda x, t: np.exp(-2 * t) * np.cosh(x),
        u_xx=lambda x, t: np.exp(-2 * t) * np.sinh(x),
    )

    def forcing(x, t):
        return (3 - 4 * alpha + beta**2) * np.exp(-2 * t) * np.sinh(x)

    return manufactured_problem(sol, alpha, beta, forcing=forcing, name="example2")


def example3(alpha: float = 10.0, beta: float = 5.0) -> TelegraphProblem:
    """``u = cos(t) sin(x)``.

    The forcing is ``-2 alpha sin(t) sin(x) + beta^2 cos(t) sin(x)``, the one
    consistent with this solution.
    """
    sol = ExactSolution(
        u=lambda x, t: np.cos(t) * np.sin(x),
        u_t=lambda x, t: -np.sin(t) * np.sin(x),
        u_tt=lambda x, t: -np.cos(t) * np.sin(x),
        u_x=lambda x, t: np.cos(t) * np.cos(x),
        u_xx=lambda x, t: -np.cos(t) * np.sin(x),
    )

    def forcing(x, t):
        return -2 * alpha * np.sin(t) * np.sin(x) + beta**2 * np.cos(t) * np.sin(x)

    return manufactured_problem(sol, alpha, beta, forcing=forcing, name="example3")


def zero_problem(alpha: float = 1.0, beta: float = 1.0) -> TelegraphProblem:
    sol = ExactSolution(_zeros, _zeros, _zeros, _zeros, _zeros)
    return manufactured_problem(sol, alpha, beta, name="zero")


def constant_problem(value: float = 1.0, alpha: float = 1.0, beta: float = 1.0) -> TelegraphProblem:
    """``u = value``; the forcing reduces to ``beta^2 * value``."""
    sol = ExactSolution(_const(value), _zeros, _zeros, _zeros, _zeros)
    return manufactured_problem(sol, alpha, beta, name="constant")


def linear_problem(slope: float = 1.0, alpha: float = 1.0, beta: float = 1.0) -> TelegraphProblem:
    """``u = slope * x``."""
    sol = ExactSolution(
        u=lambda x, t: slope * np.asarray(x, dtype=float),
        u_t=_zeros,
        u_tt=_zeros,
        u_x=_const(slope),
        u_xx=_zeros,
    )
    return manufactured_problem(sol, alpha, beta, name="linear")


REGISTRY: dict[str, tuple[Callable[..., TelegraphProblem], str]] = {
    "example1": (example1, "u = sin(pi t) sin(pi x), alpha = beta = pi"),
    "example2": (example2, "u = exp(-2t) sinh(x); params alpha (20), beta (10)"),
    "example3": (example3, "u = cos(t) sin(x); params alpha (10), beta (5)"),
    "zero": (zero_problem, "u = 0; params alpha (1), beta (1)"),
    "constant": (constant_problem, "u = value; params value (1), alpha (1), beta (1)"),
    "linear": (linear_problem, "u = slope * x; params slope (1), alpha (1), beta (1)"),
}


def get_problem(name: str, **params: float) -> TelegraphProblem:
    try:
        factory, _ = REGISTRY[name]
    except KeyError:
        known = ", ".join(sorted(REGISTRY))
        raise ConfigurationError(f"unknown problem {name!r}; known: {known}", "problem") from None
    try:
        return factory(**params)
    except TypeError as exc:
        raise ConfigurationError(f"bad parameters for {name!r}: {exc}", "problem") from None


def describe() -> list[tuple[str, str]]:
    return [(name, text) for name, (_, text) in REGISTRY.items()]
