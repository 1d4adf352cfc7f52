"""Quintic B-spline collocation for the one-dimensional telegraph equation."""

from .banded import BandedSystem, build, factor, solve
from .exceptions import (
    BandwidthError,
    ConfigurationError,
    DimensionError,
    GridDomainError,
    SingularMatrixError,
    TelegraphError,
)
from .metrics import ErrorReport, error_norms, nodal_errors, observed_order
from .problems import get_problem, manufactured_problem
from .quintic_basis import UniformGrid, basis_eval, nodal_stencils
from .scheme import (
    GammaChoice,
    SchemeParams,
    TelegraphProblem,
    TimeState,
    assemble_matrix,
    assemble_rhs,
    gamma,
    recover_ghost_coefficients,
    scheme_coefficients,
    solve_to_time,
    startup_values,
    step,
)
from .spline_interp import SplineCoefficients, eval_spline, fit_interpolant, nodal_values

__version__ = "0.1.0"
