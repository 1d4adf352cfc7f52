"""Exception types raised by the solver and harness."""


class TelegraphError(Exception):
    """Base class for all package errors."""


class GridDomainError(TelegraphError, ValueError):
    """A point or argument lies outside the admissible domain."""


class BandwidthError(TelegraphError, ValueError):
    """A matrix entry falls outside the declared band."""

    def __init__(self, offending):
        self.offending = list(offending)
        cells = ", ".join(f"({r}, {c})" for r, c in self.offending)
        super().__init__(f"entries outside band at (row, col): {cells}")


class SingularMatrixError(TelegraphError, ArithmeticError):
    """Pivot magnitude fell below the singularity threshold."""


class DimensionError(TelegraphError, ValueError):
    """Vector or matrix sizes do not agree."""


class ConfigurationError(TelegraphError, ValueError):
    """Invalid problem, scheme or run configuration.

    ``field`` names the offending input when one can be identified.
    """

    def __init__(self, message, field=None):
        self.field = field
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)
