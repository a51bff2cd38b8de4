"""Exception hierarchy shared across the package.

Exit-code mapping for the CLI lives in cli.py; these classes only carry
the failure context.
"""


class SwirllabError(Exception):
    pass


class ConfigurationError(SwirllabError):
    """Invalid SimConfig / CLI parameters."""


class BlowUpError(SwirllabError):
    """NaN/Inf detected during time stepping."""

    def __init__(self, t: float, message: str = ""):
        self.t = t
        super().__init__(message or f"non-finite values at t={t:g}")


class StencilError(SwirllabError):
    """Grid too small for the requested finite-difference stencil."""


class DegenerateFieldError(SwirllabError):
    """Boundary shear magnitude fell below threshold along a trajectory."""


class ChartInvalidError(SwirllabError):
    """Curvature vanished or metric factor f <= 0: chart unusable."""


class ChartDomainError(SwirllabError):
    """Requested chart coordinates outside the constructed range."""


class PreconditionError(SwirllabError):
    """A documented operation precondition was violated (carries measurement)."""

    def __init__(self, message: str, measured: float | None = None):
        self.measured = measured
        super().__init__(message)


class RegimeError(SwirllabError):
    """Swirl-dominance thresholds not met at the tracked point."""


class DegenerateShearError(SwirllabError):
    """All-zero shear: no maximum to track."""


class InsufficientDataError(SwirllabError):
    """Too few samples for a series operation."""


class SchemaError(SwirllabError):
    """Input file (CSV/manifest/snapshot) does not match the documented format."""
