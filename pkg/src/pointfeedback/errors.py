"""Exception types shared across the package.

Every failure mode that callers are expected to handle gets its own class;
generic misuse (bad argument types, malformed grids) raises ConfigError or a
plain ValueError.
"""


class PointFeedbackError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(PointFeedbackError):
    """A configuration object or scenario file failed validation."""


class ContourBelowPole(PointFeedbackError):
    """Inversion contour does not lie strictly to the right of every pole."""


class PrecisionLoss(PointFeedbackError):
    """Estimated floating-point roundoff swamps the requested quantity.

    Carries the offending estimate so callers can report it.
    """

    def __init__(self, message: str, estimate: float = float("nan")):
        super().__init__(message)
        self.estimate = estimate


class NoConvergence(PointFeedbackError):
    """A limit-extrapolation ladder failed its convergence gate."""


class NonConvergence(PointFeedbackError):
    """An iterative root solve ran out of iterations."""


class Overflow(PointFeedbackError):
    """Requested horizon would push values outside double range."""


class RootNotFound(PointFeedbackError):
    """A required characteristic root could not be located or verified."""


class PoleHit(PointFeedbackError):
    """Transfer-function evaluation landed on (or too near) a pole."""


class TailNotBounded(PointFeedbackError):
    """Truncation tail of an improper integral exceeds the error budget."""


class QuadratureFailure(PointFeedbackError):
    """Adaptive quadrature reported an unreliable result."""


class Instability(PointFeedbackError):
    """A marching solution exceeded its a-priori growth envelope."""


class SolverFailure(PointFeedbackError):
    """Linear-algebra backend returned non-finite values."""
