"""Exception types shared across the package."""


class CurvCompError(Exception):
    """Base class for all package-specific errors."""


class DomainError(CurvCompError, ValueError):
    """A radius or evaluation point violates a geometric domain constraint
    (negative radius, beyond the positive-curvature period, at/below the pole
    regularization radius, outside the space's maximal radius)."""


class ParameterError(CurvCompError, ValueError):
    """A parameter combination is invalid (2p <= n+k, mu < 1/k, beta <= 1,
    misordered radii, non-integrable singular exponent)."""


class QuadratureError(CurvCompError, RuntimeError):
    """Numerical integration failed to converge to the requested tolerance,
    or the requested integral is divergent."""


class ConfigError(CurvCompError, ValueError):
    """A suite configuration document is malformed.  ``key`` names the
    offending entry."""

    def __init__(self, key, message):
        self.key = key
        super().__init__(f"{key}: {message}")
