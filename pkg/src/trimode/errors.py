"""Exception types shared across the package."""


class TrimodeError(Exception):
    """Base class for all package-specific errors."""


class NonPositiveEffectiveFrequency(TrimodeError, ValueError):
    """An effective optical or mechanical frequency came out <= 0."""


class NoConvergence(TrimodeError, RuntimeError):
    """Fixed-point iteration hit the iteration cap.

    Carries the last iterate and its residual so callers can inspect
    how close the solver got.
    """

    def __init__(self, message, fields=None, residual=None):
        super().__init__(message)
        self.fields = fields
        self.residual = residual


class ComplexThreshold(TrimodeError, ValueError):
    """A closed-form threshold has a negative radicand (no real value)."""


class OutsideNormalPhase(TrimodeError, ValueError):
    """Variance formulas requested outside their domain of validity."""


class UnstableParameters(TrimodeError, RuntimeError):
    """Drift matrix has an eigenvalue with positive real part.

    The offending eigenvalue is attached as ``eigenvalue``.
    """

    def __init__(self, message, eigenvalue=None):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class Unstable(TrimodeError, RuntimeError):
    """Quadratic form not positive definite, or a trajectory blew up."""


class NumericalFailure(TrimodeError, RuntimeError):
    """An eigenvalue solver failed or produced an inconsistent spectrum."""


class NoSignChange(TrimodeError, ValueError):
    """Bisection bracket does not straddle a sign change."""


class InvalidStep(TrimodeError, ValueError):
    """Integrator step size violates the stability guard."""


class TooShort(TrimodeError, ValueError):
    """Trajectory too short for the requested spectral estimate."""


class ConfigError(TrimodeError, ValueError):
    """Malformed or inconsistent configuration input."""


class ComplexCouplingWarning(UserWarning):
    """Linearized coupling had a non-negligible imaginary part."""
