"""Exception types shared across the package.

Validation failures subclass ValueError so callers can catch them either
way; numerical failures only subclass the package base.
"""


class EBPError(Exception):
    """Base class for all package-specific errors."""


class EmptySupport(EBPError, ValueError):
    """Distribution has no probability mass on its explicit support."""


class NegativeWeight(EBPError, ValueError):
    """A probability or weight is negative."""


class NonFinite(EBPError, ValueError):
    """A NaN or infinity showed up where a finite number is required."""


class InvalidParams(EBPError, ValueError):
    """Parameters outside their admissible range."""


class TailMassPresent(EBPError, ValueError):
    """Operation requires an exactly finitely-supported distribution."""


class DomainError(EBPError, ValueError):
    """Argument outside the operation's domain."""


class AssumptionViolated(EBPError, ValueError):
    """The standing assumption 0 < theta_0 < 1 does not hold."""


class NoInteriorMode(EBPError, ValueError):
    """Gamma density is monotone (shape <= 1): no interior peak exists."""


class NegativeRadicand(EBPError, ValueError):
    """Peak-distance formula radicand is negative: formula inapplicable."""


class ZeroExtinctSamples(EBPError):
    """No simulated path went extinct within the horizon."""


class ConvergenceFailure(EBPError):
    """Fixed-point solver failed to converge within its iteration cap."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class ScenarioError(EBPError, ValueError):
    """Scenario file failed validation; message carries the field path."""
