"""Custom exception hierarchy for the subordination toolkit.

Provides structured error handling with severity levels, a machine-readable
category and the process exit code the CLI maps each error to.
"""

from enum import Enum
from typing import Any


class ErrorSeverity(Enum):
    """Error severity levels for logging."""

    DEBUG = "debug"
    INFO = "info"
    WARNING = "warning"
    ERROR = "error"
    CRITICAL = "critical"


class ExitCode(int, Enum):
    """Process exit codes used by the command suite."""

    OK = 0
    FAILURE = 1
    USAGE = 2
    TOLERANCE = 3
    CAPABILITY = 4


class SubordinationError(Exception):
    """Base exception for all toolkit errors.

    Attributes:
        message: Human-readable error message
        details: Additional context as key-value pairs (diagnostics)
        cause: Underlying exception, if any
    """

    severity: ErrorSeverity = ErrorSeverity.ERROR
    category: str = "error"
    exit_code: ExitCode = ExitCode.FAILURE

    def __init__(
        self,
        message: str,
        details: dict[str, Any] | None = None,
        cause: Exception | None = None,
    ) -> None:
        super().__init__(message)
        self.message = message
        self.details = details or {}
        self.cause = cause

    def __str__(self) -> str:
        if self.details:
            detail_str = ", ".join(f"{k}={v}" for k, v in self.details.items())
            return f"{self.message} ({detail_str})"
        return self.message

    def to_dict(self) -> dict[str, Any]:
        """Convert exception to a dictionary for logging/serialization."""
        return {
            "error_type": self.__class__.__name__,
            "category": self.category,
            "message": self.message,
            "severity": self.severity.value,
            "details": self.details,
        }


# =============================================================================
# Usage errors (exit 2)
# =============================================================================


class UsageError(SubordinationError):
    """Invalid command-line usage."""

    severity = ErrorSeverity.WARNING
    category = "usage"
    exit_code = ExitCode.USAGE


class ConfigurationError(UsageError):
    """Configuration validation or loading error.

    Raised when:
    - Config file is malformed
    - A key is unknown
    - Values fail validation
    """

    category = "config"


class ParameterDomainError(UsageError):
    """A parameter lies outside its admissible domain.

    Raised when:
    - alpha is outside (0, 1)
    - gamma, a, b or mu are not positive
    - an evaluation point is negative or a grid index is out of range
    """

    category = "parameter_domain"


class DivergenceDomainError(UsageError):
    """A series was requested where it is not summable term by term."""

    category = "divergence_domain"


# =============================================================================
# Numerical errors (exit 3)
# =============================================================================


class NumericalToleranceError(SubordinationError):
    """A requested accuracy could not be reached.

    Raised when:
    - adaptive quadrature does not converge
    - the two Laplace inverters disagree
    - a series does not settle within its term budget
    """

    category = "numerical_tolerance"
    exit_code = ExitCode.TOLERANCE


class HorizonExceededError(NumericalToleranceError):
    """A query lies beyond the simulated operational-time horizon."""

    category = "horizon_exceeded"


class StepSizeError(NumericalToleranceError):
    """The implicit time step does not satisfy the contraction condition."""

    category = "step_size"


class IterationError(NumericalToleranceError):
    """A scalar or fixed-point iteration failed to converge."""

    category = "iteration"


class ConditioningError(NumericalToleranceError):
    """A collocation system is too ill-conditioned to solve."""

    category = "conditioning"


class UndefinedRadiusError(NumericalToleranceError):
    """A convergence radius cannot be estimated from the coefficients."""

    category = "undefined_radius"


class CoefficientRangeError(NumericalToleranceError):
    """Intermediate coefficients left the floating-point range."""

    category = "range"


# =============================================================================
# Capability errors (exit 4)
# =============================================================================


class CapabilityError(SubordinationError):
    """The requested operation is not available for this symbol.

    Raised when:
    - a custom symbol has no increment sampler
    - a custom symbol cannot be evaluated at complex arguments
    """

    category = "capability"
    exit_code = ExitCode.CAPABILITY


class FamilyMismatchError(CapabilityError):
    """The operation is undefined for the symbol family (e.g. tail of a drift)."""

    category = "family_mismatch"
