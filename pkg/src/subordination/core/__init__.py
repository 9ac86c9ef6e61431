"""Core infrastructure module.

Provides foundational components:
- Run configuration with validation
- Custom exception hierarchy with exit codes
- Structured logging
- Thread-safe primitives and an order-preserving pool map
"""

from .config import Family, RunConfig, load_config
from .errors import (
    CapabilityError,
    CoefficientRangeError,
    ConditioningError,
    ConfigurationError,
    DivergenceDomainError,
    ExitCode,
    FamilyMismatchError,
    HorizonExceededError,
    IterationError,
    NumericalToleranceError,
    ParameterDomainError,
    StepSizeError,
    SubordinationError,
    UndefinedRadiusError,
    UsageError,
)
from .logging import bind_run_context, setup_logging
from .threading import ThreadSafeDict, default_threads, parallel_map

__all__ = [
    # Config
    "Family",
    "RunConfig",
    "load_config",
    # Errors
    "SubordinationError",
    "ExitCode",
    "UsageError",
    "ConfigurationError",
    "ParameterDomainError",
    "DivergenceDomainError",
    "NumericalToleranceError",
    "HorizonExceededError",
    "StepSizeError",
    "IterationError",
    "ConditioningError",
    "UndefinedRadiusError",
    "CoefficientRangeError",
    "CapabilityError",
    "FamilyMismatchError",
    # Logging
    "setup_logging",
    "bind_run_context",
    # Threading
    "ThreadSafeDict",
    "default_threads",
    "parallel_map",
]
