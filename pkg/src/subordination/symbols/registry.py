"""Registry mapping family names to symbol classes."""

import logging
from typing import Any

from ..core.config import Family, RunConfig
from ..core.errors import CapabilityError, ParameterDomainError
from .base import SymbolSpec
from .gamma import GammaSymbol
from .identity import IdentitySymbol
from .inverse_gaussian import InverseGaussianSymbol
from .stable import StableSymbol
from .tempered import TemperedStableSymbol

logger = logging.getLogger(__name__)

_FAMILIES: dict[Family, type[SymbolSpec]] = {}


def register_family(family: Family, cls: type[SymbolSpec]) -> None:
    """Register a symbol class under a family name."""
    _FAMILIES[family] = cls
    logger.debug("Registered symbol family: %s -> %s", family.value, cls.__name__)


def registered_families() -> list[str]:
    """Names of the families constructible by make_symbol."""
    return [family.value for family in _FAMILIES]


def make_symbol(family: Family | str, **params: Any) -> SymbolSpec:
    """Construct a symbol of the given family.

    Args:
        family: Family name or enum
        **params: Family parameters (alpha, gamma, a, b, sigma, mu)

    Raises:
        ParameterDomainError: On an unknown family or invalid parameters
        CapabilityError: For the custom family, which needs callables
    """
    try:
        key = Family(family)
    except ValueError as e:
        raise ParameterDomainError(
            f"Unknown symbol family '{family}'",
            details={"accepted": ", ".join(registered_families())},
            cause=e,
        ) from e
    if key == Family.CUSTOM:
        raise CapabilityError(
            "Custom symbols are built from evaluators through CustomSymbol",
            details={"family": key.value},
        )
    try:
        return _FAMILIES[key](**params)
    except TypeError as e:
        raise ParameterDomainError(
            f"Invalid parameters for family '{key.value}'",
            details={"params": ", ".join(sorted(params))},
            cause=e,
        ) from e


def symbol_from_config(config: RunConfig) -> SymbolSpec:
    """Build the symbol named by a run configuration.

    A stable family with alpha = 1 is the classical limit and maps to the
    identity symbol.
    """
    if config.family == Family.STABLE and config.alpha == 1.0:
        logger.info("alpha = 1: using the identity symbol")
        return IdentitySymbol()
    return make_symbol(config.family, **config.symbol_params())


register_family(Family.IDENTITY, IdentitySymbol)
register_family(Family.STABLE, StableSymbol)
register_family(Family.TEMPERED_STABLE, TemperedStableSymbol)
register_family(Family.GAMMA, GammaSymbol)
register_family(Family.INVERSE_GAUSSIAN, InverseGaussianSymbol)
