"""Bernstein symbols module.

Provides:
- SymbolSpec abstract class and the named families (identity, stable,
  tempered stable, gamma, inverse Gaussian) plus user-supplied symbols
- TailKernel and the Levy-tail operations
- Registry construction from family names and run configurations
"""

from .base import SymbolMetadata, SymbolSpec
from .custom import CustomSymbol
from .gamma import GammaSymbol
from .identity import IdentitySymbol
from .inverse_gaussian import InverseGaussianSymbol
from .registry import make_symbol, register_family, registered_families, symbol_from_config
from .stable import StableSymbol, positive_stable
from .tail import (
    LaplaceCheck,
    TailKernel,
    TailMode,
    check_laplace_consistency,
    laplace_of_tail,
    levy_tail,
    phi,
    phi_over_lambda_limit,
)
from .tempered import TemperedStableSymbol

__all__ = [
    "SymbolSpec",
    "SymbolMetadata",
    "IdentitySymbol",
    "StableSymbol",
    "TemperedStableSymbol",
    "GammaSymbol",
    "InverseGaussianSymbol",
    "CustomSymbol",
    "positive_stable",
    "make_symbol",
    "register_family",
    "registered_families",
    "symbol_from_config",
    "TailKernel",
    "TailMode",
    "LaplaceCheck",
    "phi",
    "phi_over_lambda_limit",
    "levy_tail",
    "laplace_of_tail",
    "check_laplace_consistency",
]
