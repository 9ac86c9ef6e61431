"""Shared fixtures for the subordination test suite."""

import logging

import pytest

from subordination.solver.weights import clear_weight_cache
from subordination.symbols import (
    GammaSymbol,
    IdentitySymbol,
    InverseGaussianSymbol,
    StableSymbol,
    TemperedStableSymbol,
)


@pytest.fixture
def stable_half():
    return StableSymbol(0.5)


@pytest.fixture
def gamma_unit():
    return GammaSymbol(1.0, 1.0)


@pytest.fixture
def identity():
    return IdentitySymbol()


@pytest.fixture(
    params=[
        ("stable", lambda: StableSymbol(0.5)),
        ("stable_07", lambda: StableSymbol(0.7)),
        ("tempered", lambda: TemperedStableSymbol(0.5, 1.0)),
        ("gamma", lambda: GammaSymbol(1.0, 1.0)),
        ("gamma_24", lambda: GammaSymbol(2.0, 4.0)),
        ("inverse_gaussian", lambda: InverseGaussianSymbol(1.0, 1.0)),
    ],
    ids=lambda p: p[0],
)
def jump_symbol(request):
    """Every named family with a nonzero Levy measure."""
    return request.param[1]()


@pytest.fixture(autouse=True)
def _fresh_weight_cache():
    clear_weight_cache()
    yield
    clear_weight_cache()


@pytest.fixture(autouse=True)
def _quiet_logging():
    logging.getLogger("subordination").setLevel(logging.WARNING)
    yield
