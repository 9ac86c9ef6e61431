"""Tests for fractional Euler numbers, series evaluation and radius estimation."""

import math

import numpy as np
import pytest

from subordination.core.errors import (
    CoefficientRangeError,
    DivergenceDomainError,
    ParameterDomainError,
    UndefinedRadiusError,
)
from subordination.series import (
    RadiusMethod,
    SeriesCoefficients,
    SeriesKind,
    custom_coefficients,
    direct_series,
    estimate_radius,
    eval_series,
    frac_binom,
    frac_euler_numbers,
    geometric_coefficients,
    west_series,
)
from subordination.mc import estimate_functional
from subordination.paths.functionals import make_functional
from subordination.special import mittag_leffler
from subordination.symbols import StableSymbol


def logistic(t: float, u0: float) -> float:
    return u0 / (u0 + (1.0 - u0) * math.exp(-t))


class TestFracBinom:
    def test_classical(self):
        assert frac_binom(1.0, 6, 2) == 15.0

    def test_half_index(self):
        # Gamma(2) / Gamma(3/2)^2
        assert frac_binom(0.5, 2, 1) == pytest.approx(4.0 / math.pi, rel=1e-14)

    @pytest.mark.parametrize("alpha", [0.3, 0.5, 0.8])
    def test_edges_and_symmetry(self, alpha):
        assert frac_binom(alpha, 7, 0) == pytest.approx(1.0)
        assert frac_binom(alpha, 7, 7) == pytest.approx(1.0)
        assert frac_binom(alpha, 7, 2) == pytest.approx(frac_binom(alpha, 7, 5), rel=1e-14)

    @pytest.mark.parametrize("alpha,k,i", [(0.5, 3, 4), (0.5, 3, -1), (0.0, 2, 1), (1.2, 2, 1)])
    def test_domain(self, alpha, k, i):
        with pytest.raises(ParameterDomainError):
            frac_binom(alpha, k, i)


class TestEulerNumbers:
    def test_classical_logistic_taylor(self):
        coeffs = frac_euler_numbers(1.0, 0.5, 10)
        E = coeffs.values
        assert coeffs.kind == SeriesKind.CLASSICAL_EULER
        assert E[0] == 0.5
        assert E[1] == 0.25
        assert E[2] == pytest.approx(0.0, abs=1e-12)
        assert E[3] == pytest.approx(-1.0 / 8.0, abs=1e-12)
        assert E[4] == pytest.approx(0.0, abs=1e-12)
        assert E[5] == pytest.approx(1.0 / 4.0, abs=1e-12)

    def test_classical_sum_is_logistic(self):
        coeffs = frac_euler_numbers(1.0, 0.3, 30)
        assert direct_series(coeffs, 1.0) == pytest.approx(logistic(1.0, 0.3), abs=1e-10)

    def test_fractional_kind(self):
        coeffs = frac_euler_numbers(0.5, 0.5, 5)
        assert coeffs.kind == SeriesKind.FRAC_EULER_ALPHA
        assert coeffs.K == 5
        # E2 = E1 - 2 E0 E1 for any alpha
        assert coeffs.values[2] == pytest.approx(0.0, abs=1e-15)

    def test_second_coefficient(self):
        u0 = 0.3
        E = frac_euler_numbers(0.7, u0, 4).values
        assert E[2] == pytest.approx(E[1] * (1.0 - 2.0 * u0), rel=1e-14)

    def test_literal_recursion_start(self):
        u0 = 0.5
        E = frac_euler_numbers(0.5, u0, 4, start_at_one=True)
        assert E.values[2] == pytest.approx(E.values[1] * (1.0 - u0), rel=1e-14)
        assert E.describe()["start_at_one"] is True

    def test_read_only(self):
        coeffs = frac_euler_numbers(0.5, 0.5, 4)
        with pytest.raises(ValueError):
            coeffs.values[0] = 1.0

    def test_bad_start_rejected(self):
        with pytest.raises(ParameterDomainError):
            SeriesCoefficients(SeriesKind.FRAC_EULER_ALPHA, np.array([0.5, 0.1]), 0.5, 0.5)

    @pytest.mark.parametrize("alpha,u0,K", [(0.5, 0.0, 5), (0.5, 1.0, 5), (0.5, 0.5, 0)])
    def test_domain(self, alpha, u0, K):
        with pytest.raises(ParameterDomainError):
            frac_euler_numbers(alpha, u0, K)

    def test_overflow(self):
        with pytest.raises(CoefficientRangeError):
            with np.errstate(all="ignore"):
                frac_euler_numbers(1.0, 0.5, 400)


class TestEvaluation:
    def test_direct_matches_moment_route(self, stable_half):
        coeffs = frac_euler_numbers(0.5, 0.4, 12)
        for t in (0.01, 0.05, 0.1):
            value = eval_series(coeffs, stable_half, t)
            assert value.value == pytest.approx(direct_series(coeffs, t), rel=1e-13)
            assert value.trunc_bound >= 0.0

    def test_geometric_sums_to_mittag_leffler(self):
        coeffs = geometric_coefficients(1.0, 80, alpha=0.5)
        assert direct_series(coeffs, 1.0) == pytest.approx(mittag_leffler(0.5, -1.0), abs=1e-12)

    def test_identity_moments(self, identity):
        coeffs = frac_euler_numbers(1.0, 0.5, 20)
        value = eval_series(coeffs, identity, 0.5)
        assert value.value == pytest.approx(logistic(0.5, 0.5), abs=1e-12)

    def test_direct_needs_alpha(self):
        with pytest.raises(ParameterDomainError):
            direct_series(custom_coefficients([1.0, 2.0]), 1.0)

    def test_direct_vectorized(self):
        coeffs = frac_euler_numbers(0.5, 0.5, 6)
        assert direct_series(coeffs, np.array([0.0, 0.1])).shape == (2,)

    def test_beyond_radius_flag(self, identity):
        coeffs = frac_euler_numbers(1.0, 0.5, 30)
        radius = estimate_radius(coeffs)
        assert eval_series(coeffs, identity, 4.0, radius).beyond_radius
        assert not eval_series(coeffs, identity, 1.0, radius).beyond_radius

    def test_negative_time(self, identity):
        with pytest.raises(ParameterDomainError):
            eval_series(frac_euler_numbers(1.0, 0.5, 4), identity, -1.0)


class TestWestSeries:
    @pytest.mark.parametrize("t", [0.0, 0.5, 2.0])
    def test_classical_logistic(self, t):
        value = west_series(1.0, 0.7, t)
        assert value.value == pytest.approx(logistic(t, 0.7), abs=1e-12)
        assert value.trunc_bound < 1e-12

    def test_fractional_limits(self):
        # at t = 0 the series sums to 1 / (1 - r) = u0
        assert west_series(0.5, 0.8, 0.0).value == pytest.approx(0.8, abs=1e-12)
        assert west_series(0.5, 0.8, 1e6, K=50).value == pytest.approx(1.0, abs=1e-2)

    @pytest.mark.parametrize("u0", [1.0, 2.0])
    def test_initial_value_above_one(self, u0):
        value = west_series(1.0, u0, 0.8)
        assert value.value == pytest.approx(logistic(0.8, u0), abs=1e-12)

    @pytest.mark.parametrize("t", [0.25, 0.5, 1.0])
    def test_agrees_with_monte_carlo(self, t):
        series = west_series(0.5, 0.6, t, K=200)
        est = estimate_functional(StableSymbol(0.5), make_functional("logistic", v0=0.6), t,
                                  100_000, 31)
        assert abs(series.value - est.mean) <= 3.0 * est.stderr + series.trunc_bound

    @pytest.mark.parametrize("u0", [0.5, 0.3])
    def test_divergent_domain(self, u0):
        with pytest.raises(DivergenceDomainError):
            west_series(0.5, u0, 1.0)

    def test_bad_arguments(self):
        with pytest.raises(ParameterDomainError):
            west_series(0.5, 0.7, -1.0)


class TestRadius:
    def test_logistic_radius_is_pi(self):
        radius = estimate_radius(frac_euler_numbers(1.0, 0.5, 40))
        assert radius.method == RadiusMethod.RATIO
        assert radius.variable == "t"
        assert radius.r == pytest.approx(math.pi, rel=0.05)
        assert not radius.unstable

    def test_entire_series(self):
        radius = estimate_radius(geometric_coefficients(1.0, 30))
        assert radius.r == math.inf

    def test_custom_geometric(self):
        radius = estimate_radius(custom_coefficients(0.5 ** np.arange(20)))
        assert radius.r == pytest.approx(2.0, rel=1e-12)
        assert radius.root == pytest.approx(2.0, rel=1e-12)

    def test_fractional_variable(self):
        radius = estimate_radius(frac_euler_numbers(0.5, 0.5, 30))
        assert radius.variable == "t^alpha"
        assert radius.r > 0

    def test_too_few(self):
        with pytest.raises(ParameterDomainError):
            estimate_radius(custom_coefficients(np.ones(5)))

    def test_zero_tail(self):
        values = np.zeros(12)
        values[0] = 1.0
        with pytest.raises(UndefinedRadiusError):
            estimate_radius(custom_coefficients(values))
