"""Tests for Mittag-Leffler, Wright and Laplace-inversion routines."""

import math

import mpmath as mp
import numpy as np
import pytest
from scipy import integrate, special

from subordination.core.config import InversionSettings
from subordination.core.errors import (
    CapabilityError,
    NumericalToleranceError,
    ParameterDomainError,
)
from subordination.special import (
    cross_check,
    inv_stable_cutoff,
    inv_stable_density,
    laplace_invert,
    mittag_leffler,
    ml_method,
    moment_ladder,
    moment_phi_k,
    moment_transform,
    phi_k_table,
    wright_m,
)
from subordination.symbols import CustomSymbol, StableSymbol


class TestMittagLeffler:
    @pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 1.5, 2.0, 5.0, 10.0, 50.0])
    def test_half_index_is_erfcx(self, x):
        assert mittag_leffler(0.5, -x) == pytest.approx(special.erfcx(x), abs=1e-10)

    def test_reference_value(self):
        assert mittag_leffler(0.5, -1.0) == pytest.approx(0.42758357615580700, abs=1e-12)

    @pytest.mark.parametrize("z", [-3.0, -0.5, 0.0, 0.7])
    def test_index_one_is_exp(self, z):
        assert mittag_leffler(1.0, z) == pytest.approx(math.exp(z), rel=1e-14)

    def test_zero(self):
        assert mittag_leffler(0.3, 0.0) == 1.0

    def test_positive_argument(self):
        # E_alpha(z) = sum z^k / Gamma(alpha k + 1)
        expected = sum(0.5**k / math.gamma(0.7 * k + 1) for k in range(80))
        assert mittag_leffler(0.7, 0.5) == pytest.approx(expected, rel=1e-13)

    def test_large_positive_argument(self):
        # E_alpha(z) ~ exp(z^(1/alpha)) / alpha, corrections O(1/z)
        asymptotic = math.exp(60.0 ** (1.0 / 0.9)) / 0.9
        assert mittag_leffler(0.9, 60.0) == pytest.approx(asymptotic, rel=1e-10)

    def test_half_index_positive_closed_form(self):
        expected = float(mp.exp(mp.mpf(20) ** 2) * mp.erfc(-20))
        assert mittag_leffler(0.5, 20.0) == pytest.approx(expected, rel=1e-11)

    def test_overflowing_argument(self):
        with pytest.raises(NumericalToleranceError):
            mittag_leffler(0.5, 40.0)

    def test_matches_mpmath_across_switch(self):
        for z in (-0.9, -1.1, -4.0):
            reference = mp.nsum(lambda k: mp.mpf(z) ** k * mp.rgamma(0.7 * k + 1), [0, mp.inf])
            assert mittag_leffler(0.7, z) == pytest.approx(float(reference), abs=1e-10)

    def test_completely_monotone_decay(self):
        x = np.linspace(0.0, 20.0, 81)
        values = mittag_leffler(0.6, -x)
        assert np.all(np.diff(values) < 0)
        assert np.all(values > 0)

    def test_array_shape(self):
        assert mittag_leffler(0.5, np.zeros((2, 3))).shape == (2, 3)

    @pytest.mark.parametrize("alpha", [0.0, -0.5, 1.5])
    def test_domain(self, alpha):
        with pytest.raises(ParameterDomainError):
            mittag_leffler(alpha, -1.0)

    def test_method_names(self):
        assert ml_method(0.5, 0.0) == "exact"
        assert ml_method(1.0, -3.0) == "exp"
        assert ml_method(0.5, -0.5) == "series"
        assert ml_method(0.5, -3.0) == "integral"


class TestInverseStableDensity:
    @pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("x", [0.05, 1.0, 3.0])
    def test_half_index_closed_form(self, t, x):
        expected = math.exp(-x * x / (4.0 * t)) / math.sqrt(math.pi * t)
        assert inv_stable_density(0.5, t, x) == pytest.approx(expected, rel=1e-9)

    def test_reference_point(self):
        assert inv_stable_density(0.5, 1.0, 1.0) == pytest.approx(
            math.exp(-0.25) / math.sqrt(math.pi), rel=1e-12
        )

    def test_wright_at_zero(self):
        assert wright_m(0.5, 0.0) == pytest.approx(1.0 / math.sqrt(math.pi))

    @pytest.mark.parametrize("alpha", [0.3, 0.7])
    def test_normalized_with_correct_mean(self, alpha):
        cutoff = inv_stable_cutoff(alpha, 1.0)
        mass, _ = integrate.quad(lambda x: inv_stable_density(alpha, 1.0, x), 0.0, cutoff,
                                 limit=200)
        mean, _ = integrate.quad(lambda x: x * inv_stable_density(alpha, 1.0, x), 0.0, cutoff,
                                 limit=200)
        assert mass == pytest.approx(1.0, abs=1e-7)
        assert mean == pytest.approx(1.0 / math.gamma(1.0 + alpha), rel=1e-6)

    def test_cutoff_is_negligible(self):
        x = inv_stable_cutoff(0.6, 2.0)
        assert inv_stable_density(0.6, 2.0, x) < 1e-14

    def test_array_input(self):
        values = inv_stable_density(0.5, 1.0, np.array([0.5, 1.0]))
        assert values.shape == (2,)

    @pytest.mark.parametrize(
        "alpha,t,x", [(1.0, 1.0, 1.0), (0.5, 0.0, 1.0), (0.5, 1.0, 0.0), (0.5, 1.0, -1.0)]
    )
    def test_domain(self, alpha, t, x):
        with pytest.raises(ParameterDomainError):
            inv_stable_density(alpha, t, x)


class TestLaplaceInversion:
    @pytest.mark.parametrize("method", ["gaver_stehfest", "talbot"])
    def test_exponential(self, method):
        value = laplace_invert(lambda s: 1 / (s + 1), 1.0, method)
        assert value == pytest.approx(math.exp(-1.0), rel=1e-7)

    @pytest.mark.parametrize("k", [1, 2])
    @pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
    def test_both_methods_on_stable_moments(self, stable_half, k, t):
        closed = moment_phi_k(stable_half, k, t)
        check = cross_check(moment_transform(stable_half, k, "talbot"), t)
        assert check.stehfest == pytest.approx(closed, rel=1e-6)
        assert check.talbot == pytest.approx(closed, rel=1e-6)
        assert check.agrees

    def test_bad_time(self):
        with pytest.raises(ParameterDomainError):
            laplace_invert(lambda s: 1 / s, 0.0)

    def test_bad_method(self):
        with pytest.raises(ParameterDomainError):
            laplace_invert(lambda s: 1 / s, 1.0, "euler")


class TestMoments:
    def test_order_zero_and_origin(self, gamma_unit):
        assert moment_phi_k(gamma_unit, 0, 3.0) == 1.0
        assert moment_phi_k(gamma_unit, 2, 0.0) == 0.0

    def test_identity_closed_form(self, identity):
        assert moment_phi_k(identity, 3, 2.0) == pytest.approx(8.0 / 6.0)

    def test_stable_closed_form(self):
        spec = StableSymbol(0.5)
        assert moment_phi_k(spec, 1, 1.0) == pytest.approx(1.0 / math.gamma(1.5))

    def test_negative_order(self, gamma_unit):
        with pytest.raises(ParameterDomainError):
            moment_phi_k(gamma_unit, -1, 1.0)

    @pytest.mark.parametrize("k", [1, 2])
    @pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
    def test_gamma_inverters_agree(self, gamma_unit, k, t):
        stehfest = moment_phi_k(gamma_unit, k, t, "gaver_stehfest")
        talbot = moment_phi_k(gamma_unit, k, t, "talbot")
        assert stehfest == pytest.approx(talbot, rel=1e-6)

    def test_moments_are_increasing(self, jump_symbol):
        ladder = moment_ladder(jump_symbol, 1, [0.25, 0.5, 1.0, 2.0], threads=2)
        assert np.all(np.diff(ladder.values) > 0)

    def test_custom_without_complex_phi(self):
        spec = CustomSymbol(
            lambda lam: math.log1p(lam), 1.0, tail=lambda z: float(special.exp1(z))
        )
        with pytest.raises(CapabilityError):
            moment_phi_k(spec, 1, 1.0, "talbot")
        value = moment_phi_k(spec, 1, 1.0, "gaver_stehfest")
        reference = moment_phi_k(spec, 1, 1.0, "gaver_stehfest",
                                 InversionSettings(stehfest_order=16))
        assert value == pytest.approx(reference, rel=1e-3)

    def test_table_matches_scalar(self, gamma_unit):
        table = phi_k_table(gamma_unit, 3, [0.5, 1.0], dps=30)
        assert table.rows == 2 and table.cols == 4
        assert float(table[0, 0]) == 1.0
        assert float(table[1, 2]) == pytest.approx(
            moment_phi_k(gamma_unit, 2, 1.0, "talbot"), rel=1e-8
        )

    def test_table_closed_form(self, stable_half):
        table = phi_k_table(stable_half, 2, [0.25], dps=40)
        assert float(table[0, 1]) == pytest.approx(0.5 / math.gamma(1.5), rel=1e-14)
