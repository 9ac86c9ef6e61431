"""Tests for the discrete non-local operators, the time march and the identity checks."""

import math

import numpy as np
import pytest

from subordination.core.errors import (
    FamilyMismatchError,
    ParameterDomainError,
    StepSizeError,
)
from subordination.solver import (
    GridFunction,
    GrowthRegime,
    apply_caputo_type,
    apply_rl_type,
    caputo_grid,
    cell_weights,
    closure_residual,
    delayed_rushed_ratio,
    ladder_residual,
    linear_problem,
    logistic_problem,
    rl_grid,
    solve_ivp,
    uniform_grid,
    verify_convolved_rhs,
    young_bound,
)
from subordination.special import mittag_leffler


def logistic(t, u0):
    return u0 / (u0 + (1.0 - u0) * np.exp(-t))


class TestGrid:
    def test_uniform_grid(self):
        t = uniform_grid(1.0, 0.25)
        np.testing.assert_allclose(t, [0.0, 0.25, 0.5, 0.75, 1.0])

    @pytest.mark.parametrize("T,dt", [(1.0, 0.3), (0.0, 0.1), (1.0, -0.1)])
    def test_bad_grid(self, T, dt):
        with pytest.raises(ParameterDomainError):
            uniform_grid(T, dt)

    def test_grid_function_validation(self):
        with pytest.raises(ParameterDomainError):
            GridFunction(0.1, [1.0])
        with pytest.raises(ParameterDomainError):
            GridFunction(0.1, [1.0, math.nan])

    def test_interpolation(self):
        u = GridFunction.from_callable(lambda t: 2.0 * t, 1.0, 0.5)
        assert u.T == 1.0
        assert float(u.at(0.25)) == pytest.approx(0.5)

    def test_logistic_problem_domain(self, identity):
        with pytest.raises(ParameterDomainError):
            logistic_problem(identity, 1.5, 1.0, 0.1)


class TestOperators:
    def test_identity_is_backward_difference(self, identity):
        u = GridFunction.from_callable(lambda t: t**2, 1.0, 0.1)
        d = caputo_grid(identity, u)
        assert math.isnan(d[0])
        np.testing.assert_allclose(d[1:], np.diff(u.values) / 0.1, rtol=1e-12)
        assert apply_caputo_type(identity, u, 5) == pytest.approx(d[5], rel=1e-12)

    def test_stable_derivative_of_linear_is_exact(self, stable_half):
        # D^Phi t = int_0^t Pi-bar = t^(1/2) / Gamma(3/2)
        u = GridFunction.from_callable(lambda t: t, 2.0, 0.01)
        d = caputo_grid(stable_half, u)
        expected = np.sqrt(u.t_grid[1:]) / math.gamma(1.5)
        np.testing.assert_allclose(d[1:], expected, rtol=1e-10)

    def test_pointwise_matches_grid(self, gamma_unit):
        u = GridFunction.from_callable(np.sin, 1.0, 0.05)
        d = caputo_grid(gamma_unit, u)
        for j in (1, 7, 20):
            assert apply_caputo_type(gamma_unit, u, j) == pytest.approx(d[j], rel=1e-12)

    @pytest.mark.parametrize("symbol", ["stable_half", "gamma_unit", "identity"])
    def test_caputo_type_is_linear(self, symbol, request):
        spec = request.getfixturevalue(symbol)
        u = GridFunction.from_callable(np.sin, 1.0, 0.05)
        w = GridFunction.from_callable(lambda t: np.exp(-2.0 * t), 1.0, 0.05)
        combined = GridFunction(0.05, 3.0 * u.values - 0.5 * w.values)
        for j in (1, 8, 20):
            expected = (3.0 * apply_caputo_type(spec, u, j)
                        - 0.5 * apply_caputo_type(spec, w, j))
            actual = apply_caputo_type(spec, combined, j)
            assert actual == pytest.approx(expected, rel=1e-10, abs=1e-12)

    def test_rl_adds_initial_value_term(self, stable_half):
        u = GridFunction.from_callable(lambda t: np.ones_like(t), 1.0, 0.1)
        rl = rl_grid(stable_half, u)
        np.testing.assert_allclose(
            rl[1:], u.t_grid[1:] ** -0.5 / math.gamma(0.5), rtol=1e-12
        )
        assert apply_rl_type(stable_half, u, 10) == pytest.approx(rl[10], rel=1e-12)

    def test_rl_identity_rejected(self, identity):
        u = GridFunction.from_callable(np.exp, 1.0, 0.1)
        with pytest.raises(FamilyMismatchError):
            apply_rl_type(identity, u, 3)

    def test_index_range(self, stable_half):
        u = GridFunction.from_callable(np.exp, 1.0, 0.1)
        with pytest.raises(ParameterDomainError):
            apply_caputo_type(stable_half, u, 0)

    def test_weights_positive_decreasing(self, jump_symbol):
        weights = cell_weights(jump_symbol, 0.01, 100)
        assert weights.shape == (100,)
        assert np.all(weights > 0)
        assert np.all(np.diff(weights) <= 0)

    def test_weights_cached(self, stable_half):
        assert cell_weights(stable_half, 0.1, 10) is cell_weights(stable_half, 0.1, 10)


class TestSolveIvp:
    def test_identity_logistic(self, identity):
        u = solve_ivp(logistic_problem(identity, 0.2, 10.0, 1e-3))
        np.testing.assert_allclose(u.values, logistic(u.t_grid, 0.2), atol=1e-6)

    @pytest.mark.slow
    def test_identity_logistic_fine(self, identity):
        u = solve_ivp(logistic_problem(identity, 0.5, 10.0, 1e-4))
        np.testing.assert_allclose(u.values, logistic(u.t_grid, 0.5), atol=1e-8)

    def test_mittag_leffler_eigenfunction(self, stable_half):
        errors = []
        for dt in (0.02, 0.01, 0.005):
            u = solve_ivp(linear_problem(stable_half, 1.0, 1.0, 2.0, dt))
            t = u.t_grid
            mask = t >= 0.5
            exact = mittag_leffler(0.5, -np.sqrt(t[mask]))
            errors.append(float(np.max(np.abs(u.values[mask] - exact))))
        rates = [math.log2(c / f) for c, f in zip(errors[:-1], errors[1:])]
        assert errors[-1] < 5e-3
        assert min(rates) >= 0.8

    def test_fractional_logistic_is_increasing(self, jump_symbol):
        u = solve_ivp(logistic_problem(jump_symbol, 0.3, 2.0, 0.01))
        assert u.values[0] == 0.3
        assert u.initial == 0.3
        assert np.all(np.diff(u.values) > 0)
        assert np.all(u.values < 1.0)

    def test_forcing_slows_growth(self, stable_half):
        free = solve_ivp(logistic_problem(stable_half, 0.3, 1.0, 0.01))
        sigma = GridFunction.from_callable(lambda t: 0.05 * np.ones_like(t), 1.0, 0.01)
        forced = solve_ivp(logistic_problem(stable_half, 0.3, 1.0, 0.01, sigma))
        assert forced.values[-1] < free.values[-1]

    def test_step_too_large_identity(self, identity):
        with pytest.raises(StepSizeError):
            solve_ivp(logistic_problem(identity, 0.5, 4.0, 2.0))

    def test_step_too_large_stable(self, stable_half):
        with pytest.raises(StepSizeError):
            solve_ivp(logistic_problem(stable_half, 0.5, 4.0, 2.0))


class TestIdentities:
    @pytest.mark.parametrize("symbol", ["stable_half", "gamma_unit"])
    def test_convolved_rhs_refines(self, symbol, request):
        spec = request.getfixturevalue(symbol)
        report = verify_convolved_rhs(spec, 1.0, 1.0, 1.0, 0.02, levels=3)
        assert len(report.dts) == 3
        assert report.dts[-1] == pytest.approx(0.005)
        assert report.monotone
        assert report.finest < report.residuals[0]
        assert report.finest < 1e-2

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_ladder_rungs(self, stable_half, k):
        report = ladder_residual(stable_half, k, 1.0, 0.02, levels=3, t_min=0.1)
        assert report.finest < 0.05
        # phi_2 = t is piecewise linear, so its residual sits at rounding level
        assert report.monotone or report.finest < 1e-10

    def test_ladder_order(self, stable_half):
        with pytest.raises(ParameterDomainError):
            ladder_residual(stable_half, 0, 1.0, 0.1)

    def test_closure_of_classical_logistic(self, identity):
        u = GridFunction.from_callable(lambda t: logistic(t, 0.4), 5.0, 1e-3)
        report = closure_residual(identity, u)
        assert report.max_abs < 1e-3

    def test_delayed_rushed_divergent_for_stable(self, stable_half):
        v = GridFunction.from_callable(np.exp, 1.0, 0.1)
        report = delayed_rushed_ratio(stable_half, v, lhs=1.0)
        assert report.classification == GrowthRegime.DIVERGENT
        assert report.rhs == math.inf
        assert report.z_score is None

    def test_delayed_rushed_classification(self, gamma_unit):
        v = GridFunction.from_callable(lambda t: np.exp(-t), 5.0, 0.01)
        neutral = delayed_rushed_ratio(gamma_unit, v, mc_u=v)
        assert neutral.classification == GrowthRegime.NEUTRAL
        assert neutral.limit == pytest.approx(1.0)

        delayed = delayed_rushed_ratio(gamma_unit, v, lhs=2.0 * neutral.integral_v,
                                       lhs_stderr=0.1)
        assert delayed.classification == GrowthRegime.DELAYED
        assert delayed.z_score == pytest.approx((delayed.lhs - delayed.rhs) / 0.1)

        rushed = delayed_rushed_ratio(gamma_unit, v, lhs=0.5 * neutral.integral_v)
        assert rushed.classification == GrowthRegime.RUSHED

    def test_delayed_rushed_needs_input(self, gamma_unit):
        v = GridFunction.from_callable(np.exp, 1.0, 0.1)
        with pytest.raises(ParameterDomainError):
            delayed_rushed_ratio(gamma_unit, v)

    def test_young_bound(self, gamma_unit, stable_half):
        v = GridFunction.from_callable(lambda t: np.exp(-2.0 * t), 3.0, 0.01)
        report = young_bound(gamma_unit, v)
        assert report.holds
        assert report.norm_derivative > 0
        assert young_bound(stable_half, v).bound == math.inf
