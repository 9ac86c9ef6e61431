"""Numerical checks of the non-local operator identities.

Provides:
- verify_convolved_rhs: D^Phi v = f(v) * Pi-bar for the classical
  solution v = c e^(-a t) of v' = -a v, with a dt-refinement study
- ladder_residual: D^Phi phi_k = phi_{k-1} under refinement
- closure_residual: D^Phi u + sigma - f(u) for tabulated (u, sigma)
- delayed_rushed_ratio: integral of u against (lim Phi/lambda) * integral of v
- young_bound: L1 norm of D^Phi v against (lim Phi/lambda) * L1 norm of v'
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import NDArray
from scipy import integrate

from ..core.config import InversionSettings, QuadratureSettings
from ..core.errors import ParameterDomainError
from ..special.moments import moment_phi_k
from ..symbols.base import SymbolSpec
from .grid import GridFunction, Rhs, logistic_rhs, uniform_grid
from .operators import caputo_grid
from .weights import cell_weights

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RefinementReport:
    """Max residuals over successive dt halvings.

    Attributes:
        dts: Step sizes, coarse to fine
        residuals: Max absolute residual at each level
        t_min: Residuals are measured on t >= t_min
    """

    dts: list[float]
    residuals: list[float]
    t_min: float = 0.0

    @property
    def rates(self) -> list[float]:
        """Empirical orders log2(e_coarse / e_fine)."""
        out = []
        for coarse, fine in zip(self.residuals[:-1], self.residuals[1:]):
            out.append(math.log2(coarse / fine) if coarse > 0 and fine > 0 else math.inf)
        return out

    @property
    def monotone(self) -> bool:
        return all(f <= c for c, f in zip(self.residuals[:-1], self.residuals[1:]))

    @property
    def finest(self) -> float:
        return self.residuals[-1]


def _refine(
    residual_at: Callable[[float], float], dt: float, levels: int, t_min: float
) -> RefinementReport:
    if levels < 1:
        raise ParameterDomainError("levels must be at least 1", details={"levels": levels})
    dts = [dt / 2**level for level in range(levels)]
    residuals = [residual_at(h) for h in dts]
    report = RefinementReport(dts, residuals, t_min)
    logger.info("Refinement study: residuals=%s rates=%s", residuals, report.rates)
    return report


def _window(t: NDArray[np.float64], t_min: float) -> NDArray[np.bool_]:
    mask = t >= t_min - 1e-12
    mask[0] = False
    return mask


# =============================================================================
# Convolved right-hand side
# =============================================================================


def convolved_rhs_residual(
    spec: SymbolSpec, a: float, c: float, T: float, dt: float,
    settings: QuadratureSettings | None = None,
) -> NDArray[np.float64]:
    """LHS minus RHS of D^Phi v = int_0^t f(v(t - z)) Pi-bar(z) dz on the grid.

    v(t) = c e^(-a t) and f(v) = -a v. The RHS integrates f(v) as the cell
    average of its endpoint values against the cell weights.
    """
    t = uniform_grid(T, dt)
    v = GridFunction(dt, c * np.exp(-a * t))
    lhs = caputo_grid(spec, v, settings)
    fv = -a * v.values
    averages = 0.5 * (fv[:-1] + fv[1:])
    weights = cell_weights(spec, dt, v.n, settings)
    rhs = np.empty_like(lhs)
    rhs[0] = np.nan
    rhs[1:] = np.convolve(averages, weights)[: v.n]
    return lhs - rhs


def verify_convolved_rhs(
    spec: SymbolSpec,
    a: float,
    c: float,
    T: float,
    dt: float,
    levels: int = 3,
    settings: QuadratureSettings | None = None,
) -> RefinementReport:
    """Refinement study of the convolved right-hand side identity."""
    return _refine(
        lambda h: float(np.nanmax(np.abs(convolved_rhs_residual(spec, a, c, T, h, settings)))),
        dt, levels, 0.0,
    )


# =============================================================================
# Ladder property
# =============================================================================


def ladder_residual(
    spec: SymbolSpec,
    k: int,
    T: float,
    dt: float,
    levels: int = 3,
    t_min: float = 0.1,
    inversion: InversionSettings | None = None,
    settings: QuadratureSettings | None = None,
) -> RefinementReport:
    """Refinement study of max |D^Phi phi_k - phi_{k-1}| on t >= t_min."""
    if k < 1:
        raise ParameterDomainError("Ladder needs k >= 1", details={"k": k})

    def residual_at(h: float) -> float:
        t = uniform_grid(T, h)
        phi_k = np.array([moment_phi_k(spec, k, float(s), settings=inversion) for s in t])
        phi_prev = np.array([moment_phi_k(spec, k - 1, float(s), settings=inversion) for s in t])
        derivative = caputo_grid(spec, GridFunction(h, phi_k), settings)
        mask = _window(t, t_min)
        return float(np.max(np.abs(derivative[mask] - phi_prev[mask])))

    return _refine(residual_at, dt, levels, t_min)


# =============================================================================
# Closure of the variance identity
# =============================================================================


@dataclass(frozen=True)
class ClosureReport:
    """Residual of D^Phi u + sigma - f(u) on a grid."""

    t_grid: NDArray[np.float64]
    residual: NDArray[np.float64]
    t_min: float

    @property
    def max_abs(self) -> float:
        mask = _window(self.t_grid, self.t_min)
        return float(np.max(np.abs(self.residual[mask])))


def closure_residual(
    spec: SymbolSpec,
    u_hat: GridFunction,
    sigma_hat: GridFunction | None = None,
    rhs: Rhs = logistic_rhs,
    t_min: float = 0.1,
    settings: QuadratureSettings | None = None,
) -> ClosureReport:
    """Residual D^Phi u_hat(t_j) + sigma_hat(t_j) - f(u_hat(t_j)), j >= 1."""
    derivative = caputo_grid(spec, u_hat, settings)
    sigma = np.zeros_like(derivative) if sigma_hat is None else sigma_hat.at(u_hat.t_grid)
    f_u = np.array([rhs(float(x)) for x in u_hat.values])
    return ClosureReport(u_hat.t_grid, derivative + sigma - f_u, t_min)


# =============================================================================
# Delayed and rushed growth
# =============================================================================


class GrowthRegime(str, Enum):
    """Classification of the time-changed integral against the classical one."""

    DELAYED = "delayed"
    NEUTRAL = "neutral"
    RUSHED = "rushed"
    DIVERGENT = "divergent"


@dataclass(frozen=True)
class DelayedRushedReport:
    """Integral identity int_0^inf u dt = (lim Phi/lambda) int_0^T v dt.

    Attributes:
        lhs: Integral of the time-changed curve
        rhs: Limit times the classical integral (math.inf if divergent)
        integral_v: Classical integral of v over (0, T)
        limit: lim Phi(lambda)/lambda
        ratio: lhs / integral_v
        classification: Growth regime
        lhs_stderr: Monte Carlo standard error of lhs, when known
    """

    lhs: float
    rhs: float
    integral_v: float
    limit: float
    ratio: float
    classification: GrowthRegime
    lhs_stderr: float | None = None

    @property
    def z_score(self) -> float | None:
        if self.lhs_stderr is None or not math.isfinite(self.rhs) or self.lhs_stderr == 0:
            return None
        return (self.lhs - self.rhs) / self.lhs_stderr


def delayed_rushed_ratio(
    spec: SymbolSpec,
    v: GridFunction,
    mc_u: GridFunction | None = None,
    lhs: float | None = None,
    lhs_stderr: float | None = None,
    neutral_tol: float = 1e-9,
) -> DelayedRushedReport:
    """Compare the integral of u with (lim Phi/lambda) times that of v.

    The left side is the trapezoidal integral of mc_u (u extended by zero
    past its grid), or a precomputed value such as a pathwise Monte Carlo
    estimate. An infinite limit is reported as DIVERGENT, not raised.
    """
    integral_v = float(integrate.trapezoid(v.values, v.t_grid))
    limit = spec.phi_over_lambda_limit()
    if lhs is None:
        if mc_u is None:
            raise ParameterDomainError("delayed_rushed_ratio needs mc_u or lhs")
        lhs = float(integrate.trapezoid(mc_u.values, mc_u.t_grid))

    if not math.isfinite(limit):
        return DelayedRushedReport(
            lhs, math.inf, integral_v, limit, math.inf, GrowthRegime.DIVERGENT, lhs_stderr
        )

    ratio = lhs / integral_v
    if ratio > 1.0 + neutral_tol:
        regime = GrowthRegime.DELAYED
    elif ratio < 1.0 - neutral_tol:
        regime = GrowthRegime.RUSHED
    else:
        regime = GrowthRegime.NEUTRAL
    return DelayedRushedReport(lhs, limit * integral_v, integral_v, limit, ratio, regime, lhs_stderr)


# =============================================================================
# Young-type bound
# =============================================================================


@dataclass(frozen=True)
class YoungReport:
    """Discrete L1 norm of D^Phi v against (lim Phi/lambda) ||v'||_1."""

    norm_derivative: float
    bound: float
    slack: float

    @property
    def holds(self) -> bool:
        return self.norm_derivative <= self.bound * (1.0 + self.slack)


def young_bound(
    spec: SymbolSpec, v: GridFunction, slack: float = 1e-6,
    settings: QuadratureSettings | None = None,
) -> YoungReport:
    """Check ||D^Phi v||_1 <= (lim Phi/lambda) ||v'||_1 on the grid."""
    derivative = caputo_grid(spec, v, settings)[1:]
    norm = float(v.dt * np.sum(np.abs(derivative)))
    bound = spec.phi_over_lambda_limit() * float(np.sum(np.abs(np.diff(v.values))))
    return YoungReport(norm, bound, slack)
