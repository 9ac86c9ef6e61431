"""Implicit time march for D^Phi u + sigma = f(u).

Each step solves the scalar equation

    x = u_{j-1} + (dt / W_0) (f(x) - sigma_j) - H_j / W_0,

with H_j = sum_{m=1}^{j-1} (u_m - u_{m-1}) W_{j-m} the history term, by
fixed-point iteration with a bracketing fallback. The identity symbol is
marched with the trapezoidal rule.
"""

import logging
from collections.abc import Callable

import numpy as np
from numpy.typing import NDArray
from scipy import optimize

from ..core.config import Family, QuadratureSettings, SolverSettings
from ..core.errors import IterationError, StepSizeError
from .grid import GridFunction, NonlocalProblem
from .weights import cell_weights

logger = logging.getLogger(__name__)

DEFAULT_SOLVER = SolverSettings()


def _solve_step(
    g: Callable[[float], float], guess: float, j: int, settings: SolverSettings
) -> float:
    """Solve x = g(x) near guess."""
    x = guess
    for _ in range(settings.max_iterations):
        x_new = g(x)
        if abs(x_new - x) <= settings.tol * max(1.0, abs(x_new)):
            return x_new
        x = x_new

    def residual(y: float) -> float:
        return y - g(y)

    width = max(1e-3, abs(x - guess))
    for _ in range(40):
        lo, hi = guess - width, guess + width
        if residual(lo) * residual(hi) <= 0:
            try:
                return float(optimize.brentq(residual, lo, hi, xtol=settings.tol))
            except (ValueError, RuntimeError):
                break
        width *= 2.0
    raise IterationError(
        "Implicit step did not converge",
        details={"step": j, "last_iterate": x, "guess": guess, "max_iterations": settings.max_iterations},
    )


def _march_trapezoid(
    problem: NonlocalProblem, sigma: NDArray[np.float64], settings: SolverSettings
) -> NDArray[np.float64]:
    dt, f = problem.dt, problem.rhs
    q = 0.5 * dt * problem.lipschitz
    if q >= 1.0:
        raise StepSizeError(
            "Step too large for the implicit trapezoidal contraction",
            details={"dt": dt, "contraction": q},
        )
    u = np.empty(sigma.size)
    u[0] = problem.u0
    for j in range(1, u.size):
        known = u[j - 1] + 0.5 * dt * (f(u[j - 1]) - sigma[j - 1] - sigma[j])

        def g(x: float, known: float = known) -> float:
            return known + 0.5 * dt * f(x)

        u[j] = _solve_step(g, u[j - 1], j, settings)
    return u


def _march_l1(
    problem: NonlocalProblem,
    sigma: NDArray[np.float64],
    settings: SolverSettings,
    quadrature: QuadratureSettings | None,
) -> NDArray[np.float64]:
    n = sigma.size - 1
    dt, f = problem.dt, problem.rhs
    weights = cell_weights(problem.spec, dt, n, quadrature)
    w0 = weights[0]
    q = dt * problem.lipschitz / w0
    if q >= 1.0:
        raise StepSizeError(
            "Step too large for the implicit L1 contraction",
            details={"dt": dt, "contraction": q, "leading_weight": w0},
        )

    u = np.empty(n + 1)
    u[0] = problem.u0
    increments = np.zeros(n)
    for j in range(1, n + 1):
        history = float(np.dot(increments[: j - 1], weights[j - 1 : 0 : -1])) if j > 1 else 0.0
        base = u[j - 1] - history / w0 - dt * sigma[j] / w0

        def g(x: float, base: float = base) -> float:
            return base + dt * f(x) / w0

        u[j] = _solve_step(g, u[j - 1], j, settings)
        increments[j - 1] = u[j] - u[j - 1]
    return u


def solve_ivp(
    problem: NonlocalProblem,
    settings: SolverSettings | None = None,
    quadrature: QuadratureSettings | None = None,
) -> GridFunction:
    """March the non-local Cauchy problem on its grid.

    Returns:
        Solution u as a GridFunction with u(0) = u0

    Raises:
        StepSizeError: If the implicit step is not a contraction
        IterationError: If a scalar step does not converge
    """
    settings = settings or DEFAULT_SOLVER
    sigma = problem.sigma_on_grid()
    if problem.spec.family == Family.IDENTITY:
        values = _march_trapezoid(problem, sigma, settings)
    else:
        values = _march_l1(problem, sigma, settings, quadrature)
    logger.info(
        "Solved %s problem: family=%s T=%g dt=%g u(T)=%.10g",
        problem.rhs_name, problem.spec.family.value, problem.T, problem.dt, values[-1],
    )
    return GridFunction(problem.dt, values, problem.u0)
