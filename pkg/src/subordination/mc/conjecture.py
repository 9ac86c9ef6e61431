"""Collocation search for series coefficients of non-stable symbols.

Looks for u_bar(t) = sum_k E_k phi_k(t) with D u_bar = u_bar (1 - u_bar) on a
user-chosen time grid. The ladder identity D phi_k = phi_{k-1} makes
D u_bar = sum_{k>=1} E_k phi_{k-1} exact, so only the nonlinear right-hand
side needs iterating. The search reports residuals and asserts nothing
about existence.
"""

import logging
from dataclasses import dataclass
from typing import Any

import mpmath as mp
import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.config import InversionSettings
from ..core.errors import ConditioningError, ParameterDomainError
from ..special.moments import phi_k_table
from ..symbols.base import SymbolSpec

logger = logging.getLogger(__name__)

MAX_K = 25
MAX_ITERATIONS = 200


@dataclass(frozen=True)
class ConjectureResult:
    """Outcome of a collocation search.

    Attributes:
        coefficients: E_0..E_K (E_0 and E_1 pinned)
        t_grid: Collocation times
        residual: D u_bar - u_bar (1 - u_bar) on t_grid
        refined_t: Grid of doubled resolution used for recomputation
        refined_residual: Residual on refined_t
        condition_number: 2-norm condition number of the scaled design
        iterations: Fixed-point iterations performed
        converged: Whether the coefficient update fell below tolerance
        reg: Ridge parameter
    """

    coefficients: NDArray[np.float64]
    t_grid: NDArray[np.float64]
    residual: NDArray[np.float64]
    refined_t: NDArray[np.float64]
    refined_residual: NDArray[np.float64]
    condition_number: float
    iterations: int
    converged: bool
    reg: float

    @property
    def K(self) -> int:
        return self.coefficients.size - 1

    @property
    def trust_interval(self) -> tuple[float, float]:
        return float(self.t_grid[0]), float(self.t_grid[-1])

    @property
    def max_residual(self) -> float:
        return float(np.max(np.abs(self.residual)))

    @property
    def max_refined_residual(self) -> float:
        return float(np.max(np.abs(self.refined_residual)))


def refine_grid(t: NDArray[np.float64]) -> NDArray[np.float64]:
    """Interleave midpoints into a sorted grid."""
    out = np.empty(2 * t.size - 1)
    out[0::2] = t
    out[1::2] = 0.5 * (t[:-1] + t[1:])
    return out


def _series_residual(table: Any, E: list[Any]) -> NDArray[np.float64]:
    """D u_bar - u_bar (1 - u_bar) for every row of a phi_k table."""
    K = len(E) - 1
    out = np.empty(table.rows)
    for i in range(table.rows):
        u = mp.fsum(E[k] * table[i, k] for k in range(K + 1))
        du = mp.fsum(E[k] * table[i, k - 1] for k in range(1, K + 1))
        out[i] = float(du - u * (1 - u))
    return out


def conjecture_search(
    spec: SymbolSpec,
    u0: float,
    K: int,
    t_grid: ArrayLike,
    reg: float = 0.0,
    dps: int = 40,
    settings: InversionSettings | None = None,
) -> ConjectureResult:
    """Fit E_2..E_K by least-squares collocation with E_0, E_1 pinned.

    Args:
        spec: Symbol
        u0: Initial datum in (0, 1)
        K: Truncation order (2..25)
        t_grid: Positive collocation times inside the chosen trust interval
        reg: Ridge parameter on the column-scaled system
        dps: mpmath working digits
        settings: Laplace inversion settings for non-closed-form families

    Raises:
        ConditioningError: If the scaled design is numerically singular
    """
    if not 2 <= K <= MAX_K:
        raise ParameterDomainError(f"K must lie in [2, {MAX_K}]", details={"K": K})
    if not 0.0 < u0 < 1.0:
        raise ParameterDomainError("u0 must lie in (0, 1)", details={"u0": u0})
    if reg < 0:
        raise ParameterDomainError("reg must be nonnegative", details={"reg": reg})
    t = np.unique(np.asarray(t_grid, dtype=np.float64))
    t = t[t > 0]
    unknowns = K - 1
    if t.size < unknowns:
        raise ParameterDomainError(
            "Collocation needs at least K - 1 positive grid points",
            details={"points": int(t.size), "K": K},
        )

    logger.info(
        "Collocation search: family=%s K=%d points=%d trust=[%g, %g] reg=%g",
        spec.family.value, K, t.size, t[0], t[-1], reg,
    )
    table = phi_k_table(spec, K, t, dps=dps, settings=settings)
    M = t.size

    with mp.workdps(dps):
        E = [mp.mpf(u0), mp.mpf(u0) * (1 - mp.mpf(u0))] + [mp.mpf(0)] * unknowns

        # Unknown E_k (k >= 2) multiplies phi_{k-1}; columns scaled to unit max
        scale = []
        for k in range(2, K + 1):
            col_max = max(abs(table[i, k - 1]) for i in range(M))
            scale.append(col_max if col_max > 0 else mp.mpf(1))
        rows = M + (unknowns if reg > 0 else 0)
        A = mp.matrix(rows, unknowns)
        for i in range(M):
            for j, k in enumerate(range(2, K + 1)):
                A[i, j] = table[i, k - 1] / scale[j]
        if reg > 0:
            root = mp.sqrt(mp.mpf(reg))
            for j in range(unknowns):
                A[M + j, j] = root

        sv = mp.svd_r(A, compute_uv=False)
        s_min = min(abs(x) for x in sv)
        cond = mp.inf if s_min == 0 else max(abs(x) for x in sv) / s_min
        limit = mp.mpf(10) ** (dps - 8)
        if cond > limit:
            raise ConditioningError(
                "Collocation matrix is ill-conditioned",
                details={
                    "condition_number": float(cond),
                    "limit": float(limit),
                    "suggest_K": max(2, K - 4),
                    "suggest_tmax": float(t[-1]) / 2,
                    "suggest_reg": 1e-12,
                },
            )

        tol = mp.mpf(10) ** (-(dps // 2))
        converged = False
        iterations = 0
        b = mp.matrix(rows, 1)
        for iterations in range(1, MAX_ITERATIONS + 1):
            for i in range(M):
                u = mp.fsum(E[k] * table[i, k] for k in range(K + 1))
                b[i] = u * (1 - u) - E[1] * table[i, 0]
            x, _ = mp.qr_solve(A, b)
            update = [x[j] / scale[j] for j in range(unknowns)]
            change = max(abs(update[j] - E[j + 2]) for j in range(unknowns))
            size = max(mp.mpf(1), max(abs(c) for c in update))
            E[2:] = update
            if change <= tol * size:
                converged = True
                break

        residual = _series_residual(table, E)
        coefficients = np.array([float(c) for c in E])

    if not converged:
        logger.warning("Collocation iteration stopped after %d steps without settling", iterations)

    refined_t = refine_grid(t)
    refined = phi_k_table(spec, K, refined_t, dps=dps, settings=settings)
    with mp.workdps(dps):
        refined_residual = _series_residual(refined, E)

    logger.info(
        "Collocation done: iterations=%d cond=%.3g max residual=%.3g (refined %.3g)",
        iterations, float(cond), np.max(np.abs(residual)), np.max(np.abs(refined_residual)),
    )
    return ConjectureResult(
        coefficients=coefficients,
        t_grid=t,
        residual=residual,
        refined_t=refined_t,
        refined_residual=refined_residual,
        condition_number=float(cond),
        iterations=iterations,
        converged=converged,
        reg=reg,
    )
