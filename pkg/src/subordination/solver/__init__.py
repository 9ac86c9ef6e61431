"""Non-local solver module.

Provides:
- GridFunction and NonlocalProblem on uniform grids
- Cached convolution-quadrature weights of the Levy tail
- Caputo-type and RL-type discrete derivatives
- Implicit time march for D^Phi u + sigma = f(u)
- Numerical checks of the operator identities
"""

from .grid import (
    GridFunction,
    NonlocalProblem,
    linear_problem,
    logistic_problem,
    logistic_rhs,
    uniform_grid,
)
from .identities import (
    ClosureReport,
    DelayedRushedReport,
    GrowthRegime,
    RefinementReport,
    YoungReport,
    closure_residual,
    convolved_rhs_residual,
    delayed_rushed_ratio,
    ladder_residual,
    verify_convolved_rhs,
    young_bound,
)
from .ivp import solve_ivp
from .operators import apply_caputo_type, apply_rl_type, caputo_grid, rl_grid
from .weights import cell_weights, clear_weight_cache

__all__ = [
    "GridFunction",
    "NonlocalProblem",
    "uniform_grid",
    "logistic_rhs",
    "logistic_problem",
    "linear_problem",
    "cell_weights",
    "clear_weight_cache",
    "caputo_grid",
    "rl_grid",
    "apply_caputo_type",
    "apply_rl_type",
    "solve_ivp",
    "RefinementReport",
    "verify_convolved_rhs",
    "convolved_rhs_residual",
    "ladder_residual",
    "ClosureReport",
    "closure_residual",
    "GrowthRegime",
    "DelayedRushedReport",
    "delayed_rushed_ratio",
    "YoungReport",
    "young_bound",
]
