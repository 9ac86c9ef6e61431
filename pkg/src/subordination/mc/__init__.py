"""Monte Carlo estimators and the collocation search."""

from .conjecture import ConjectureResult, conjecture_search, refine_grid
from .estimators import (
    Estimate,
    VarianceTable,
    estimate_functional,
    estimate_potential_integral,
    estimate_restricted,
    estimate_variance_sigma,
    variance_stderr,
)
from .sampler import (
    DEFAULT_SAMPLER,
    SamplerSettings,
    batch_rng,
    batch_sizes,
    sample_inverse_times,
    sample_stieltjes,
)

__all__ = [
    "DEFAULT_SAMPLER",
    "ConjectureResult",
    "Estimate",
    "SamplerSettings",
    "VarianceTable",
    "batch_rng",
    "batch_sizes",
    "conjecture_search",
    "estimate_functional",
    "estimate_potential_integral",
    "estimate_restricted",
    "estimate_variance_sigma",
    "refine_grid",
    "sample_inverse_times",
    "sample_stieltjes",
    "variance_stderr",
]
