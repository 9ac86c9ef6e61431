"""Non-local logistic growth through inverse subordinators.

Toolkit featuring:
- Bernstein symbols with tails, densities and increment samplers
- Subordinator paths, their inverses and time-changed curves
- Mittag-Leffler, Wright and numerical Laplace inversion routines
- Fractional Euler series with radius estimation
- Convolution-quadrature solver for non-local Cauchy problems
- Monte Carlo estimators and a command suite emitting CSV artifacts
"""

__version__ = "0.3.0"
