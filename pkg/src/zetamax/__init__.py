"""Desk-scale numerical laboratory for maxima of log|zeta| on short intervals.

Modules:
    arith      prime sieve and multiplicative functions
    zeta       Euler-Maclaurin and Riemann-Siegel evaluators, interval maxima
    dirichlet  prime partitions, Dirichlet polynomials, mollifier
    gaussmodel branching random walk surrogate
    stats      Gaussian predictions and Monte Carlo estimators
    harness    configuration, experiments and the ``zetamax`` CLI
"""

__version__ = "0.1.0"
