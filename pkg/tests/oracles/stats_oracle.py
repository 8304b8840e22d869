"""Independent references for the stats module."""
from fractions import Fraction
from math import factorial

import mpmath


def psi(x, dps=30):
    """Gaussian upper tail by direct quadrature of the density."""
    with mpmath.workdps(dps):
        x = mpmath.mpf(x)
        return float(mpmath.quad(lambda u: mpmath.exp(-u * u / 2), [x, mpmath.inf]) / mpmath.sqrt(2 * mpmath.pi))


def bessel_moment(products, k):
    """k-th derivative at 0 of prod I_0(sqrt(c) z), exact rational arithmetic in z."""
    # coefficients of z^(2n) in I_0(sqrt(c) z): c^n / (4^n n!^2)
    poly = [Fraction(1)]
    for c in products:
        c = Fraction(c)
        fac = [c ** n / (4 ** n * factorial(n) ** 2) for n in range(k // 2 + 1)]
        new = [Fraction(0)] * (k // 2 + 1)
        for i, a in enumerate(poly):
            for j, b in enumerate(fac):
                if i + j <= k // 2:
                    new[i + j] += a * b
        poly = new
    if k % 2:
        return Fraction(0)
    return factorial(k) * poly[k // 2]


def gaussian_sum_moment(variance, n):
    """E[N(0, variance)^n]."""
    if n % 2:
        return 0.0
    return float(factorial(n) / (2 ** (n // 2) * factorial(n // 2))) * variance ** (n // 2)
