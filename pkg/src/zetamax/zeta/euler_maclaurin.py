"""Euler-Maclaurin summation for zeta(s) and zeta'(s).

    zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
              + sum_{k=1..m} B_2k/(2k)! s(s+1)...(s+2k-2) N^(1-s-2k) + R_m

with |R_m| <= |next term| * |s+2m+1| / (sigma+2m+1). N starts near 1.3|t|/(2 pi)
and is doubled whenever the correction terms stop shrinking before the target.
"""
from __future__ import annotations

import math
from functools import lru_cache

import mpmath
import numpy as np

from .._numeric import dirichlet_phase_sum, grid_dirichlet_sum, log_table
from ..errors import DomainError, PrecisionError
from .types import Method, ZetaValue

MAX_TERMS = 50_000_000
MAX_CORRECTIONS = 160
EPS = np.finfo(np.float64).eps
EPS_LD = float(np.finfo(np.longdouble).eps)


@lru_cache(maxsize=1)
def _bernoulli_ratios() -> np.ndarray:
    """c_k = B_2k/(2k)! for k = 1..MAX_CORRECTIONS+1 as float64."""
    mpmath.mp.dps = max(mpmath.mp.dps, 30)
    return np.array([float(mpmath.bernoulli(2 * k) / mpmath.factorial(2 * k))
                     for k in range(1, MAX_CORRECTIONS + 2)])


def _initial_n(sigma: float, t: float) -> int:
    return int(math.ceil(1.3 * abs(t) / (2 * math.pi))) + 10


def _tail(s: complex, N: int, target: float, derivative: bool):
    """Boundary and Bernoulli terms at N.

    Returns (value, derivative_value, remainder_bound) or None when the
    asymptotic series turns before reaching ``target``.
    """
    c = _bernoulli_ratios()
    logN = math.log(N)
    Ns = np.exp(-s * logN)  # N^-s
    val = N * Ns / (s - 1) + Ns / 2
    dval = -logN * N * Ns / (s - 1) - N * Ns / (s - 1) ** 2 - logN * Ns / 2
    term = c[0] * s * Ns / N  # B_2/2! s N^(-1-s)
    dlog = 1 / s  # d/ds log of the rising product s(s+1)...(s+2k-2)
    prev = math.inf
    for k in range(1, MAX_CORRECTIONS + 1):
        mag = abs(term)
        if mag > prev and mag > target:
            return None
        nxt = term * (c[k] / c[k - 1]) * (s + 2 * k - 1) * (s + 2 * k) / (N * N)
        bound = abs(nxt) * abs(s + 2 * k + 1) / (s.real + 2 * k + 1)
        if derivative:
            bound *= logN + abs(dlog) + 2 * k / max(abs(s), 1.0) + 1
        val += term
        dval += term * (dlog - logN)
        if bound < 0.25 * target:
            return val, dval, bound
        prev = mag
        term = nxt
        dlog += 1 / (s + 2 * k - 1) + 1 / (s + 2 * k)
    return None


def _rounding(sigma: float, t: float, N: int) -> float:
    """Float64 accumulation error plus the long-double phase error t*log(n)*eps."""
    logN = math.log(N)
    if abs(1 - sigma) > 1e-9:
        l1 = (N ** (1 - sigma) - 1) / (1 - sigma)
    else:
        l1 = logN
    if sigma > 0.5 + 1e-9:
        l2 = min(1 + 1 / (2 * sigma - 1), logN + 1)
    elif sigma >= 0.5 - 1e-9:
        l2 = logN + 1
    else:
        l2 = N ** (1 - 2 * sigma) / (1 - 2 * sigma)
    return 4 * EPS * (1 + l1) + 4 * abs(t) * logN * EPS_LD * math.sqrt(l2)


def _check_domain(sigma: float, t: float, target: float) -> None:
    if not 0.4 <= sigma <= 2:
        raise DomainError(f"sigma={sigma} outside [0.4, 2]")
    if abs(t) > 1e8:
        raise DomainError(f"|t|={abs(t):g} exceeds 1e8")
    if target < 1e-14:
        raise DomainError("target_abs_error must be at least 1e-14")


def _plan(sigma: float, t: float, target: float, derivative: bool):
    s = complex(sigma, abs(t))
    N = _initial_n(sigma, t)
    while N <= MAX_TERMS:
        rnd = _rounding(sigma, t, N)
        if rnd > target:
            raise PrecisionError(f"rounding error ~{rnd:.1e} exceeds target {target:.1e} at t={t:g}")
        tail = _tail(s, N, target - rnd, derivative)
        if tail is not None:
            return N, tail, rnd
        N *= 2
    raise PrecisionError(f"target {target:.1e} unattainable within {MAX_TERMS} terms")


def euler_maclaurin_zeta(sigma: float, t: float, derivative_order: int = 0,
                         target_abs_error: float = 1e-10) -> ZetaValue:
    """zeta(sigma + it), or zeta' when ``derivative_order`` is 1."""
    _check_domain(sigma, t, target_abs_error)
    if derivative_order not in (0, 1):
        raise DomainError("derivative_order must be 0 or 1")
    if sigma == 1 and t == 0:
        raise DomainError("pole at s = 1")
    deriv = derivative_order == 1
    N, (tv, tdv, bound), rnd = _plan(sigma, t, target_abs_error, deriv)
    logs = log_table.get(N - 1)
    lf = logs.astype(np.float64)
    coef = np.exp(-sigma * lf)
    if deriv:
        coef = -lf * coef
        rnd *= math.log(N) + 1
    head = dirichlet_phase_sum(coef, logs, abs(t))
    z = head + (tdv if deriv else tv)
    if t < 0:
        z = z.conjugate()
    return ZetaValue(float(z.real), float(z.imag), Method.EULER_MACLAURIN, float(bound + rnd))


def euler_maclaurin_grid(sigma: float, t0: float, delta: float, count: int,
                         derivative_order: int = 0, target_abs_error: float = 1e-8,
                         threads: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Values at t0 + k*delta, k < count, with one shared truncation N.

    The head sum runs through the rotation recurrence; tails are per point.
    Returns (values, error_estimates). Requires t0 >= 0.
    """
    if t0 < 0 or delta <= 0:
        raise DomainError("grid requires t0 >= 0 and delta > 0")
    t_hi = t0 + delta * (count - 1)
    _check_domain(sigma, t_hi, target_abs_error)
    deriv = derivative_order == 1
    N, _, _ = _plan(sigma, t_hi, target_abs_error, deriv)
    logs = log_table.get(N - 1)
    lf = logs.astype(np.float64)
    coef = np.exp(-sigma * lf)
    if deriv:
        coef = -lf * coef
    head = grid_dirichlet_sum(coef, logs, t0, delta, count, threads=threads)
    errs = np.empty(count)
    for k in range(count):
        t = t0 + k * delta
        s = complex(sigma, t)
        tail = _tail(s, N, target_abs_error / 2, deriv)
        if tail is None:
            raise PrecisionError(f"tail diverged at t={t:g}")
        head[k] += tail[1] if deriv else tail[0]
        errs[k] = tail[2] + _rounding(sigma, t, N) * (math.log(N) + 1 if deriv else 1)
    return head, errs
