"""Truncated Dirichlet series and the Poisson-kernel smoothing of zeta."""
from __future__ import annotations

import math

import numpy as np

from .._numeric import dirichlet_phase_sum, log_table
from ..errors import BudgetError, DomainError, ResolutionError
from .euler_maclaurin import euler_maclaurin_zeta
from .riemann_siegel import T_MIN, riemann_siegel_Z, theta
from .types import Method, ZetaValue

MAIN_SUM_BUDGET = 20_000_000


def zeta_main_sum(sigma: float, t: float, N: int | None = None) -> ZetaValue:
    """sum_{n<=N} n^-(sigma+it); N defaults to floor(|t|).

    The error estimate is the size of the first omitted Euler-Maclaurin
    term |N^(1-s)/(s-1)| + N^-sigma, which is ~t^-sigma when N = floor(t).
    """
    if sigma < 0.5:
        raise DomainError("sigma must be at least 1/2")
    if N is None:
        N = max(1, int(math.floor(abs(t))))
    if N < 1:
        raise DomainError("N must be at least 1")
    if N > MAIN_SUM_BUDGET:
        raise BudgetError(f"N={N} exceeds main-sum budget {MAIN_SUM_BUDGET}", budget=MAIN_SUM_BUDGET)
    if N == 1:
        return ZetaValue(1.0, 0.0, Method.MAIN_SUM, 1.0)
    logs = log_table.get(N)
    z = dirichlet_phase_sum(np.exp(-sigma * logs.astype(np.float64)), logs, t)
    s = complex(sigma, t)
    if s == 1:
        err = math.inf
    else:
        err = N ** (1 - sigma) / abs(s - 1) + N ** -sigma
    return ZetaValue(float(z.real), float(z.imag), Method.MAIN_SUM, float(err))


def critical_line_zeta(u) -> np.ndarray:
    """zeta(1/2 + iu) for an array of ordinates, Riemann-Siegel above T_MIN."""
    u = np.atleast_1d(np.asarray(u, dtype=np.float64))
    out = np.empty(u.size, dtype=np.complex128)
    hi = np.abs(u) >= T_MIN
    if np.any(hi):
        ua = np.abs(u[hi])
        z = riemann_siegel_Z(ua) * np.exp(-1j * theta(ua))
        out[hi] = np.where(u[hi] < 0, np.conj(z), z)
    for i in np.flatnonzero(~hi):
        out[i] = euler_maclaurin_zeta(0.5, float(u[i]), target_abs_error=1e-12).value
    return out


def poisson_kernel_mass(a: float, v_cutoff: float) -> float:
    """Mass of (1/pi) a/(a^2+v^2) on [-v_cutoff, v_cutoff]."""
    return 2 / math.pi * math.atan(v_cutoff / a)


def poisson_smoothed_zeta(sigma: float, t: float, v_cutoff: float, step: float,
                          check_resolution: bool = True) -> ZetaValue:
    """(1/pi) int_{|v|<=v_cutoff} zeta(1/2+i(t+v)) a/(a^2+v^2) dv, a = sigma - 1/2.

    Composite Simpson on a grid of width ``step``. The error estimate combines
    the Richardson difference against the 2*step rule and the omitted kernel
    mass times the largest sampled |zeta|. ``check_resolution=False`` lets
    convergence studies use steps coarser than a/4.
    """
    a = sigma - 0.5
    if a <= 0:
        raise DomainError("sigma must exceed 1/2")
    if v_cutoff < 10 * a:
        raise DomainError("v_cutoff must be at least 10*(sigma - 1/2)")
    if step <= 0:
        raise DomainError("step must be positive")
    if check_resolution and step > a / 4 * (1 + 1e-9):
        raise ResolutionError(f"step {step:g} coarser than kernel width/4 = {a / 4:g}")
    m = int(math.ceil(v_cutoff / step))
    m += m % 2  # even count, and divisible by 4 below for the half rule
    if m % 4:
        m += 2
    h = v_cutoff / m
    v = np.linspace(-v_cutoff, v_cutoff, 2 * m + 1)
    f = critical_line_zeta(t + v) * (a / math.pi) / (a * a + v * v)

    def simpson(vals: np.ndarray, hh: float) -> complex:
        w = np.ones(vals.size)
        w[1:-1:2] = 4
        w[2:-1:2] = 2
        return complex(np.sum(w * vals) * hh / 3)

    fine = simpson(f, h)
    coarse = simpson(f[::2], 2 * h)
    outside = 1 - poisson_kernel_mass(a, v_cutoff)
    zmax = float(np.max(np.abs(f) * math.pi * (a * a + v * v) / a))
    err = abs(fine - coarse) / 15 + outside * zmax
    return ZetaValue(fine.real, fine.imag, Method.POISSON_SMOOTHED, float(err))
