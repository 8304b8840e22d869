"""Maximum of log|zeta(1/2+iu)| over a short interval, and the Sobolev check."""
from __future__ import annotations

import math
from typing import Callable

import numpy as np

from ..errors import DegenerateInputError, DomainError
from .euler_maclaurin import euler_maclaurin_grid
from .riemann_siegel import riemann_siegel_Z
from .types import IntervalMax

GOLDEN = (math.sqrt(5) - 1) / 2

Evaluator = Callable[[np.ndarray], np.ndarray]


def _default_evaluator(u: np.ndarray) -> np.ndarray:
    return riemann_siegel_Z(u)


def interval_max_log_abs_zeta(t: float, half_width: float = 1.0, points_per_log_unit: float = 2.0,
                              refine_iters: int = 30, evaluator: Evaluator | None = None) -> IntervalMax:
    """Scan |u - t| <= half_width on ceil(2 hw ppl log t) points, then golden-section refine.

    ``evaluator`` maps an array of ordinates to real or complex values whose
    modulus is |zeta(1/2+iu)|; the default is Riemann-Siegel Z.
    """
    if t < 100:
        raise DomainError("t must be at least 100")
    if not 0 < half_width <= 2:
        raise DomainError("half_width must lie in (0, 2]")
    if points_per_log_unit < 1:
        raise DomainError("points_per_log_unit must be at least 1")
    ev = evaluator or _default_evaluator
    n = max(2, int(math.ceil(2 * half_width * points_per_log_unit * math.log(t))))
    u = np.linspace(t - half_width, t + half_width, n)
    mod = np.abs(np.asarray(ev(u)))
    if not np.all(np.isfinite(mod)):
        raise DegenerateInputError("evaluator returned non-finite values")
    if np.all(mod == 0):
        raise DegenerateInputError("modulus vanishes at every grid point")
    spacing = u[1] - u[0]
    k = int(np.argmax(mod))
    u_star, best = float(u[k]), float(mod[k])
    refined = refine_iters > 0
    if refined:
        lo = max(t - half_width, u_star - spacing)
        hi = min(t + half_width, u_star + spacing)
        f = lambda x: float(np.abs(np.asarray(ev(np.array([x]))))[0])
        x1 = hi - GOLDEN * (hi - lo)
        x2 = lo + GOLDEN * (hi - lo)
        f1, f2 = f(x1), f(x2)
        for _ in range(refine_iters):
            if f1 >= f2:
                hi, x2, f2 = x2, x1, f1
                x1 = hi - GOLDEN * (hi - lo)
                f1 = f(x1)
            else:
                lo, x1, f1 = x1, x2, f2
                x2 = lo + GOLDEN * (hi - lo)
                f2 = f(x2)
        for x, fx in ((x1, f1), (x2, f2)):
            if fx > best:
                u_star, best = x, fx
    return IntervalMax(t_center=float(t), u_star=float(u_star), value=math.log(best), grid_spacing=float(spacing),
                       refined=refined, half_width=float(half_width), grid_points=n)


def sobolev_check(t: float, points: int = 2001, threads: int = 1) -> tuple[float, float]:
    """Both sides of max_{|v|<=1}|f|^2 <= (|f(1)|^2+|f(-1)|^2)/2 + int_{-1}^{1}|f f'| dv.

    f(v) = zeta(1/2 + i(t+v)). The left side comes from the refined interval
    maximum; the integral uses Simpson on ``points`` (odd) nodes, with zeta
    and zeta' from the Euler-Maclaurin grid evaluator.
    """
    if points % 2 == 0:
        points += 1
    delta = 2.0 / (points - 1)
    f, _ = euler_maclaurin_grid(0.5, t - 1, delta, points, threads=threads)
    df, _ = euler_maclaurin_grid(0.5, t - 1, delta, points, derivative_order=1, threads=threads)
    w = np.ones(points)
    w[1:-1:2] = 4
    w[2:-1:2] = 2
    integral = float(np.sum(w * np.abs(f) * np.abs(df)) * delta / 3)
    rhs = (abs(f[0]) ** 2 + abs(f[-1]) ** 2) / 2 + integral
    if t >= 101:
        lhs = math.exp(2 * interval_max_log_abs_zeta(t, 1.0, 4.0).value)
    else:
        lhs = float(np.max(np.abs(f)) ** 2)
    return lhs, rhs
