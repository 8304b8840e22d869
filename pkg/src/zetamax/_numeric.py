"""Extended-precision phase reduction and the shifted-grid Dirichlet kernel.

Ordinates reach 2e7 and the phases t*log(n) reach ~3e8 radians, so float64
products lose ~1e-8 rad. All phases are formed in x87 long double
(64-bit mantissa) and reduced modulo 2*pi before leaving this module.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

import numpy as np

LD = np.longdouble
TWO_PI_LD = np.longdouble("6.283185307179586476925286766559005768")
PI_LD = np.longdouble("3.141592653589793238462643383279502884")

# elements per temporary (rows * columns) in blocked evaluations
BLOCK_ELEMS = 1 << 20

T = TypeVar("T")
R = TypeVar("R")


def as_ld(x) -> np.ndarray:
    return np.asarray(x, dtype=LD)


def reduce_phase(x_ld) -> np.ndarray:
    """Reduce a long-double phase into [0, 2*pi) and return float64."""
    r = np.fmod(x_ld, TWO_PI_LD)
    r = np.where(r < 0, r + TWO_PI_LD, r)
    return r.astype(np.float64)


class _LogCache:
    """Grows a cached long-double table of log(n), n = 1..N."""

    def __init__(self) -> None:
        self._logs = np.zeros(1, dtype=LD)  # log 1 = 0

    def get(self, n_max: int) -> np.ndarray:
        if n_max > self._logs.size:
            size = max(n_max, int(self._logs.size * 1.5))
            self._logs = np.log(np.arange(1, size + 1, dtype=LD))
        return self._logs[:n_max]


log_table = _LogCache()


def dirichlet_phase_sum(coef: np.ndarray, log_ld: np.ndarray, t) -> np.ndarray:
    """Sum_n coef[n] * exp(-i t log n) for scalar or 1-d ``t`` (float or long double).

    Blocked over both axes so temporaries stay below BLOCK_ELEMS; column
    blocks are reduced in order.
    """
    t_arr = np.atleast_1d(np.asarray(t))
    out = np.zeros(t_arr.shape, dtype=np.complex128)
    n = log_ld.size
    cols = min(max(1, n), BLOCK_ELEMS)
    rows = max(1, BLOCK_ELEMS // cols)
    for a in range(0, t_arr.size, rows):
        tt = as_ld(t_arr[a:a + rows])[:, None]
        for c in range(0, n, cols):
            ph = reduce_phase(tt * log_ld[None, c:c + cols])
            out[a:a + rows] += np.sum(coef[None, c:c + cols] * np.exp(-1j * ph), axis=1)
    return out if np.ndim(t) else out[0]


def grid_dirichlet_sum(
    coef: np.ndarray,
    log_ld: np.ndarray,
    t0: float,
    delta: float,
    count: int,
    resync_period: int = 1024,
    threads: int = 1,
) -> np.ndarray:
    """values[k] = sum_n coef[n] exp(-i (t0 + k*delta) log n), k < count.

    Each n carries a unit rotor exp(-i delta log n); phases advance by complex
    multiplication and are recomputed exactly at the start of every block of
    ``resync_period`` steps. Coefficients are split into fixed chunks whose
    partial sums are reduced in chunk order, so output is independent of
    ``threads``.
    """
    coef = np.asarray(coef, dtype=np.complex128)
    t0_ld, d_ld = LD(t0), LD(delta)
    rot_all = np.exp(-1j * reduce_phase(d_ld * log_ld))
    out = np.zeros(count, dtype=np.complex128)
    for start in range(0, count, resync_period):
        m = min(resync_period, count - start)
        width = max(1, BLOCK_ELEMS // m)
        chunks = [slice(c, min(c + width, coef.size)) for c in range(0, coef.size, width)]
        shift = t0_ld + LD(start) * d_ld

        def block(sl: slice) -> np.ndarray:
            lg = log_ld[sl]
            z = np.empty((m, lg.size), dtype=np.complex128)
            z[0] = coef[sl] * np.exp(-1j * reduce_phase(shift * lg))
            z[1:] = rot_all[sl]
            np.cumprod(z, axis=0, out=z)
            return z.sum(axis=1)

        for part in ordered_map(block, chunks, threads):
            out[start:start + m] += part
    return out


def ordered_map(fn: Callable[[T], R], items: Sequence[T] | Iterable[T], threads: int = 1) -> list[R]:
    """Map preserving input order; a thread pool only when ``threads > 1``."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
