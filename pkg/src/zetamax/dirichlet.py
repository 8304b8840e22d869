"""Prime partitions and the Dirichlet polynomials built on them.

For height T and depth K:

    X      = exp((log T)^(1 - 1/K))
    sigma0 = 1/2 + (log T)^(3/(2K)) / log T
    J_0    = [2, exp((log T)^(1/K))],   J_j = (exp((log T)^(j/K)), exp((log T)^((j+1)/K))]

with j = 0..K-2, so the ranges tile [2, X]. P~_j(u) = sum_{p in J_j} p^(-sigma0-iu)
and P_j = Re P~_j; the script-P_j also carry the prime powers in J_j with
weight Lambda(n)/log n.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.special import exp1, sici

from ._numeric import LD, dirichlet_phase_sum, grid_dirichlet_sum, reduce_phase
from .arith import DEFAULT_TERM_BUDGET, PrimeTable, cached_table, mollifier_terms
from .errors import CoverageError, DomainError, ResyncError

GRID_TOLERANCE = 1e-9
MOLLIFIER_TERM_BUDGET = DEFAULT_TERM_BUDGET


@dataclass(frozen=True, eq=False)
class PrimeLayer:
    """Primes of one range J_j with weights p^-sigma0, plus the prime powers in J_j."""

    j: int
    lo: float
    hi: float
    primes: np.ndarray
    log_p: np.ndarray
    log_ld: np.ndarray
    weight: np.ndarray
    power_n: np.ndarray  # prime powers p^k, k >= 2, inside J_j
    power_coef: np.ndarray  # (1/k) n^-sigma0
    power_log_ld: np.ndarray

    def __len__(self) -> int:
        return int(self.primes.size)


@dataclass(frozen=True, eq=False)
class Partition:
    T: float
    K: int
    X: float
    sigma0: float
    layers: tuple[PrimeLayer, ...]
    table: PrimeTable = field(repr=False)
    sigma0_overridden: bool = False
    X_overridden: bool = False

    @property
    def log_T(self) -> float:
        return math.log(self.T)

    @property
    def loglog_T(self) -> float:
        return math.log(math.log(self.T))

    @property
    def ranges(self) -> list[tuple[float, float]]:
        """(lo, hi) per layer; J_0 is closed at 2, the others are (lo, hi]."""
        return [(ly.lo, ly.hi) for ly in self.layers]

    def describe(self) -> dict:
        return {
            "T": self.T, "K": self.K, "X": self.X, "sigma0": self.sigma0,
            "sigma0_overridden": self.sigma0_overridden, "X_overridden": self.X_overridden,
            "ranges": [{"j": ly.j, "lo": ly.lo, "hi": ly.hi, "primes": len(ly),
                        "prime_powers": int(ly.power_n.size)} for ly in self.layers],
        }


def partition_bounds(T: float, K: int) -> list[float]:
    """Range endpoints exp((log T)^(j/K)) for j = 1..K-1, the last being X."""
    L = math.log(T)
    return [math.exp(L ** (j / K)) for j in range(1, K)]


def _layer(j: int, lo: float, hi: float, sigma0: float, table: PrimeTable, closed: bool) -> PrimeLayer:
    ps = table.primes_between(lo, hi, lo_closed=closed)
    log_ld = np.log(ps.astype(LD))
    log_p = log_ld.astype(np.float64)
    pw_n, pw_c = [], []
    for p in table.primes_between(1, math.sqrt(hi)):
        p = int(p)
        n, k = p * p, 2
        while n <= hi:
            if n > lo or (closed and n >= lo):
                pw_n.append(n)
                pw_c.append(n ** -sigma0 / k)
            n *= p
            k += 1
    order = np.argsort(pw_n, kind="stable")
    pw_n = np.asarray(pw_n, dtype=np.int64)[order]
    pw_c = np.asarray(pw_c, dtype=np.float64)[order]
    return PrimeLayer(j=j, lo=lo, hi=hi, primes=ps, log_p=log_p, log_ld=log_ld,
                      weight=np.exp(-sigma0 * log_p), power_n=pw_n, power_coef=pw_c,
                      power_log_ld=np.log(pw_n.astype(LD)))


def make_partition(T: float, K: int, sigma0_override: float | None = None,
                   table: PrimeTable | None = None, X_override: float | None = None) -> Partition:
    """Build the partition of the primes below X into K-1 ranges.

    ``X_override`` replaces X (the last endpoint); inner endpoints above it
    are clipped, leaving empty layers. It exists for limit studies and is
    recorded on the result.
    """
    if not T >= math.exp(math.e):
        raise DomainError("T must be at least e^e so that log log T > 0")
    if K < 4:
        raise DomainError("K must be at least 4")
    L = math.log(T)
    bounds = partition_bounds(T, K)
    X = bounds[-1] if X_override is None else float(X_override)
    bounds = [min(b, X) for b in bounds[:-1]] + [X]
    sigma0 = 0.5 + L ** (3 / (2 * K)) / L if sigma0_override is None else float(sigma0_override)
    need = int(math.floor(X))
    if table is None:
        table = cached_table(max(need, 2))
    if table.limit < need:
        raise CoverageError(f"prime table limit {table.limit} below X = {X:.6g}", required_limit=need)
    edges = [2.0] + bounds
    layers = tuple(_layer(j, edges[j], edges[j + 1], sigma0, table, closed=(j == 0))
                   for j in range(K - 1))
    return Partition(T=float(T), K=int(K), X=X, sigma0=sigma0, layers=layers, table=table,
                     sigma0_overridden=sigma0_override is not None, X_overridden=X_override is not None)


def _check_j(p: Partition, j: int) -> PrimeLayer:
    if not 0 <= j <= p.K - 2:
        raise DomainError(f"layer index {j} outside 0..{p.K - 2}")
    return p.layers[j]


class LayerCovariance(NamedTuple):
    s2: float
    rho: float
    asymptotic_s2: float
    asymptotic_rho: float


def layer_covariance(p: Partition, j: int, tau: float) -> LayerCovariance:
    """Exact s_j^2 and rho_j(tau) from the prime sums, and their asymptotic forms.

    The asymptotic rho is log log T/(2K) when |tau| <= (log T)^(-(j+1)/K), zero
    when |tau| >= (log T)^(-j/K), and in between the prime-number-theorem
    integral (1/2) int cos(tau u)/u du over log J_j.
    """
    ly = _check_j(p, j)
    if abs(tau) > 1:
        raise DomainError("|tau| must be at most 1")
    w2 = ly.weight ** 2
    s2 = 0.5 * float(np.sum(w2))
    rho = 0.5 * float(np.sum(w2 * np.cos(tau * ly.log_p)))
    L = p.log_T
    a_s2 = p.loglog_T / (2 * p.K)
    if abs(tau) <= L ** (-(j + 1) / p.K):
        a_rho = a_s2
    elif abs(tau) >= L ** (-j / p.K):
        a_rho = 0.0
    else:
        lo, hi = math.log(max(ly.lo, 2.0)), math.log(ly.hi)
        a_rho = 0.5 * float(sici(abs(tau) * hi)[1] - sici(abs(tau) * lo)[1])
    return LayerCovariance(s2, rho, a_s2, a_rho)


def eval_prime_poly(p: Partition, j: int, u):
    """P~_j(u) = sum_{p in J_j} p^(-sigma0 - iu); scalar or array ``u``."""
    ly = _check_j(p, j)
    return dirichlet_phase_sum(ly.weight, ly.log_ld, u)


def eval_P(p: Partition, j: int, u):
    """P_j(u) = Re P~_j(u)."""
    return np.real(eval_prime_poly(p, j, u))


def eval_fancy_poly(p: Partition, j: int, u):
    """Script-P_j(u): the prime powers n in J_j weighted by Lambda(n)/log n."""
    ly = _check_j(p, j)
    return eval_prime_poly(p, j, u) + dirichlet_phase_sum(ly.power_coef, ly.power_log_ld, u)


def eval_fancy_total(p: Partition, u):
    return sum(eval_fancy_poly(p, j, u) for j in range(p.K - 1))


def eval_Q(p: Partition, t):
    """Q(t) = sum_j (script-P_j - P~_j)(t): the prime-power part."""
    out = 0
    for ly in p.layers:
        out = out + dirichlet_phase_sum(ly.power_coef, ly.power_log_ld, t)
    return out


def q_square_approx(p: Partition, t):
    """(1/2) sum_{p <= sqrt X} p^(-2 sigma0 - 2it)."""
    ps = p.table.primes_between(1, math.sqrt(p.X))
    log_ld = np.log(ps.astype(LD))
    return 0.5 * dirichlet_phase_sum(np.exp(-2 * p.sigma0 * log_ld.astype(np.float64)), 2 * log_ld, t)


def cube_tail_bound(p: Partition) -> float:
    """sum over p^k <= X with k >= 3 of p^(-k sigma0)."""
    total = 0.0
    for q in p.table.primes_between(1, p.X ** (1 / 3)):
        q = int(q)
        n = q ** 3
        while n <= p.X:
            total += n ** -p.sigma0
            n *= q
    return total


@dataclass(frozen=True, eq=False)
class PolyGrid:
    j: int
    t0: float
    delta: float
    count: int
    values: np.ndarray
    resync_period: int
    max_validation_error: float = 0.0

    @property
    def u(self) -> np.ndarray:
        return self.t0 + self.delta * np.arange(self.count)

    def to_csv(self, path) -> None:
        """Columns k, u, re, im; floats written with repr for exact round trips."""
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["k", "u", "re", "im"])
            for k, (u, v) in enumerate(zip(self.u, self.values)):
                w.writerow([k, repr(float(u)), repr(float(v.real)), repr(float(v.imag))])


def _validation_indices(count: int) -> list[int]:
    picks = {0, count - 1, count // 2, count // 3, (2 * count) // 3}
    return sorted(k for k in picks if 0 <= k < count)


def eval_grid(p: Partition, j: int, t0: float, delta: float, count: int, resync_period: int = 1024,
              threads: int = 1, validate: bool = True) -> PolyGrid:
    """P~_j on t0 + k*delta, k < count, by per-prime phase rotation.

    Validation compares against direct evaluation at a few grid points;
    errors are measured relative to sum_p p^-sigma0, the natural scale of
    the polynomial.
    """
    ly = _check_j(p, j)
    if count < 1:
        raise DomainError("count must be at least 1")
    if delta <= 0:
        raise DomainError("delta must be positive")
    if resync_period < 16:
        raise DomainError("resync_period must be at least 16")
    vals = grid_dirichlet_sum(ly.weight, ly.log_ld, t0, delta, count, resync_period, threads)
    worst = 0.0
    if validate and len(ly):
        idx = _validation_indices(count)
        u = LD(t0) + LD(delta) * np.asarray(idx, dtype=LD)
        direct = dirichlet_phase_sum(ly.weight, ly.log_ld, u)
        scale = float(np.sum(ly.weight))
        worst = float(np.max(np.abs(vals[idx] - direct))) / scale
        if worst > GRID_TOLERANCE:
            raise ResyncError(f"grid drift {worst:.2e} exceeds {GRID_TOLERANCE:g}; "
                              f"use a resync_period below {resync_period}")
    return PolyGrid(j=j, t0=float(t0), delta=float(delta), count=int(count), values=vals,
                    resync_period=int(resync_period), max_validation_error=worst)


def default_nu(p: Partition) -> int:
    """nu = 100 K log log T."""
    return int(math.floor(100 * p.K * p.loglog_T))


def default_cap(p: Partition, nu: int) -> int:
    """X^min(nu, 3), held to at most MOLLIFIER_TERM_BUDGET."""
    return int(min(p.X ** min(nu, 3), MOLLIFIER_TERM_BUDGET))


@dataclass(frozen=True)
class MollifierValue:
    value: complex
    term_count: int
    nu: int
    cap: float
    tail_bound: float  # sum of n^-sigma0 over qualifying n beyond the cap
    exact: bool

    def __complex__(self) -> complex:
        return self.value


def _mollifier_primes(p: Partition) -> np.ndarray:
    ps = p.table.primes_between(1, p.X)
    return ps[ps < p.X]


def _esp_sums(x: np.ndarray, nu: int) -> np.ndarray:
    """e_0..e_nu of the entries of x (last axis), by the product recurrence."""
    m = min(nu, x.shape[-1])
    e = np.zeros(x.shape[:-1] + (m + 1,), dtype=x.dtype)
    e[..., 0] = 1
    for i in range(x.shape[-1]):
        hi = min(i + 1, m)
        e[..., 1:hi + 1] = e[..., 1:hi + 1] + x[..., i, None] * e[..., 0:hi]
    return e


def mollifier_abs_mass(p: Partition, nu: int) -> float:
    """sum of n^-sigma0 over all squarefree n with prime factors < X and omega(n) <= nu."""
    w = np.exp(-p.sigma0 * np.log(_mollifier_primes(p).astype(np.float64)))
    return float(np.sum(_esp_sums(w, nu)))


def eval_mollifier(p: Partition, t: float, nu: int | None = None, cap: float | None = None,
                   budget: int = MOLLIFIER_TERM_BUDGET) -> MollifierValue:
    """M(sigma0 + it) summed over the enumerated terms n <= cap."""
    if nu is None:
        nu = default_nu(p)
    if cap is None:
        cap = default_cap(p, nu)
    if cap < 1:
        raise DomainError("cap must be at least 1")
    ns, signs = [], []
    for term in mollifier_terms(p.X, nu, cap, budget=budget, table=p.table):
        ns.append(term.n)
        signs.append(term.sign)
    n = np.asarray(ns, dtype=np.int64)
    log_ld = np.log(n.astype(LD))
    mag = np.exp(-p.sigma0 * log_ld.astype(np.float64))
    val = complex(dirichlet_phase_sum(np.asarray(signs, dtype=np.float64) * mag, log_ld, t))
    tail = max(0.0, mollifier_abs_mass(p, nu) - float(np.sum(mag)))
    return MollifierValue(val, int(n.size), int(nu), float(cap), tail, exact=False)


def eval_mollifier_exact(p: Partition, t, nu: int | None = None) -> np.ndarray:
    """M(sigma0 + it) with no cap: sum_{k<=nu} (-1)^k e_k(p^-s) over primes p < X.

    When nu >= pi(X) this is the finite Euler product prod_{p<X}(1 - p^-s).
    """
    if nu is None:
        nu = default_nu(p)
    ps = _mollifier_primes(p)
    log_ld = np.log(ps.astype(LD))
    lf = log_ld.astype(np.float64)
    t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    ph = reduce_phase(t_arr.astype(LD)[:, None] * log_ld[None, :])
    x = -np.exp(-p.sigma0 * lf)[None, :] * np.exp(-1j * ph)
    if nu >= ps.size:
        out = np.prod(1 + x, axis=1)
    else:
        out = np.sum(_esp_sums(x, nu), axis=1)
    return out if np.ndim(t) else out[0]


def eval_truncated_exp(p: Partition, t, nu: int | None = None):
    """Script-M(t) = sum_{k<=nu} z^k/k! with z = -sum_j script-P_j(t), by Horner."""
    if nu is None:
        nu = default_nu(p)
    if nu < 0:
        raise DomainError("nu must be nonnegative")
    z = -eval_fancy_total(p, t)
    acc = np.ones_like(z) if np.ndim(z) else 1 + 0j
    for k in range(nu, 0, -1):
        acc = 1 + acc * z / k
    return acc


class MomentPrediction(NamedTuple):
    S1_main: float
    tail_log: float
    remainder: float
    cutoff: int


def mollified_moment_prediction(p: Partition, cutoff: int = 20_000_000) -> MomentPrediction:
    """prod_{p>X} (1 - p^(-2 sigma0))^-1 and its log.

    Primes in (X, cutoff] are summed directly; beyond the cutoff the prime
    number theorem integral E1((2 sigma0 - 1) log cutoff) is added and also
    reported as the remainder scale.
    """
    if p.sigma0 <= 0.5:
        raise DomainError("sigma0 must exceed 1/2")
    cutoff = max(int(cutoff), int(p.X) + 1)
    tab = p.table if p.table.limit >= cutoff else cached_table(cutoff)
    ps = tab.primes_between(p.X, cutoff).astype(np.float64)
    direct = float(np.sum(-np.log1p(-np.exp(-2 * p.sigma0 * np.log(ps)))))
    rem = float(exp1((2 * p.sigma0 - 1) * math.log(cutoff)))
    tail = direct + rem
    return MomentPrediction(math.exp(tail), tail, rem, cutoff)
