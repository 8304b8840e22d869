"""Prime sieving and the multiplicative functions behind the prime polynomials.

Conventions: logs are natural; "primes smaller than X" in the mollifier
support is read strictly, so a prime equal to X is excluded.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import BudgetError, CapacityError, CoverageError, DomainError, EmptyTableError

SIEVE_MAX = 10**9
SEGMENT = 1 << 21
DEFAULT_MEMORY_BUDGET = 1 << 30  # bytes for the prime array
DEFAULT_TERM_BUDGET = 10**7


def _simple_sieve(n: int) -> np.ndarray:
    is_p = np.ones(n + 1, dtype=bool)
    is_p[:2] = False
    for i in range(2, math.isqrt(n) + 1):
        if is_p[i]:
            is_p[i * i::i] = False
    return np.flatnonzero(is_p)


def _segmented_sieve(limit: int) -> np.ndarray:
    root = math.isqrt(limit)
    top = max(root, 2)
    base = _simple_sieve(top)
    out = [base[base <= limit]]
    lo = top + 1
    while lo <= limit:
        hi = min(lo + SEGMENT, limit + 1)
        seg = np.ones(hi - lo, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= hi:
                break
            start = max(p * p, ((lo + p - 1) // p) * p)
            seg[start - lo::p] = False
        out.append(np.flatnonzero(seg) + lo)
        lo = hi
    return np.concatenate(out).astype(np.int64)


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """All primes up to ``limit`` with cached per-prime quantities."""

    limit: int
    primes: np.ndarray
    _inv_sigma: dict = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return int(self.primes.size)

    @property
    def log_p(self) -> np.ndarray:
        if "log" not in self._inv_sigma:
            self._inv_sigma["log"] = np.log(self.primes.astype(np.float64))
        return self._inv_sigma["log"]

    def inv_p_sigma(self, sigma: float) -> np.ndarray:
        """p^(-sigma) for every prime in the table, cached per sigma."""
        key = ("pow", float(sigma))
        if key not in self._inv_sigma:
            self._inv_sigma[key] = np.exp(-float(sigma) * self.log_p)
        return self._inv_sigma[key]

    def primes_between(self, lo: float, hi: float, lo_closed: bool = False) -> np.ndarray:
        """Primes in (lo, hi], or [lo, hi] when ``lo_closed``."""
        if math.floor(hi) > self.limit:
            raise CoverageError(f"table limit {self.limit} below requested {hi:g}",
                                required_limit=int(math.floor(hi)))
        side = "left" if lo_closed else "right"
        a = np.searchsorted(self.primes, lo, side=side)
        b = np.searchsorted(self.primes, hi, side="right")
        return self.primes[a:b]

    def pi(self, x: float) -> int:
        return int(np.searchsorted(self.primes, x, side="right"))


def sieve_primes(limit: int, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> PrimeTable:
    """Segmented Eratosthenes sieve of all primes up to ``limit``."""
    limit = int(limit)
    if limit < 2:
        raise EmptyTableError(f"no primes below {limit}")
    if limit > SIEVE_MAX:
        raise CapacityError(f"limit {limit} exceeds sieve maximum {SIEVE_MAX}")
    est_bytes = 8 * 1.26 * limit / math.log(limit) + SEGMENT
    if est_bytes > memory_budget:
        raise CapacityError(f"limit {limit} needs ~{est_bytes / 2**20:.0f} MiB, "
                            f"budget {memory_budget / 2**20:.0f} MiB")
    return PrimeTable(limit=limit, primes=_segmented_sieve(limit))


@lru_cache(maxsize=8)
def cached_table(limit: int) -> PrimeTable:
    return sieve_primes(limit)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (fine for n below ~1e12)."""
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f, step = 5, 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += step
        step = 6 - step
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def mobius(n: int) -> int:
    if n < 1:
        raise DomainError("mobius is defined for n >= 1")
    fac = factorize(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def big_omega(n: int) -> int:
    if n < 1:
        raise DomainError("big_omega is defined for n >= 1")
    return sum(factorize(n).values())


def little_omega(n: int) -> int:
    if n < 1:
        raise DomainError("little_omega is defined for n >= 1")
    return len(factorize(n))


def lambda_over_log(n: int) -> float:
    """Lambda(n)/log(n): 1/k when n = p^k, else 0."""
    if n <= 1:
        raise DomainError("lambda_over_log is defined for n >= 2")
    fac = factorize(n)
    if len(fac) != 1:
        return 0.0
    (k,) = fac.values()
    return 1.0 / k


def is_smooth(n: int, bound: float) -> bool:
    """True when every prime factor of n is strictly below ``bound``."""
    return all(p < bound for p in factorize(n))


@dataclass(frozen=True)
class MollifierTerm:
    n: int
    sign: int
    omega: int


def mollifier_terms(X: float, nu: int, cap: float, budget: int = DEFAULT_TERM_BUDGET,
                    table: PrimeTable | None = None) -> Iterator[MollifierTerm]:
    """Squarefree n <= cap built from primes p < X with omega(n) <= nu.

    Depth-first over the ascending prime list; a branch is cut as soon as the
    running product would pass ``cap``. Terms come out in DFS order.
    """
    if X < 2:
        raise DomainError("X must be at least 2")
    if cap < 1:
        raise DomainError("cap must be at least 1")
    if table is None:
        table = cached_table(max(2, int(math.ceil(X))))
    primes = [int(p) for p in table.primes if p < X]
    emitted = 1
    yield MollifierTerm(1, 1, 0)
    # stack entries: (product, omega, next prime index)
    stack = [(1, 0, 0)]
    while stack:
        prod, om, i = stack.pop()
        if om >= nu:
            continue
        # push in reverse so smaller primes are expanded first
        children = []
        for k in range(i, len(primes)):
            q = prod * primes[k]
            if q > cap:
                break
            children.append((q, om + 1, k + 1))
        for q, om1, nxt in children:
            emitted += 1
            if emitted > budget:
                raise BudgetError(f"mollifier enumeration exceeded term budget {budget}", budget=budget)
            yield MollifierTerm(q, -1 if om1 % 2 else 1, om1)
        stack.extend(reversed(children))


def prime_power_sum(x: float, y: float, sigma: float, table: PrimeTable) -> tuple[float, float]:
    """Sum over primes x <= p <= y of p^(-2 sigma), with the log(log y / log x) prediction."""
    if not (2 <= x <= y):
        raise DomainError("need 2 <= x <= y")
    if sigma < 0.5:
        raise DomainError("sigma must be at least 1/2")
    ps = table.primes_between(x, y, lo_closed=True)
    value = float(np.sum(np.exp(-2.0 * sigma * np.log(ps.astype(np.float64)))))
    return value, math.log(math.log(y) / math.log(x))
