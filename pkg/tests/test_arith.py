import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import arith_oracle as orc
from zetamax import arith
from zetamax.errors import BudgetError, CapacityError, CoverageError, DomainError, EmptyTableError


def test_sieve_small():
    assert arith.sieve_primes(10).primes.tolist() == [2, 3, 5, 7]
    assert arith.sieve_primes(2).primes.tolist() == [2]


def test_sieve_million_count_matches_trial_division():
    tab = arith.sieve_primes(10**6)
    assert len(tab) == orc.count_primes(10**6) == 78498
    assert np.all(np.diff(tab.primes) > 0)
    assert tab.primes[-1] <= 10**6


def test_sieve_segments_crossing():
    # limit well past one segment exercises the segmented path
    tab = arith.sieve_primes(5_000_000)
    assert len(tab) == 348513
    sample = tab.primes[:: len(tab) // 50]
    assert all(arith.is_prime(int(p)) for p in sample)


def test_sieve_errors():
    with pytest.raises(EmptyTableError):
        arith.sieve_primes(1)
    with pytest.raises(CapacityError):
        arith.sieve_primes(10**10)
    with pytest.raises(CapacityError):
        arith.sieve_primes(10**8, memory_budget=1 << 20)


def test_is_prime_against_oracle():
    for n in range(0, 3000):
        assert arith.is_prime(n) == orc.is_prime(n)
    assert arith.is_prime(2**61 - 1)
    assert not arith.is_prime(3215031751)  # strong pseudoprime to bases 2,3,5,7


def test_functions_brute_force_to_1e4():
    for n in range(1, 10**4 + 1):
        assert arith.mobius(n) == orc.mobius(n)
        assert arith.big_omega(n) == orc.big_omega(n)
        if n >= 2:
            assert arith.lambda_over_log(n) == orc.lambda_over_log(n)


def test_function_examples():
    assert arith.mobius(1) == 1 and arith.mobius(12) == 0 and arith.mobius(30) == -1
    assert arith.lambda_over_log(7) == 1.0
    assert arith.lambda_over_log(8) == pytest.approx(1 / 3, abs=0)
    assert arith.lambda_over_log(12) == 0.0
    assert arith.big_omega(1) == 0 and arith.big_omega(12) == 3 and arith.big_omega(2**20) == 20
    assert arith.little_omega(12) == 2
    assert arith.is_smooth(30, 7) and not arith.is_smooth(35, 7)


def test_domain_errors():
    with pytest.raises(DomainError):
        arith.mobius(0)
    with pytest.raises(DomainError):
        arith.lambda_over_log(1)
    with pytest.raises(DomainError):
        arith.big_omega(0)


def _terms(X, nu, cap, **kw):
    return {t.n: t for t in arith.mollifier_terms(X, nu, cap, **kw)}


def test_mollifier_examples():
    t1 = _terms(10, 1, 10)
    assert {n: t.sign for n, t in t1.items()} == {1: 1, 2: -1, 3: -1, 5: -1, 7: -1}
    t2 = _terms(10, 2, 40)
    extra = {n: t.sign for n, t in t2.items() if n not in t1}
    assert extra == {6: 1, 10: 1, 14: 1, 15: 1, 21: 1, 35: 1}
    assert len(t2) == 11 == sum(math.comb(4, k) for k in range(3))
    assert set(_terms(2, 0, 100)) == {1}


@settings(max_examples=40, deadline=None)
@given(X=st.integers(2, 40), nu=st.integers(0, 4), cap=st.integers(1, 3000))
def test_mollifier_matches_brute_force(X, nu, cap):
    terms = list(arith.mollifier_terms(X, nu, cap))
    got = {t.n: t.sign for t in terms}
    assert len(got) == len(terms)  # each n once
    assert got == orc.squarefree_smooth(X, nu, cap)
    for t in terms:
        assert t.sign == (-1) ** t.omega


def test_mollifier_boundary_prime_excluded():
    assert 7 not in _terms(7, 1, 100)


def test_mollifier_budget():
    with pytest.raises(BudgetError) as exc:
        list(arith.mollifier_terms(1000, 5, 10**9, budget=1000))
    assert exc.value.budget == 1000


def test_prime_power_sum():
    tab = arith.sieve_primes(10**5)
    v, _ = arith.prime_power_sum(2, 10, 0.5, tab)
    assert v == pytest.approx(1 / 2 + 1 / 3 + 1 / 5 + 1 / 7, rel=1e-14)
    v, _ = arith.prime_power_sum(97, 97, 0.7, tab)
    assert v == pytest.approx(97 ** -1.4, rel=1e-14)
    v, pred = arith.prime_power_sum(100, 10**5, 0.5, tab)
    assert abs(v - pred) <= 0.05
    with pytest.raises(CoverageError):
        arith.prime_power_sum(2, 2 * 10**5, 0.6, tab)


@settings(max_examples=30, deadline=None)
@given(x=st.integers(2, 500), a=st.integers(0, 500), b=st.integers(0, 500),
       s1=st.floats(0.5, 2), s2=st.floats(0.5, 2))
def test_prime_power_sum_monotone_additive(x, a, b, s1, s2):
    tab = arith.cached_table(2000)
    y, z = x + a, x + a + b
    lo, hi = sorted((s1, s2))
    assert arith.prime_power_sum(x, z, hi, tab)[0] <= arith.prime_power_sum(x, z, lo, tab)[0] + 1e-15
    whole = arith.prime_power_sum(x, z, lo, tab)[0]
    left = arith.prime_power_sum(x, y, lo, tab)[0]
    right = float(np.sum(tab.primes_between(y, z).astype(float) ** (-2 * lo)))
    assert whole == pytest.approx(left + right, rel=1e-12, abs=1e-15)


def test_prime_table_caches():
    tab = arith.sieve_primes(100)
    w = tab.inv_p_sigma(0.6)
    assert w is tab.inv_p_sigma(0.6)
    assert np.allclose(w, tab.primes ** -0.6)
    assert tab.pi(100) == 25
