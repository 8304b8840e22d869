import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles.frozen import PSI_1
from oracles.stats_oracle import bessel_moment, gaussian_sum_moment, psi
from zetamax.arith import sieve_primes
from zetamax.dirichlet import layer_covariance, make_partition
from zetamax.errors import BudgetError, DomainError
from zetamax.rng import normal
from zetamax.stats import (EstimatorReport, EventSpec, Verdict, bessel_main_term, contour_identity_check,
                           covariance_estimate, empirical_moment, event_probability, exp_moment, g_delta,
                           gaussian_moment_prediction, gaussian_tail_psi, jackknife, paley_zygmund_ratio,
                           phase_law_tail, prime_poly_sampler, quadrature_moment, write_reports_csv)


@pytest.fixture(scope="module")
def p7():
    return make_partition(1e7, 4)


def test_psi_values():
    assert gaussian_tail_psi(0) == 0.5
    assert gaussian_tail_psi(1) == pytest.approx(PSI_1, rel=1e-12)
    for x in (-3.5, -0.2, 2.5, 3.0, 3.01, 4.2, 8.0, 20.0):
        assert gaussian_tail_psi(x) == pytest.approx(psi(x), rel=1e-12)


def test_psi_symmetry_and_bounds():
    rng = np.random.default_rng(3)
    xs = rng.uniform(-6, 6, 20)
    assert np.allclose(gaussian_tail_psi(xs) + gaussian_tail_psi(-xs), 1.0, atol=1e-15)
    grid = np.linspace(-8, 8, 801)
    assert np.all(np.diff(gaussian_tail_psi(grid)) < 0)
    for x in np.linspace(1, 12, 50):
        v = gaussian_tail_psi(x)
        assert math.exp(-x * x / 2) / ((x + 1) * math.sqrt(2 * math.pi)) <= v <= math.exp(-x * x / 2) / 2


def test_psi_rejects_nonfinite():
    with pytest.raises(DomainError):
        gaussian_tail_psi(math.nan)


@given(st.floats(-5, 5), st.floats(0.01, 3))
def test_g_delta_sandwich(x, d):
    g = g_delta(x, d)
    assert (1.0 if x >= 0 else 0.0) <= g <= (1.0 if x + d >= 0 else 0.0)


def test_g_delta_examples():
    assert g_delta(0, 0.2) == 1 and g_delta(-0.1, 0.2) == 0.5 and g_delta(-0.4, 0.2) == 0
    with pytest.raises(DomainError):
        g_delta(0, 0)


@pytest.mark.parametrize("x,delta", [(1, 0.1), (-1, 0.1), (0, 0.1), (-0.05, 0.1), (0.3, 1.0), (-0.7, 1.0)])
def test_contour_identity(x, delta):
    r = contour_identity_check(x, delta, 1.0, 1e4)
    assert r.exact == g_delta(x, delta)
    assert r.abs_err <= 1e-3


def test_contour_preconditions():
    with pytest.raises(DomainError):
        contour_identity_check(0, 0.1, 0.0, 1e4)
    with pytest.raises(DomainError):
        contour_identity_check(0, 0.1, 1.0, 10)


def test_bessel_examples():
    assert bessel_main_term([1.0], 2) == pytest.approx(0.5, rel=1e-15)
    # two primes with a b = 1: 4! * (1/64 + 1/16 + 1/64) = 9/4
    assert bessel_main_term([1.0, 1.0], 4) == pytest.approx(2.25, rel=1e-15)
    assert bessel_main_term([0.3, 0.7, 1.1], 5) == 0.0
    with pytest.raises(BudgetError):
        bessel_main_term([1.0], 42)


@given(st.lists(st.floats(0.01, 2.0), min_size=1, max_size=5), st.sampled_from([2, 4, 6, 8]))
@settings(max_examples=30)
def test_bessel_matches_rational_oracle(products, k):
    assert bessel_main_term(products, k) == pytest.approx(float(bessel_moment(products, k)), rel=1e-12)


def test_bessel_matches_quadrature_moment():
    ps = sieve_primes(50).primes
    for k in (2, 4):
        q = quadrature_moment(ps, 0.5, 1e4, k)
        assert q == pytest.approx(bessel_main_term(1.0 / ps, k), rel=0.02)


def test_gaussian_moment_prediction():
    assert gaussian_moment_prediction([0.2], [0.1], [1], [1], 3) == 0
    assert gaussian_moment_prediction([0.2], [0.1], [1], [0], 2) == pytest.approx(0.2)
    s2 = 0.09
    assert gaussian_moment_prediction([s2], [s2], [1], [1], 4) == pytest.approx(48 * s2 * s2)
    # sum of xi P(t) + xi' P(t + tau) is N(0, s2 (xi^2 + xi'^2) + 2 rho xi xi')
    v = s2 * (0.5 ** 2 + 1.2 ** 2) + 2 * 0.04 * 0.5 * 1.2
    assert gaussian_moment_prediction([s2], [0.04], [0.5], [1.2], 6).real == pytest.approx(gaussian_sum_moment(v, 6))
    with pytest.raises(DomainError):
        gaussian_moment_prediction([s2, s2], [s2], [1], [1], 2)


def test_report_verdicts_and_serialization(tmp_path):
    r = EstimatorReport("x", 1.05, 0.02, 1.0, 100)
    assert r.verdict is Verdict.WITHIN_BAND
    r.empirical = 1.07
    assert r.verdict is Verdict.OUTSIDE  # recomputed from fields
    assert EstimatorReport("f", 1.4, 0.0, 1.0, 10, band=1.5, band_kind="factor").verdict is Verdict.WITHIN_BAND
    assert EstimatorReport("f", 0.6, 0.0, 1.0, 10, band=1.5, band_kind="factor").verdict is Verdict.OUTSIDE
    assert EstimatorReport("z", 0.0, 0.0, 1.0, 10, flag="insufficient-samples").verdict is None
    d = json.loads(r.to_json())
    assert d["verdict"] == "Outside" and d["empirical"] == 1.07
    with pytest.raises(DomainError):
        EstimatorReport("bad", 0, -1, 0, 1)
    write_reports_csv([r], tmp_path / "r.csv")
    assert (tmp_path / "r.csv").read_text().splitlines()[1].startswith("x,1.07,0.02,1.0,100")


def test_jackknife_mean_matches_standard_error():
    x = normal(11, 0, np.arange(20000, dtype=np.uint64))
    m, se = jackknife([x], lambda s, n: s[0] / n)
    assert m == pytest.approx(x.mean())
    assert se == pytest.approx(x.std(ddof=1) / math.sqrt(x.size), rel=0.5)


def test_empirical_moment_constant_and_gaussian():
    r = empirical_moment(lambda seed, idx: np.full(idx.size, 1.5), 3, 1000, 1)
    assert r.empirical == pytest.approx(3.375) and r.stderr == pytest.approx(0, abs=1e-12)
    g = empirical_moment(lambda seed, idx: normal(seed, 99, idx), 2, 100_000, 1729, predicted=1.0)
    assert g.verdict is Verdict.WITHIN_BAND
    with pytest.raises(DomainError):
        empirical_moment(lambda seed, idx: idx, 1, 1, 0)


def test_empirical_moment_thread_invariant(p7):
    s = prime_poly_sampler(p7, 1)
    a = empirical_moment(s, 2, 40_000, 5, threads=1)
    b = empirical_moment(s, 2, 40_000, 5, threads=4)
    assert a.empirical == b.empirical and a.stderr == b.stderr


def test_first_moment_of_P1_vanishes(p7):
    r = empirical_moment(prime_poly_sampler(p7, 1), 1, 100_000, 1729, predicted=0.0)
    assert r.verdict is Verdict.WITHIN_BAND


def test_quadrature_first_moment_small():
    ps = sieve_primes(50).primes
    assert abs(quadrature_moment(ps, 0.5, 1e4, 1)) < 1e-3


def test_second_moment_matches_s2(p7):
    s2 = layer_covariance(p7, 1, 0.0).s2
    r = empirical_moment(prime_poly_sampler(p7, 1), 2, 100_000, 1729, predicted=s2)
    assert r.verdict is Verdict.WITHIN_BAND


@pytest.mark.parametrize("tau", [0.0, 0.01, 0.1, 1.0])
def test_covariance_estimate(p7, tau):
    r = covariance_estimate(p7, 1, tau, 100_000, 1729)
    assert r.verdict is Verdict.WITHIN_BAND


def test_event_always_true_in_test_mode(p7):
    s1 = math.sqrt(layer_covariance(p7, 1, 0.0).s2)
    spec = EventSpec((-1e6 * s1,), (0.5,), test_mode=True)
    (rep,) = event_probability(p7, spec, 2000, 4)
    assert rep.by_name("P(A)").empirical == 1.0
    assert rep.by_name("P(A and A(tau))").empirical == 1.0


def test_event_spec_validation(p7):
    with pytest.raises(DomainError):
        event_probability(p7, EventSpec((-0.1,), (1.0,)), 100, 1)
    with pytest.raises(DomainError):
        event_probability(p7, EventSpec((0.1, 0.1), (1.0,)), 100, 1)


def test_event_reports_structure(p7):
    s1 = math.sqrt(layer_covariance(p7, 1, 0.0).s2)
    (rep,) = event_probability(p7, EventSpec((s1,), (0.3,)), 20_000, 1729)
    a = rep.by_name("P(A)")
    assert a.predicted == pytest.approx(PSI_1, rel=1e-12)
    # finite-size law: iid-phase inversion explains the excess over Psi(1)
    assert abs(a.empirical - a.extra["independent_phase_prediction"]) < 4 * a.stderr
    # 0.3 <= (log T)^(-1/4) ~ 0.50, so m = 1 and the exponent halves
    assert rep.m == 1 and rep.exponent == pytest.approx(0.5)
    assert rep.barrier_level == pytest.approx(p7.log_T ** (1 / 16))


def test_phase_law_tail_single_cosine():
    # cos(theta) > x has probability arccos(x)/pi
    assert phase_law_tail([1.0], 0.5) == pytest.approx(1 / 3, abs=1e-5)
    assert phase_law_tail([0.5, 0.5], 0.0) == pytest.approx(0.5, abs=1e-9)


def test_exp_moment(p7):
    s2 = layer_covariance(p7, 1, 0.0).s2
    r = exp_moment(p7, [1.0], [0.0], 0.0, 100_000, 1729)
    assert r.predicted == pytest.approx(math.exp(s2 / 2))
    assert r.verdict is Verdict.WITHIN_BAND
    r0 = exp_moment(p7, [0.0], [0.0], 0.5, 5000, 1)
    assert r0.predicted == 1.0 and r0.empirical <= 1.0
    r2 = exp_moment(p7, [1.0], [1.0], 0.0, 1000, 1)
    assert r2.predicted == pytest.approx(math.exp(2 * s2))
    with pytest.raises(DomainError):
        exp_moment(p7, [2.0], [0.0], 0.0, 10, 1)


def test_paley_zygmund():
    assert paley_zygmund_ratio(np.full(50, 3.0)).ratio == pytest.approx(1.0)
    S = np.array([0.0] * 30 + [4.0] * 10)
    r = paley_zygmund_ratio(S)
    assert r.ratio == pytest.approx(0.25) and r.union_frequency == pytest.approx(0.25)
    z = paley_zygmund_ratio(np.zeros(10))
    assert z.ratio == 0 and z.all_zero
    with pytest.raises(DomainError):
        paley_zygmund_ratio([])


@given(st.lists(st.integers(0, 13), min_size=2, max_size=200))
def test_paley_zygmund_is_lower_bound(xs):
    r = paley_zygmund_ratio(np.array(xs, dtype=float))
    assert r.ratio <= r.union_frequency + 1e-12 and r.consistent
