"""Gaussian predictions and Monte Carlo estimators for the prime polynomials.

Samples are t uniform on [T, 2T] drawn from counter-based streams, so every
estimate is reproducible from (seed, sample index). Standard errors come
from a 20-block jackknife.
"""
from __future__ import annotations

import csv
import enum
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate
from scipy.special import j0
from scipy.stats import multivariate_normal

from ._numeric import LD, dirichlet_phase_sum, ordered_map
from .dirichlet import Partition, layer_covariance
from .errors import BudgetError, DomainError, ResolutionError
from .rng import STREAM_T, sample_ordinates

JACKKNIFE_BLOCKS = 20
SAMPLE_CHUNK = 1 << 15
SQRT_2PI = math.sqrt(2 * math.pi)


# ---------------------------------------------------------------- Gaussian tail

def _psi_scalar(x: float) -> float:
    if x < 0:
        return 1.0 - _psi_scalar(-x)
    phi = math.exp(-0.5 * x * x) / SQRT_2PI
    if x <= 3.0:
        # int_0^x phi = phi(x) * sum x^(2n+1)/(2n+1)!!, all terms positive
        term = x
        total = x
        n = 0
        while term > 1e-17 * total:
            n += 1
            term *= x * x / (2 * n + 1)
            total += term
        return 0.5 - phi * total
    # Lentz evaluation of x + 1/(x + 2/(x + 3/(x + ...)))
    tiny = 1e-300
    f = x
    C, D = f, 0.0
    for k in range(1, 500):
        D = x + k * D
        D = 1.0 / (D if D != 0 else tiny)
        C = x + k / C
        delta = C * D
        f *= delta
        if abs(delta - 1) < 1e-16:
            break
    return phi / f


def gaussian_tail_psi(x):
    """Psi(x) = P(N(0,1) > x), to about 14 significant digits."""
    if np.ndim(x):
        return np.vectorize(_psi_scalar, otypes=[float])(x)
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("x must be finite")
    return _psi_scalar(x)


def g_delta(x, delta: float):
    """Ramp: 1 for x >= 0, (delta + x)/delta on [-delta, 0], 0 below."""
    if delta <= 0:
        raise DomainError("delta must be positive")
    v = np.clip((np.asarray(x, dtype=np.float64) + delta) / delta, 0.0, 1.0)
    return float(v) if np.ndim(v) == 0 else v


# ------------------------------------------------------------ contour identity

@dataclass(frozen=True)
class ContourCheck:
    numeric: float
    exact: float
    abs_err: float
    tail_estimate: float
    quadrature_estimate: float


def _gl_panels(f: Callable[[np.ndarray], np.ndarray], L: float, width: float, order: int) -> float:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    edges = np.arange(0.0, L + width, width)
    edges[-1] = L
    edges = np.unique(edges)
    a, b = edges[:-1, None], edges[1:, None]
    y = (a + b) / 2 + (b - a) / 2 * nodes[None, :]
    vals = f(y.ravel()).reshape(y.shape)
    return float(np.sum(vals * weights[None, :] * (b - a) / 2))


def contour_identity_check(x: float, delta: float, c: float = 1.0, cutoff: float = 1e4) -> ContourCheck:
    """Integrate (1/2 pi i) int e^(xw) (e^(delta w) - 1)/(delta w) dw/w on Re w = c.

    The integrand is split into e^(aw)/(delta w^2) pieces with a = x + delta
    and a = x. Over |Im w| <= cutoff the real part is integrated on
    Gauss-Legendre panels no wider than a quarter oscillation; the part
    beyond the cutoff is added in closed form for a = 0 and by its leading
    asymptotic term otherwise.
    """
    if c <= 0:
        raise DomainError("c must be positive")
    if cutoff < 1e3:
        raise DomainError("cutoff must be at least 1e3")
    if delta <= 0:
        raise DomainError("delta must be positive")
    pieces = ((x + delta, 1.0 / delta), (x, -1.0 / delta))
    amax = max(abs(x), abs(x + delta), 1.0)
    width = min(1.0, math.pi / (2 * amax))

    def f(y: np.ndarray) -> np.ndarray:
        w = c + 1j * y
        tot = np.zeros(y.shape)
        for a, coef in pieces:
            tot += coef * np.real(np.exp(a * w) / (w * w))
        return tot

    fine = _gl_panels(f, cutoff, width, 24)
    coarse = _gl_panels(f, cutoff, width, 12)
    quad_err = abs(fine - coarse) / math.pi
    tail = 0.0
    tail_err = 0.0
    for a, coef in pieces:
        wL = c + 1j * cutoff
        if a == 0:
            tail += coef * (-cutoff / (c * c + cutoff * cutoff))
        else:
            # int_L^inf e^(a w)/w^2 dy ~ -e^(a wL)/(i a wL^2); next term is O(1/(a^2 L^3))
            lead = -np.exp(a * wL) / (1j * a * wL * wL)
            tail += coef * float(np.real(lead))
            tail_err += abs(coef) * math.exp(a * c) * 2 / (a * a * cutoff ** 3)
    numeric = (fine + tail) / math.pi
    exact = float(g_delta(x, delta))
    if quad_err > 1e-4:
        raise ResolutionError(f"quadrature rules disagree by {quad_err:.2e}")
    return ContourCheck(numeric, exact, abs(numeric - exact), tail_err / math.pi + abs(tail) / math.pi,
                        quad_err)


# --------------------------------------------------------------- main terms

BESSEL_MAX_K = 40


def bessel_main_term(coeff_products, k: int) -> float:
    """k-th z-derivative at 0 of prod_p I_0(sqrt(a_p b_p) z).

    I_0(sqrt(c) z) = sum_n c^n (z^2/4)^n / n!^2, so the product is a power
    series in u = z^2 truncated at degree k/2.
    """
    if k < 0:
        raise DomainError("k must be nonnegative")
    if k > BESSEL_MAX_K:
        raise BudgetError(f"k={k} exceeds {BESSEL_MAX_K}", budget=BESSEL_MAX_K)
    if k % 2:
        return 0.0
    m = k // 2
    series = np.zeros(m + 1)
    series[0] = 1.0
    fact2 = np.array([float(math.factorial(n)) ** 2 * 4.0 ** n for n in range(m + 1)])
    for c in np.atleast_1d(np.asarray(coeff_products, dtype=np.float64)):
        factor = c ** np.arange(m + 1) / fact2
        series = np.convolve(series, factor)[: m + 1]
    val = math.factorial(k) * series[m]
    if not math.isfinite(val):
        raise BudgetError("series overflow", budget=BESSEL_MAX_K)
    return float(val)


def gaussian_moment_prediction(s2, rho, xi, xi_prime, n: int) -> complex:
    """n!/(2^(n/2) (n/2)!) * (sum_j s_j^2 (xi_j^2 + xi'_j^2) + 2 rho_j xi_j xi'_j)^(n/2)."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    if n % 2:
        return 0j
    s2, rho = np.asarray(s2, dtype=float), np.asarray(rho, dtype=float)
    xi, xp = np.asarray(xi, dtype=complex), np.asarray(xi_prime, dtype=complex)
    if not (s2.shape == rho.shape == xi.shape == xp.shape):
        raise DomainError("arrays must be aligned")
    v = complex(np.sum(s2 * (xi * xi + xp * xp) + 2 * rho * xi * xp))
    h = n // 2
    return math.factorial(n) / (2 ** h * math.factorial(h)) * v ** h


# ------------------------------------------------------------------ reports

class Verdict(str, enum.Enum):
    WITHIN_BAND = "WithinBand"
    OUTSIDE = "Outside"


@dataclass
class EstimatorReport:
    """One estimate against one prediction.

    ``band_kind`` is "stderr" (|emp - pred| <= band * stderr), "relative"
    (|emp - pred| <= band * |pred|) or "factor" (pred/band <= emp <= pred*band).
    A set ``flag`` suppresses the verdict.
    """

    name: str
    empirical: float
    stderr: float
    predicted: float
    n_samples: int
    band: float = 3.0
    band_kind: str = "stderr"
    flag: str | None = None
    heuristic: bool = False
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        self.empirical, self.stderr, self.predicted = float(self.empirical), float(self.stderr), float(self.predicted)
        self.n_samples = int(self.n_samples)
        if not self.stderr >= 0:
            raise DomainError("stderr must be nonnegative")

    @property
    def verdict(self) -> Verdict | None:
        if self.flag is not None or not math.isfinite(self.predicted):
            return None
        e, p = self.empirical, self.predicted
        if self.band_kind == "stderr":
            ok = abs(e - p) <= self.band * self.stderr
        elif self.band_kind == "relative":
            ok = abs(e - p) <= self.band * abs(p)
        elif self.band_kind == "factor":
            ok = p / self.band <= e <= p * self.band
        else:
            raise DomainError(f"unknown band kind {self.band_kind}")
        return Verdict.WITHIN_BAND if ok else Verdict.OUTSIDE

    def to_dict(self) -> dict:
        d = asdict(self)
        v = self.verdict
        d["verdict"] = v.value if v else None
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, default=_json_default)


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(type(o))


REPORT_COLUMNS = ["name", "empirical", "stderr", "predicted", "n_samples", "band", "band_kind",
                  "verdict", "flag", "heuristic"]


def write_reports_csv(reports: Sequence[EstimatorReport], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(REPORT_COLUMNS)
        for r in reports:
            d = r.to_dict()
            w.writerow([repr(float(d[c])) if isinstance(d[c], float) else ("" if d[c] is None else d[c])
                        for c in REPORT_COLUMNS])


def write_reports_json(reports: Sequence[EstimatorReport], path) -> None:
    with open(path, "w") as fh:
        json.dump([r.to_dict() for r in reports], fh, indent=2, sort_keys=True, default=_json_default)


# ---------------------------------------------------------------- jackknife

def jackknife(columns: Sequence[np.ndarray], stat: Callable[..., float],
              blocks: int = JACKKNIFE_BLOCKS) -> tuple[float, float]:
    """Statistic on the full data and its delete-one-block jackknife stderr.

    ``stat`` receives the per-column sums and the sample count, so
    leave-one-out values cost O(blocks).
    """
    n = columns[0].size
    if n < 2:
        raise DomainError("need at least two samples")
    nb = min(blocks, n)
    edges = np.linspace(0, n, nb + 1).astype(int)
    sums = np.array([[np.sum(c[edges[b]:edges[b + 1]]) for b in range(nb)] for c in columns])
    counts = np.diff(edges)
    total = sums.sum(axis=1)
    full = stat(total, n)
    loo = np.array([stat(total - sums[:, b], n - counts[b]) for b in range(nb)])
    if not np.all(np.isfinite(loo)):
        return full, math.nan
    se = math.sqrt((nb - 1) / nb * float(np.sum((loo - loo.mean()) ** 2)))
    return full, se


def _mean_stat(s, n):
    return s[0] / n


# ------------------------------------------------------------------ sampling

Sampler = Callable[[int, np.ndarray], np.ndarray]


def sample_chunks(sampler: Sampler, seed: int, n_samples: int, threads: int = 1) -> np.ndarray:
    chunks = [np.arange(a, min(a + SAMPLE_CHUNK, n_samples), dtype=np.uint64)
              for a in range(0, n_samples, SAMPLE_CHUNK)]
    return np.concatenate(ordered_map(lambda idx: np.asarray(sampler(seed, idx), dtype=float), chunks, threads))


def empirical_moment(sampler: Sampler, n: int, n_samples: int, seed: int, predicted: float = math.nan,
                     name: str = "moment", threads: int = 1) -> EstimatorReport:
    """Sample mean of x^n with jackknife stderr."""
    if n_samples < 2:
        raise DomainError("n_samples must be at least 2")
    x = sample_chunks(sampler, seed, n_samples, threads) ** n
    mean, se = jackknife([x], _mean_stat)
    return EstimatorReport(name, float(mean), float(se), float(predicted), n_samples)


def layer_values(p: Partition, js: Sequence[int], t) -> np.ndarray:
    """P_j(t) for each j in ``js``; t may be long double. Shape (len(js), len(t))."""
    t = np.atleast_1d(t)
    return np.array([np.real(dirichlet_phase_sum(p.layers[j].weight, p.layers[j].log_ld, t)) for j in js])


def prime_poly_sampler(p: Partition, j: int, shift: float = 0.0) -> Sampler:
    """Sampler of P_j(t + shift) with t uniform on [T, 2T]."""
    def f(seed, idx):
        t = sample_ordinates(p.T, seed, idx).astype(LD) + LD(shift)
        return layer_values(p, [j], t)[0]
    return f


def covariance_estimate(p: Partition, j: int, tau: float, n_samples: int, seed: int,
                        threads: int = 1) -> EstimatorReport:
    """cov(P_j(t), P_j(t+tau)) against the exact rho_j(tau)."""
    a = sample_chunks(prime_poly_sampler(p, j), seed, n_samples, threads)
    b = sample_chunks(prime_poly_sampler(p, j, tau), seed, n_samples, threads)

    def cov(s, n):
        return s[2] / n - (s[0] / n) * (s[1] / n)

    est, se = jackknife([a, b, a * b], cov)
    rho = layer_covariance(p, j, tau).rho
    return EstimatorReport(f"cov_P{j}_tau{tau:g}", est, se, rho, n_samples)


# -------------------------------------------------- independent-phase laws

def phase_law_tail(amplitudes, x: float, max_points: int = 2_000_000) -> float:
    """P(sum_p a_p cos(theta_p) > x) for iid uniform phases, by Gil-Pelaez inversion.

    The characteristic function is prod_p J_0(a_p w). This is the limiting
    law of P_j(t) for t uniform on [T, 2T] as T grows, since the log p are
    linearly independent over the rationals. The integral is cut where the
    envelope prod min(1, sqrt(2/(pi a_p w))) makes the remainder negligible.
    """
    a = np.asarray(amplitudes, dtype=float)
    a = a[a > 0]
    if a.size == 0:
        return 1.0 if x < 0 else 0.0
    rate = float(np.sum(a)) + abs(x)
    density = 4.0 * rate + 1.0
    n = a.size

    def envelope(w):
        return float(np.prod(np.minimum(1.0, np.sqrt(2 / (np.pi * a * w)))))

    W = 10.0 / rate
    while envelope(W) * 2 / n > 1e-9 and W * density < max_points:
        W *= 1.5
    w = np.linspace(0.0, W, int(W * density) + 2001)
    phi = np.prod(j0(np.outer(w, a)), axis=1) if w.size * n <= 5e7 else np.exp(
        np.sum([np.log(np.abs(j0(w * ai)) + 1e-300) for ai in a], axis=0)) * np.prod(
        [np.sign(j0(w * ai)) for ai in a], axis=0)
    integrand = np.empty_like(w)
    integrand[1:] = np.sin(w[1:] * x) * phi[1:] / w[1:]
    integrand[0] = x
    return float(0.5 - integrate.simpson(integrand, x=w) / math.pi)


def bivariate_gaussian_joint(s2: float, rho: float, x: float) -> float:
    """P(X > x, Y > x) for a centred Gaussian pair with variance s2 and covariance rho."""
    cov = np.array([[s2, rho], [rho, s2]])
    # P(X > x, Y > x) = P(-X < -x, -Y < -x)
    return float(multivariate_normal(mean=[0, 0], cov=cov).cdf([-x, -x]))


# -------------------------------------------------------------- events A(tau)

@dataclass(frozen=True)
class EventSpec:
    """Thresholds x_j for j = 1..K-3 and the shifts tau to examine."""

    thresholds: tuple[float, ...]
    taus: tuple[float, ...]
    test_mode: bool = False

    def validate(self, p: Partition) -> None:
        if len(self.thresholds) != p.K - 3:
            raise DomainError(f"need {p.K - 3} thresholds, got {len(self.thresholds)}")
        if self.test_mode:
            return
        for x in self.thresholds:
            if not 0 < x <= p.loglog_T:
                raise DomainError(f"threshold {x} outside (0, log log T]")


def barrier_level(p: Partition) -> float:
    """(log T)^(1/(4K))."""
    return p.log_T ** (1 / (4 * p.K))


def mesoscopic_exponent(p: Partition, thresholds, tau: float) -> tuple[int, float]:
    """m and sum_{j<=m} x_j^2/(2 s_j^2) + sum_{j>m} x_j^2/s_j^2 over j = 1..K-3."""
    L = p.log_T
    m = 0
    for j in range(1, p.K - 2):
        if abs(tau) <= L ** (-j / p.K):
            m = j
    expo = 0.0
    for j, x in zip(range(1, p.K - 2), thresholds):
        s2 = layer_covariance(p, j, 0.0).s2
        expo += x * x / (2 * s2) if j <= m else x * x / s2
    return m, expo


@dataclass
class EventReport:
    tau: float
    reports: list[EstimatorReport]
    barrier_violations: int
    barrier_level: float
    m: int
    exponent: float
    log_freq_joint: float

    def by_name(self, name: str) -> EstimatorReport:
        return next(r for r in self.reports if r.name == name)


def event_probability(p: Partition, spec: EventSpec, n_samples: int, seed: int,
                      threads: int = 1) -> list[EventReport]:
    """Frequencies of A, A(tau), A and A(tau), and barrier violations, per tau."""
    spec.validate(p)
    js = list(range(1, p.K - 2))
    x = np.asarray(spec.thresholds, dtype=float)
    s2 = np.array([layer_covariance(p, j, 0.0).s2 for j in js])
    sd = np.sqrt(s2)
    pred_A = float(np.prod([gaussian_tail_psi(xi / si) for xi, si in zip(x, sd)]))
    phase_A = float(np.prod([phase_law_tail(p.layers[j].weight, xi) for j, xi in zip(js, x)]))
    bar = barrier_level(p)

    def base(seed_, idx):
        t = sample_ordinates(p.T, seed_, idx).astype(LD)
        return layer_values(p, js, t)

    chunks = [np.arange(a, min(a + SAMPLE_CHUNK, n_samples), dtype=np.uint64)
              for a in range(0, n_samples, SAMPLE_CHUNK)]
    V0 = np.concatenate(ordered_map(lambda idx: base(seed, idx), chunks, threads), axis=1)
    in_A = np.all(V0 > x[:, None], axis=0).astype(float)
    viol0 = np.any(np.abs(V0) > bar, axis=0)
    out = []
    for tau in spec.taus:
        def shifted(idx, tau=tau):
            t = sample_ordinates(p.T, seed, idx).astype(LD) + LD(tau)
            return layer_values(p, js, t)
        Vt = np.concatenate(ordered_map(shifted, chunks, threads), axis=1)
        in_At = np.all(Vt > x[:, None], axis=0).astype(float)
        joint = in_A * in_At
        fA, seA = jackknife([in_A], _mean_stat)
        fAt, seAt = jackknife([in_At], _mean_stat)
        fJ, seJ = jackknife([joint], _mean_stat)
        ratio_stat = lambda s, n: (s[2] / n) / ((s[0] / n) * (s[1] / n)) if s[0] * s[1] > 0 else math.nan
        ratio, seR = jackknife([in_A, in_At, joint], ratio_stat)
        rhos = np.array([layer_covariance(p, j, tau).rho for j in js])
        gauss_joint = float(np.prod([bivariate_gaussian_joint(a, r, xi) for a, r, xi in zip(s2, rhos, x)]))
        m, expo = mesoscopic_exponent(p, x, tau)
        zero = "insufficient-samples" if fA == 0 or fJ == 0 else None
        reps = [
            EstimatorReport("P(A)", fA, seA, pred_A, n_samples, flag=None if fA > 0 else "insufficient-samples",
                            heuristic=True, extra={"independent_phase_prediction": phase_A}),
            EstimatorReport("P(A(tau))", fAt, seAt, pred_A, n_samples,
                            flag=None if fAt > 0 else "insufficient-samples", heuristic=True),
            EstimatorReport("P(A and A(tau))", fJ, seJ, pred_A ** 2, n_samples, flag=zero, heuristic=True,
                            extra={"gaussian_exact_rho": gauss_joint}),
            EstimatorReport("decoupling_ratio", ratio, 0.0 if math.isnan(seR) else seR, 1.0, n_samples,
                            band=1.5, band_kind="factor", flag=zero, heuristic=True,
                            extra={"gaussian_exact_rho": gauss_joint / pred_A ** 2 if pred_A > 0 else math.nan}),
        ]
        viol = int(np.sum(viol0 | np.any(np.abs(Vt) > bar, axis=0)))
        out.append(EventReport(float(tau), reps, viol, bar, m, expo,
                               math.log(fJ) if fJ > 0 else -math.inf))
    return out


def barrier_violations(p: Partition, n_samples: int, seed: int, threads: int = 1) -> int:
    """Samples where some |P_j(t)|, 1 <= j <= K-3, exceeds (log T)^(1/(4K))."""
    js = list(range(1, p.K - 2))
    bar = barrier_level(p)

    def count(idx):
        t = sample_ordinates(p.T, seed, idx).astype(LD)
        return int(np.sum(np.any(np.abs(layer_values(p, js, t)) > bar, axis=0)))

    chunks = [np.arange(a, min(a + SAMPLE_CHUNK, n_samples), dtype=np.uint64)
              for a in range(0, n_samples, SAMPLE_CHUNK)]
    return int(sum(ordered_map(count, chunks, threads)))


def exp_moment(p: Partition, xi, xi_prime, tau: float, n_samples: int, seed: int,
               threads: int = 1) -> EstimatorReport:
    """E[exp(sum xi_j P_j(t) + xi'_j P_j(t+tau)) 1_{B and B(tau)}] against the Gaussian transform."""
    js = list(range(1, p.K - 2))
    xi = np.asarray(xi, dtype=float)
    xp = np.asarray(xi_prime, dtype=float)
    if xi.size != len(js) or xp.size != len(js):
        raise DomainError(f"need {len(js)} coefficients per vector")
    lim = p.log_T ** (1 / (16 * p.K))
    if np.any(np.abs(xi) > lim) or np.any(np.abs(xp) > lim):
        raise DomainError(f"|xi_j| must not exceed (log T)^(1/(16K)) = {lim:.4f} "
                          "(Fourier-Laplace bound precondition)")
    bar = barrier_level(p)
    cov = [layer_covariance(p, j, tau) for j in js]
    expo = 0.5 * sum(c.s2 * (a * a + b * b) + 2 * c.rho * a * b for c, a, b in zip(cov, xi, xp))

    def sampler(seed_, idx):
        t = sample_ordinates(p.T, seed_, idx).astype(LD)
        V0 = layer_values(p, js, t)
        Vt = layer_values(p, js, t + LD(tau))
        inside = np.all(np.abs(V0) <= bar, axis=0) & np.all(np.abs(Vt) <= bar, axis=0)
        return np.exp(xi @ V0 + xp @ Vt) * inside

    vals = sample_chunks(sampler, seed, n_samples, threads)
    mean, se = jackknife([vals], _mean_stat)
    phase = float(np.prod([np.prod(np.i0(np.abs(xi[k] + xp[k] * np.exp(1j * tau * p.layers[j].log_p))
                                         * p.layers[j].weight)) for k, j in enumerate(js)]))
    return EstimatorReport("exp_moment", mean, se, math.exp(expo), n_samples,
                           extra={"independent_phase_prediction": phase})


# ---------------------------------------------------------- Paley-Zygmund

@dataclass(frozen=True)
class PaleyZygmund:
    ratio: float
    union_frequency: float
    union_stderr: float
    n_trials: int
    consistent: bool
    all_zero: bool


def paley_zygmund_ratio(indicator_sums) -> PaleyZygmund:
    """(E S)^2 / E S^2 with S = sum_l 1_{A(tau_l)}, and the direct union frequency."""
    S = np.asarray(indicator_sums, dtype=float)
    if S.size < 1:
        raise DomainError("need at least one trial")
    m1, m2 = float(np.mean(S)), float(np.mean(S * S))
    hit = (S > 0).astype(float)
    if S.size >= 2:
        union, se = jackknife([hit], _mean_stat)
    else:
        union, se = float(hit[0]), 0.0
    if m2 == 0:
        return PaleyZygmund(0.0, union, se, S.size, True, True)
    ratio = m1 * m1 / m2
    return PaleyZygmund(ratio, union, se, S.size, ratio <= union + 3 * se + 1e-15, False)


def quadrature_moment(primes, sigma: float, T: float, k: int, nodes: int = 16) -> float:
    """(1/T) int_T^2T (Re sum_p p^(-sigma-it))^k dt by unit-width Gauss-Legendre panels."""
    ps = np.asarray(primes, dtype=np.int64)
    if ps.size == 0 or T < 1:
        raise DomainError("need primes and T >= 1")
    log_ld = np.log(ps.astype(LD))
    coef = np.exp(-sigma * log_ld.astype(np.float64))
    x, w = np.polynomial.legendre.leggauss(nodes)
    panels = int(math.ceil(T))
    h = T / panels
    left = T + h * np.arange(panels, dtype=np.float64)
    t = (left[:, None].astype(LD) + LD(h) * (LD(0.5) + LD(0.5) * x[None, :].astype(LD))).ravel()
    vals = np.real(dirichlet_phase_sum(coef, log_ld, t)) ** k
    return float(np.sum(vals.reshape(panels, nodes) * w[None, :]) * h / 2 / T)
