"""End-to-end experiments behind the CLI subcommands.

Each ``run_*`` draws its ordinates from (seed, sample index), evaluates the
samples through an order-preserving worker pool and hands the rows to
``persist``, which writes the manifest first and the result tables after.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .._numeric import ordered_map
from ..arith import sieve_primes
from ..dirichlet import (Partition, default_nu, eval_P, eval_fancy_total, eval_grid, eval_mollifier_exact,
                         layer_covariance, make_partition, mollified_moment_prediction)
from ..errors import BudgetError, ConfigError, ZetamaxError
from ..gaussmodel import BrwConfig, brw_from_height, simulate_max
from ..rng import STREAM_BOOTSTRAP, STREAM_SECOND_MOMENT, sample_ordinates, uniform
from ..stats import (REPORT_COLUMNS, EstimatorReport, EventSpec, bessel_main_term, covariance_estimate,
                     empirical_moment, event_probability, exp_moment, gaussian_moment_prediction,
                     gaussian_tail_psi, jackknife, paley_zygmund_ratio, phase_law_tail, prime_poly_sampler,
                     quadrature_moment)
from ..zeta import (euler_maclaurin_grid, euler_maclaurin_zeta, interval_max_log_abs_zeta, riemann_siegel)
from .config import ExperimentConfig
from .io import finish_run, start_run, write_json, write_table

log = logging.getLogger(__name__)

ZETA_T_MAX = 1e8
FAILURE_LIMIT = 0.01
SAMPLE_ERRORS = (ZetamaxError, ArithmeticError, ValueError)
REPORT_TABLE = REPORT_COLUMNS + ["alt_name", "alt_prediction"]


@dataclass
class Table:
    stem: str
    columns: Sequence[str]
    rows: list


@dataclass
class RunOutput:
    subcommand: str
    files: list[Path]
    summary: dict
    invalid: bool = False
    failures: list = field(default_factory=list)


def persist(cfg: ExperimentConfig, subcommand: str, tables: Sequence[Table], summary: dict | None,
            fmt: str = "csv", invalid: bool = False) -> RunOutput:
    out = Path(cfg.output_dir)
    planned = [f"{t.stem}.{fmt}" for t in tables] + ([f"{subcommand.replace('-', '_')}_summary.json"]
                                                      if summary is not None else [])
    m = start_run(out, subcommand, cfg, planned)
    files = [write_table(out / t.stem, t.columns, t.rows, fmt) for t in tables]
    if summary is not None:
        summary = {"config_hash": cfg.hash(), **summary}
        files.append(write_json(out / planned[-1], summary))
    finish_run(out, m, files, "invalid" if invalid else "ok")
    return RunOutput(subcommand, files, summary or {}, invalid)


def report_row(r: EstimatorReport, alt_name: str = "", alt_value: float = math.nan) -> list:
    d = r.to_dict()
    return [d[c] for c in REPORT_COLUMNS] + [alt_name, alt_value]


def _ordinate(cfg: ExperimentConfig, i: int) -> float:
    return float(sample_ordinates(cfg.T, cfg.seed, np.uint64(i)))


def _require_zeta_range(cfg: ExperimentConfig) -> None:
    if 2 * cfg.T + 1 > ZETA_T_MAX:
        raise ConfigError(f"T={cfg.T:g} puts ordinates beyond the zeta engine ceiling {ZETA_T_MAX:g}")


def _partition(cfg: ExperimentConfig) -> Partition:
    return make_partition(cfg.T, cfg.K, sigma0_override=cfg.sigma0_override)


def _run_samples(cfg: ExperimentConfig, work: Callable[[int], list]) -> tuple[list, list]:
    """Evaluate every sample; failures are logged and returned separately."""
    def guarded(i):
        try:
            return work(i), None
        except SAMPLE_ERRORS as e:
            log.warning("sample %d failed: %s", i, e)
            return None, (i, f"{type(e).__name__}: {e}")

    results = ordered_map(guarded, range(cfg.samples), cfg.threads)
    rows = [r for r, err in results if err is None]
    fails = [err for _, err in results if err is not None]
    return rows, fails


def _quantiles(x) -> dict:
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        return {"p10": math.nan, "p50": math.nan, "p90": math.nan}
    q = np.quantile(x, [0.1, 0.5, 0.9])
    return {"p10": float(q[0]), "p50": float(q[1]), "p90": float(q[2])}


def bootstrap_median(x, seed: int, reps: int = 400) -> float:
    """Bootstrap stderr of the median, resampling with counter-based uniforms."""
    x = np.asarray(x, dtype=float)
    n = x.size
    if n < 2:
        return math.nan
    meds = np.empty(reps)
    j = np.arange(n, dtype=np.uint64)
    for b in range(reps):
        idx = np.minimum((uniform(seed, STREAM_BOOTSTRAP, b, j) * n).astype(np.int64), n - 1)
        meds[b] = np.median(x[idx])
    return float(np.std(meds, ddof=1))


# ------------------------------------------------------------- partition

def run_partition(cfg: ExperimentConfig, fmt: str = "csv") -> RunOutput:
    p = _partition(cfg)
    rows = []
    for ly in p.layers:
        c = layer_covariance(p, ly.j, 0.0)
        rows.append([ly.j, ly.lo, ly.hi, len(ly.primes), int(ly.power_n.size), c.s2, c.asymptotic_s2])
    summary = p.describe()
    summary["barrier_level"] = p.log_T ** (1 / (4 * p.K))
    return persist(cfg, "partition", [Table("partition", ["j", "lo", "hi", "prime_count", "power_count", "s2",
                                                          "asymptotic_s2"], rows)], summary, fmt)


# --------------------------------------------------------------- zeta eval

def _zeta_point(sigma: float, t: float, method: str):
    if method == "rs" or (method == "auto" and sigma == 0.5 and t >= 50):
        if sigma != 0.5:
            raise ConfigError("Riemann-Siegel evaluates only on the critical line")
        _, _, z = riemann_siegel(t, 4)
    else:
        z = euler_maclaurin_zeta(sigma, t, target_abs_error=1e-10)
    return z


def run_zeta_eval(cfg: ExperimentConfig, sigma: float = 0.5, ts: Sequence[float] | None = None,
                  method: str = "auto", fmt: str = "csv") -> RunOutput:
    if ts is None:
        _require_zeta_range(cfg)
        ts = [_ordinate(cfg, i) for i in range(cfg.samples)]

    def work(i):
        z = _zeta_point(sigma, float(ts[i]), method)
        return [i, sigma, float(ts[i]), z.re, z.im, abs(z), z.method.value, z.error_estimate]

    res = ordered_map(lambda i: work(i), range(len(ts)), cfg.threads)
    cols = ["index", "sigma", "t", "re", "im", "abs", "method", "error_estimate"]
    return persist(cfg, "zeta-eval", [Table("zeta_eval", cols, res)], None, fmt)


# ---------------------------------------------------------------- max scan

MAX_COLUMNS = ["sample_index", "t", "u_star", "max_log_abs_zeta", "grid_spacing", "refined"]


def _max_row(i: int, t: float, hw: float) -> list:
    m = interval_max_log_abs_zeta(t, hw)
    return [i, t, m.u_star, m.value, m.grid_spacing, m.refined]


def run_max_scan(cfg: ExperimentConfig, ts: Sequence[float] | None = None, fmt: str = "csv") -> RunOutput:
    _require_zeta_range(cfg)
    if ts is None:
        ts = [_ordinate(cfg, i) for i in range(cfg.samples)]
    rows = ordered_map(lambda i: _max_row(i, float(ts[i]), cfg.interval_half_width), range(len(ts)), cfg.threads)
    return persist(cfg, "max-scan", [Table("max_scan", MAX_COLUMNS, rows)], None, fmt)


# ----------------------------------------------------------------- FHK

def fhk_reference(T: float) -> dict:
    L = math.log(math.log(T))
    return {"loglogT": L, "fhk_prediction": L - 0.75 * math.log(L),
            "band": [L - math.log(L), L + 1]}


def run_fhk_sample(cfg: ExperimentConfig, fmt: str = "csv") -> RunOutput:
    """Interval maxima of log|zeta(1/2+iu)| over |u - t| <= half width."""
    _require_zeta_range(cfg)
    rows, fails = _run_samples(cfg, lambda i: _max_row(i, _ordinate(cfg, i), cfg.interval_half_width))
    vals = [r[3] for r in rows]
    invalid = len(fails) > FAILURE_LIMIT * cfg.samples
    summary = {"quantiles": _quantiles(vals), **fhk_reference(cfg.T), "samples": cfg.samples,
               "failures": [f[1] for f in fails], "failed_indices": [f[0] for f in fails],
               "valid": not invalid}
    out = persist(cfg, "fhk-sample", [Table("fhk_samples", MAX_COLUMNS, rows)], summary, fmt, invalid)
    out.failures = fails
    return out


# ------------------------------------------------------- proxy comparison

PROXY_COLUMNS = ["sample_index", "t", "max_log_abs_zeta", "proxy_min_max", "proxy_sum_max", "zm_window_max",
                 "m_exp_gap", "event_count", "event_bits", "mollifier_flag"]


def tau_grid(cfg: ExperimentConfig) -> np.ndarray:
    n = cfg.grid_count
    hw = cfg.proxy_half_width
    return np.array([0.0]) if n == 1 else np.linspace(-hw, hw, n)


def proxy_values(p: Partition, t: float, taus: np.ndarray) -> np.ndarray:
    """P_j(t + tau_l) for j = 1..K-3 on the shift grid; shape (K-3, len(taus))."""
    js = range(1, p.K - 2)
    if taus.size == 1:
        return np.array([[float(eval_P(p, j, t + float(taus[0])))] for j in js])
    delta = float(taus[1] - taus[0])
    return np.array([np.real(eval_grid(p, j, t + float(taus[0]), delta, taus.size).values) for j in js])


def zeta_mollifier_window(p: Partition, t: float, hw: float, nu: int) -> tuple[float, np.ndarray]:
    """max over |u - t| <= hw of |zeta M(sigma0 + iu) - 1| on a grid of spacing ~ 1/(4 log T)."""
    n = max(3, int(math.ceil(2 * hw * 4 * p.log_T)) + 1)
    delta = 2 * hw / (n - 1)
    z, _ = euler_maclaurin_grid(p.sigma0, t - hw, delta, n, target_abs_error=1e-8)
    u = t - hw + delta * np.arange(n)
    M = eval_mollifier_exact(p, u, nu)
    return float(np.max(np.abs(z * M - 1))), u


def run_proxy_comparison(cfg: ExperimentConfig, fmt: str = "csv", with_window: bool = True) -> RunOutput:
    """Zeta maxima against the prime-polynomial events on the shift grid."""
    _require_zeta_range(cfg)
    p = _partition(cfg)
    nu = cfg.nu_override or default_nu(p)
    taus = tau_grid(cfg)
    L = p.loglog_T
    thr = cfg.lam / cfg.K * L

    def work(i):
        t = _ordinate(cfg, i)
        zmax = interval_max_log_abs_zeta(t, cfg.interval_half_width).value
        V = proxy_values(p, t, taus)
        mins = V.min(axis=0)
        bits = mins > thr
        flag = ""
        try:
            window = zeta_mollifier_window(p, t, cfg.proxy_half_width, nu)[0] if with_window else math.nan
            M = complex(eval_mollifier_exact(p, t, nu))
            gap = abs(M - complex(np.exp(-eval_fancy_total(p, t))))
        except BudgetError as e:
            window, gap, flag = math.nan, math.nan, f"skipped: {e}"
        return [i, t, zmax, float(mins.max()), float(V.sum(axis=0).max()), window, gap, int(bits.sum()),
                "".join("1" if b else "0" for b in bits), flag]

    rows, fails = _run_samples(cfg, work)
    invalid = len(fails) > FAILURE_LIMIT * cfg.samples
    summary = {"failures": [f[1] for f in fails], "valid": not invalid}
    if rows:
        summary.update(_proxy_summary(cfg, p, rows, thr))
    return persist(cfg, "proxy-compare", [Table("proxy_samples", PROXY_COLUMNS, rows)], summary, fmt, invalid)


def _proxy_summary(cfg: ExperimentConfig, p: Partition, rows: list, thr: float) -> dict:
    L = p.loglog_T
    zmax = np.array([r[2] for r in rows])
    S = np.array([r[7] for r in rows], dtype=float)
    event = (S > 0).astype(float)
    target = cfg.lam * (1 - 3 / cfg.K) * L
    slack = math.log(8) + math.log(L) + 20 * cfg.K ** -0.5 * L
    sum_event = (np.array([r[4] for r in rows]) >= target).astype(float)

    def freq(x):
        if x.size < 2:
            return {"frequency": float(x.mean()), "stderr": math.nan}
        f, se = jackknife([x], lambda s, n: s[0] / n)
        return {"frequency": f, "stderr": se}

    pz = paley_zygmund_ratio(S)
    window = np.array([r[5] for r in rows], dtype=float)
    gaps = np.array([r[6] for r in rows], dtype=float)
    return {
        "loglogT": L, "sigma0": p.sigma0, "X": p.X, "lambda": cfg.lam, "event_threshold": thr,
        "tau_grid_count": cfg.grid_count, "zeta_target": target, "slack": slack,
        "proxy_event": freq(event),
        "sum_proxy_event": freq(sum_event),
        "joint_with_slack": freq(event * (zmax >= target - slack)),
        "joint_without_slack": freq(event * (zmax >= target)),
        "paley_zygmund": {"ratio": pz.ratio, "union_frequency": pz.union_frequency,
                          "union_stderr": pz.union_stderr, "consistent": pz.consistent,
                          "all_zero": pz.all_zero},
        "zm_window_max_median": float(np.nanmedian(window)) if np.any(np.isfinite(window)) else math.nan,
        "m_exp_gap_median": float(np.nanmedian(gaps)) if np.any(np.isfinite(gaps)) else math.nan,
        "note": "the slack exceeds log log T at these heights, so the joint frequency with slack is "
                "reported for completeness and is not a falsification test",
    }


# ------------------------------------------------------------ upper bound

def second_moment_constant(cfg: ExperimentConfig) -> dict:
    """C = (E|zeta|^2 + 2 E|zeta zeta'|)/(log T)^2 on an independent ordinate stream."""
    def work(i):
        t = float(cfg.T + cfg.T * uniform(cfg.seed, STREAM_SECOND_MOMENT, np.uint64(i)))
        z = euler_maclaurin_zeta(0.5, t, target_abs_error=1e-8).value
        dz = euler_maclaurin_zeta(0.5, t, derivative_order=1, target_abs_error=1e-8).value
        return abs(z) ** 2, abs(z * dz)

    vals = np.array(ordered_map(work, range(cfg.samples), cfg.threads))
    L2 = math.log(cfg.T) ** 2
    m2, mz = float(vals[:, 0].mean()), float(vals[:, 1].mean())
    return {"E_abs_zeta_sq": m2, "E_abs_zeta_dzeta": mz, "C": (m2 + 2 * mz) / L2}


def run_upper_bound_check(cfg: ExperimentConfig, Vs: Sequence[float] = (5.0, 10.0), fmt: str = "csv") -> RunOutput:
    """Exceedance of max |zeta| > V log T against the Chebyshev bound C/V^2."""
    _require_zeta_range(cfg)
    bad = [V for V in Vs if not V >= 2]
    if bad:
        raise ConfigError(f"V must be at least 2, got {bad}")
    rows, fails = _run_samples(cfg, lambda i: _max_row(i, _ordinate(cfg, i), cfg.interval_half_width))
    invalid = len(fails) > FAILURE_LIMIT * cfg.samples
    fit = second_moment_constant(cfg)
    logT = math.log(cfg.T)
    mx = np.array([r[3] for r in rows])
    direct_C = float(np.mean(np.exp(2 * mx))) / logT ** 2 if mx.size else math.nan
    out_rows = []
    for V in Vs:
        level = math.log(V * logT)
        count = int(np.sum(mx > level))
        freq = count / max(1, mx.size)
        bound = fit["C"] / V ** 2
        out_rows.append([V, level, count, mx.size, freq, bound, direct_C / V ** 2, freq <= 3 * bound])
    cols = ["V", "log_threshold", "exceed_count", "samples", "frequency", "chebyshev_bound",
            "direct_bound", "within_3x"]
    summary = {"second_moment_fit": fit, "direct_C": direct_C, "valid": not invalid,
               "failures": [f[1] for f in fails]}
    return persist(cfg, "upper-bound", [Table("upper_bound", cols, out_rows),
                                        Table("upper_bound_samples", MAX_COLUMNS, rows)], summary, fmt, invalid)


# ---------------------------------------------------------------- moments

def run_moments(cfg: ExperimentConfig, layer: int = 1, ks: Sequence[int] = (1, 2, 3, 4),
                fmt: str = "csv") -> RunOutput:
    """Monte Carlo moments of P_j against Bessel and Gaussian main terms."""
    p = _partition(cfg)
    ly = p.layers[layer]
    s2 = layer_covariance(p, layer, 0.0).s2
    prods = ly.weight ** 2
    rows = []
    for k in ks:
        r = empirical_moment(prime_poly_sampler(p, layer), k, cfg.samples, cfg.seed,
                             predicted=bessel_main_term(prods, k), name=f"E[P{layer}^{k}]", threads=cfg.threads)
        g = gaussian_moment_prediction([s2], [s2], [1.0], [0.0], k).real
        rows.append(report_row(r, "gaussian", g))
    # short-interval quadrature against the Bessel main term
    ps = sieve_primes(50).primes
    for k in (2, 4):
        q = quadrature_moment(ps, 0.5, 1e4, k)
        b = bessel_main_term(1.0 / ps, k)
        r = EstimatorReport(f"quadrature E[P^{k}] T=1e4 p<=50", q, 0.0, b, 0, band=0.02, band_kind="relative")
        rows.append(report_row(r, "gaussian", gaussian_moment_prediction(
            [0.5 * float(np.sum(1.0 / ps))], [0.0], [1.0], [0.0], k).real))
    return persist(cfg, "moments", [Table("moments", REPORT_TABLE, rows)], None, fmt)


def run_covariance(cfg: ExperimentConfig, layer: int = 1, taus: Sequence[float] = (0.0, 0.01, 0.1, 1.0),
                   fmt: str = "csv") -> RunOutput:
    p = _partition(cfg)
    rows = []
    for tau in taus:
        r = covariance_estimate(p, layer, tau, cfg.samples, cfg.seed, cfg.threads)
        rows.append(report_row(r, "asymptotic", layer_covariance(p, layer, tau).asymptotic_rho))
    return persist(cfg, "covariance", [Table("covariance", REPORT_TABLE, rows)], None, fmt)


# ------------------------------------------------------------- mollifier

MOLLIFIER_COLUMNS = ["sample_index", "t", "zeta_re", "zeta_im", "m_re", "m_im", "zm_minus_1", "m_exp_gap"]


def run_mollifier_check(cfg: ExperimentConfig, fmt: str = "csv") -> RunOutput:
    """|zeta M - 1| and |M - exp(-sum script-P_j)| at sigma0 + it."""
    _require_zeta_range(cfg)
    p = _partition(cfg)
    nu = cfg.nu_override or default_nu(p)

    def work(i):
        t = _ordinate(cfg, i)
        z = euler_maclaurin_zeta(p.sigma0, t, target_abs_error=1e-9).value
        M = complex(eval_mollifier_exact(p, t, nu))
        gap = abs(M - complex(np.exp(-eval_fancy_total(p, t))))
        return [i, t, z.real, z.imag, M.real, M.imag, abs(z * M - 1), gap]

    rows, fails = _run_samples(cfg, work)
    invalid = len(fails) > FAILURE_LIMIT * cfg.samples
    zm = np.array([r[6] for r in rows])
    gap = np.array([r[7] for r in rows])
    sq = np.array([abs(complex(r[2], r[3]) * complex(r[4], r[5])) ** 2 for r in rows])
    pred = mollified_moment_prediction(p)
    msq, msq_se = jackknife([sq], lambda s, n: s[0] / n) if sq.size >= 2 else (math.nan, math.nan)
    summary = {
        "sigma0": p.sigma0, "X": p.X, "nu": nu, "exact_euler_product": nu >= len(p.table.primes_between(1, p.X)),
        "zm_minus_1_median": float(np.median(zm)) if zm.size else math.nan,
        "zm_minus_1_median_stderr": bootstrap_median(zm, cfg.seed),
        "m_exp_gap_median": float(np.median(gap)) if gap.size else math.nan,
        "m_exp_gap_median_stderr": bootstrap_median(gap, cfg.seed + 1),
        "mean_abs_zeta_m_sq": msq, "mean_abs_zeta_m_sq_stderr": msq_se,
        "predicted_mean_abs_zeta_m_sq": pred.S1_main,
        "valid": not invalid, "failures": [f[1] for f in fails],
    }
    return persist(cfg, "mollifier-check", [Table("mollifier", MOLLIFIER_COLUMNS, rows)], summary, fmt, invalid)


# ---------------------------------------------------------- large deviations

def run_large_dev(cfg: ExperimentConfig, thresholds: Sequence[float] | None = None,
                  taus: Sequence[float] = (1.0,), xi: Sequence[float] | None = None,
                  xi_prime: Sequence[float] | None = None, exp_tau: float = 0.0, fmt: str = "csv") -> RunOutput:
    """Event frequencies, barrier counts and the truncated exponential moment."""
    p = _partition(cfg)
    js = list(range(1, p.K - 2))
    s2 = np.array([layer_covariance(p, j, 0.0).s2 for j in js])
    if thresholds is None:
        thresholds = tuple(float(v) for v in np.sqrt(s2))
    xi = np.ones(len(js)) if xi is None else np.asarray(xi, dtype=float)
    xi_prime = np.zeros(len(js)) if xi_prime is None else np.asarray(xi_prime, dtype=float)
    events = event_probability(p, EventSpec(tuple(thresholds), tuple(taus)), cfg.samples, cfg.seed, cfg.threads)
    rows = []
    for ev in events:
        for r in ev.reports:
            alt = r.extra.get("independent_phase_prediction", r.extra.get("gaussian_exact_rho", math.nan))
            alt_name = ("independent_phase" if "independent_phase_prediction" in r.extra
                        else "gaussian_exact_rho" if "gaussian_exact_rho" in r.extra else "")
            r.name = f"{r.name} tau={ev.tau:g}"
            rows.append(report_row(r, alt_name, alt))
    em = exp_moment(p, xi, xi_prime, exp_tau, cfg.samples, cfg.seed, cfg.threads)
    rows.append(report_row(em, "independent_phase", em.extra["independent_phase_prediction"]))
    bar = p.log_T ** (1 / (4 * p.K))
    count = events[0].barrier_violations if len(events) else 0
    expected = cfg.samples * float(np.sum([2 * gaussian_tail_psi(bar / math.sqrt(v)) for v in s2]))
    rows.append(report_row(EstimatorReport("barrier_violations (t or t+tau)", count, math.sqrt(max(count, 1)),
                                           2 * expected, cfg.samples, heuristic=True)))
    summary = {
        "thresholds": list(thresholds), "taus": list(taus), "barrier_level": bar,
        "phase_law_P(P_j > x_j)": [phase_law_tail(p.layers[j].weight, x) for j, x in zip(js, thresholds)],
        "gaussian_P(P_j > x_j)": [gaussian_tail_psi(x / math.sqrt(v)) for x, v in zip(thresholds, s2)],
        "events": [{"tau": ev.tau, "m": ev.m, "exponent": ev.exponent, "log_freq_joint": ev.log_freq_joint,
                    "barrier_violations": ev.barrier_violations} for ev in events],
    }
    return persist(cfg, "large-dev", [Table("large_dev", REPORT_TABLE, rows)], summary, fmt)


# -------------------------------------------------------------------- BRW

def run_brw(cfg: ExperimentConfig, generations: int | None = None, branching: int | None = None,
            variance: float | None = None, fmt: str = "csv") -> RunOutput:
    """Maxima of independent BRW trees; parameters default to the (T, K) mapping."""
    mapping = brw_from_height(math.log(cfg.T), cfg.K, cfg.seed)
    base = mapping.config
    bc = BrwConfig(generations or base.generations, branching or base.branching,
                   base.level_variance if variance is None else variance, cfg.seed)
    mean, sd, samples = simulate_max(bc, cfg.samples, cfg.threads)
    rows = [[i, float(v)] for i, v in enumerate(samples)]
    ln_leaves = math.log(bc.leaf_count)
    summary = {"generations": bc.generations, "branching": bc.branching, "level_variance": bc.level_variance,
               "leaf_count": bc.leaf_count, "mean_max": mean, "sd_max": sd,
               "mean_over_ln_leaves": mean / ln_leaves if ln_leaves > 0 else math.nan,
               "height_mapping": {"generations": base.generations, "branching": base.branching,
                                 "level_variance": base.level_variance, "grid_points": mapping.grid_points,
                                 "leaf_mismatch": mapping.leaf_mismatch}}
    return persist(cfg, "brw", [Table("brw", ["trial", "max"], rows)], summary, fmt)
