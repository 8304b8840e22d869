"""Command-line entry point: ``zetamax <subcommand> [options]``.

Exit codes: 0 success, 2 configuration error, 3 budget or precision
failure, 4 invalid run (more than 1% of samples failed).
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from ..errors import (BudgetError, CapacityError, ConfigError, CoverageError, DomainError, PrecisionError,
                      ResolutionError, ZetamaxError)
from . import experiments as ex
from .config import ExperimentConfig, config_from_dict, load_config
from .io import find_orphans, read_manifests, write_table

EXIT_OK, EXIT_CONFIG, EXIT_BUDGET, EXIT_INVALID = 0, 2, 3, 4

log = logging.getLogger("zetamax")


def _floats(s: str) -> list[float]:
    return [float(x) for x in s.split(",") if x.strip()]


def _ints(s: str) -> list[int]:
    return [int(x) for x in s.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global options")
    g.add_argument("--config", type=Path, help="JSON experiment config")
    g.add_argument("--seed", type=int, help="64-bit seed")
    g.add_argument("--samples", type=int, help="number of samples or trials")
    g.add_argument("--threads", type=int, help="worker threads (results do not depend on it)")
    g.add_argument("--out", type=str, help="output directory")
    g.add_argument("--format", choices=("csv", "json"), default="csv", help="result table format")
    g.add_argument("--T", type=float, help="height T (overrides config)")
    g.add_argument("--K", type=int, help="partition parameter K (overrides config)")
    g.add_argument("--lambda", dest="lam", type=float, help="event threshold parameter in (0, 1)")
    g.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="zetamax", description="Maxima of zeta on short intervals: "
                                 "zeta engines, prime-polynomial proxies and Monte Carlo checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("partition", parents=[common], help="print the prime partition for (T, K)")

    p = sub.add_parser("zeta-eval", parents=[common], help="evaluate zeta at sigma + it")
    p.add_argument("--sigma", type=float, default=0.5)
    p.add_argument("--t", type=_floats, help="comma-separated ordinates (default: sampled on [T, 2T])")
    p.add_argument("--method", choices=("auto", "em", "rs"), default="auto")

    p = sub.add_parser("max-scan", parents=[common], help="interval maximum of log|zeta| around t")
    p.add_argument("--t", type=_floats, help="comma-separated centres (default: sampled on [T, 2T])")

    sub.add_parser("fhk-sample", parents=[common], help="Monte Carlo of interval maxima vs the FHK prediction")
    p = sub.add_parser("proxy-compare", parents=[common], help="zeta maxima against prime-polynomial events")
    p.add_argument("--no-window", action="store_true", help="skip the |zeta M - 1| window scan")

    p = sub.add_parser("upper-bound", parents=[common], help="exceedance of V log T vs the Chebyshev bound")
    p.add_argument("--V", type=_floats, default=[5.0, 10.0])

    p = sub.add_parser("moments", parents=[common], help="moments of P_j vs Bessel and Gaussian terms")
    p.add_argument("--layer", type=int, default=1)
    p.add_argument("--k", type=_ints, default=[1, 2, 3, 4])

    p = sub.add_parser("covariance", parents=[common], help="cov(P_j(t), P_j(t+tau)) vs rho_j(tau)")
    p.add_argument("--layer", type=int, default=1)
    p.add_argument("--tau", type=_floats, default=[0.0, 0.01, 0.1, 1.0])

    sub.add_parser("mollifier-check", parents=[common], help="|zeta M - 1| and |M - exp(-P)| at sigma0")

    p = sub.add_parser("large-dev", parents=[common], help="event frequencies, barrier, exp moment")
    p.add_argument("--x", type=_floats, help="thresholds x_j, j = 1..K-3 (default s_j)")
    p.add_argument("--tau", type=_floats, default=[1.0])
    p.add_argument("--xi", type=_floats)
    p.add_argument("--xi-prime", type=_floats)
    p.add_argument("--exp-tau", type=float, default=0.0)

    p = sub.add_parser("brw", parents=[common], help="branching random walk maxima")
    p.add_argument("--generations", type=int)
    p.add_argument("--branching", type=int)
    p.add_argument("--variance", type=float)

    sub.add_parser("report", parents=[common], help="collect summaries and verdicts in --out")
    return ap


def resolve_config(args) -> ExperimentConfig:
    data = json.loads(args.config.read_text()) if args.config else {}
    if args.config:
        load_config(args.config)  # strict validation of the file itself
    overrides = {"seed": args.seed, "samples": args.samples, "threads": args.threads, "output_dir": args.out,
                 "T": args.T, "K": args.K, "lambda": args.lam}
    data.update({k: v for k, v in overrides.items() if v is not None})
    data.setdefault("T", 1e6)
    data.setdefault("K", 4)
    data.setdefault("seed", 0)
    return config_from_dict(data)


def run_report(cfg: ExperimentConfig, fmt: str) -> ex.RunOutput:
    out = Path(cfg.output_dir)
    if not out.is_dir():
        raise ConfigError(f"output directory {out} does not exist")
    rows = []
    for m in read_manifests(out):
        if m["subcommand"] == "report":
            continue
        rows.append([m["subcommand"], "status", m.get("status")])
        for name in m.get("files", []):
            f = out / name
            if name.endswith("_summary.json") and f.exists():
                for k, v in sorted(_flatten(json.loads(f.read_text())).items()):
                    rows.append([m["subcommand"], k, v])
            elif f.suffix == ".csv" and f.exists():
                with open(f, newline="") as fh:
                    for r in csv.DictReader(fh):
                        if "verdict" in r:
                            rows.append([m["subcommand"], r["name"], r["verdict"] or f"flag:{r['flag']}"])
    orphans, shared = find_orphans(out)
    rows.append(["report", "orphans", ";".join(o for o in orphans if not o.startswith("report."))])
    rows.append(["report", "shared", ";".join(shared)])
    return ex.persist(cfg, "report", [ex.Table("report", ["source", "key", "value"], rows)], None, fmt)


def _flatten(d, prefix=""):
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = json.dumps(v)
        else:
            out[key] = v
    return out


def dispatch(args, cfg: ExperimentConfig) -> ex.RunOutput:
    fmt = args.format
    c = args.command
    if c == "partition":
        r = ex.run_partition(cfg, fmt)
        print(json.dumps(r.summary, indent=2))
        return r
    if c == "zeta-eval":
        return ex.run_zeta_eval(cfg, args.sigma, args.t, args.method, fmt)
    if c == "max-scan":
        return ex.run_max_scan(cfg, args.t, fmt)
    if c == "fhk-sample":
        return ex.run_fhk_sample(cfg, fmt)
    if c == "proxy-compare":
        return ex.run_proxy_comparison(cfg, fmt, with_window=not args.no_window)
    if c == "upper-bound":
        return ex.run_upper_bound_check(cfg, args.V, fmt)
    if c == "moments":
        return ex.run_moments(cfg, args.layer, args.k, fmt)
    if c == "covariance":
        return ex.run_covariance(cfg, args.layer, args.tau, fmt)
    if c == "mollifier-check":
        return ex.run_mollifier_check(cfg, fmt)
    if c == "large-dev":
        return ex.run_large_dev(cfg, args.x, args.tau, args.xi, args.xi_prime, args.exp_tau, fmt)
    if c == "brw":
        return ex.run_brw(cfg, args.generations, args.branching, args.variance, fmt)
    if c == "report":
        return run_report(cfg, fmt)
    raise ConfigError(f"unknown command {c}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = resolve_config(args)
        res = dispatch(args, cfg)
    except ConfigError as e:
        for p in e.problems:
            print(f"config error: {p}", file=sys.stderr)
        return EXIT_CONFIG
    except (BudgetError, PrecisionError, CapacityError, CoverageError, ResolutionError) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (DomainError, ZetamaxError) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_CONFIG
    for f in res.files:
        print(f)
    if res.invalid:
        print("run invalid: more than 1% of samples failed", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
