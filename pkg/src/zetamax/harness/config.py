"""Experiment configuration: strict JSON in, validated dataclass out."""
from __future__ import annotations

import dataclasses
import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path

from ..errors import ConfigError

U64 = 1 << 64

# JSON key -> attribute name; "lambda" is a Python keyword
_KEY_TO_ATTR = {"lambda": "lam"}
_ATTR_TO_KEY = {v: k for k, v in _KEY_TO_ATTR.items()}
REQUIRED_KEYS = ("T", "K", "seed")
# execution settings that do not change any result value
EXECUTION_KEYS = ("threads", "output_dir")


@dataclass(frozen=True)
class ExperimentConfig:
    T: float
    K: int
    seed: int
    sigma0_override: float | None = None
    nu_override: int | None = None
    samples: int = 100
    threads: int = 1
    interval_half_width: float = 1.0
    proxy_half_width: float = 0.25
    tau_grid_count: int | None = None  # None means floor(log T)
    lam: float = 0.5
    output_dir: str = "results"

    def __post_init__(self):
        problems = self.problems()
        if problems:
            raise ConfigError(problems)

    def problems(self) -> list[str]:
        out = []
        if not (isinstance(self.T, (int, float)) and math.isfinite(self.T) and self.T >= 100):
            out.append(f"T must be a finite number >= 100, got {self.T!r}")
        if not (isinstance(self.K, int) and self.K >= 4):
            out.append(f"K must be an integer >= 4, got {self.K!r}")
        if not (isinstance(self.seed, int) and 0 <= self.seed < U64):
            out.append(f"seed must be an integer in [0, 2^64), got {self.seed!r}")
        if not (isinstance(self.samples, int) and self.samples >= 1):
            out.append(f"samples must be an integer >= 1, got {self.samples!r}")
        if not (isinstance(self.threads, int) and self.threads >= 1):
            out.append(f"threads must be an integer >= 1, got {self.threads!r}")
        if not (isinstance(self.lam, (int, float)) and 0 < self.lam < 1):
            out.append(f"lambda must lie in the open interval (0, 1), got {self.lam!r}")
        for name in ("interval_half_width", "proxy_half_width"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and 0 < v <= 1):
                out.append(f"{name} must lie in (0, 1], got {v!r}")
        if self.tau_grid_count is not None and not (isinstance(self.tau_grid_count, int)
                                                    and self.tau_grid_count >= 1):
            out.append(f"tau_grid_count must be an integer >= 1, got {self.tau_grid_count!r}")
        if self.sigma0_override is not None and not (isinstance(self.sigma0_override, (int, float))
                                                     and 0.5 < self.sigma0_override <= 1):
            out.append(f"sigma0_override must lie in (1/2, 1], got {self.sigma0_override!r}")
        if self.nu_override is not None and not (isinstance(self.nu_override, int) and self.nu_override >= 1):
            out.append(f"nu_override must be an integer >= 1, got {self.nu_override!r}")
        if not isinstance(self.output_dir, str) or not self.output_dir:
            out.append("output_dir must be a nonempty string")
        return out

    @property
    def grid_count(self) -> int:
        return self.tau_grid_count if self.tau_grid_count is not None else int(math.floor(math.log(self.T)))

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        return {_ATTR_TO_KEY.get(k, k): v for k, v in d.items()}

    def hash(self) -> str:
        """sha256 of the canonical JSON of every result-affecting field."""
        d = {k: v for k, v in self.to_dict().items() if k not in EXECUTION_KEYS}
        if isinstance(d["T"], int):
            d["T"] = float(d["T"])
        blob = json.dumps(d, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def replace(self, **changes) -> "ExperimentConfig":
        return dataclasses.replace(self, **{_KEY_TO_ATTR.get(k, k): v for k, v in changes.items()})


FIELD_KEYS = tuple(_ATTR_TO_KEY.get(f.name, f.name) for f in dataclasses.fields(ExperimentConfig))


def _coerce(key: str, v):
    # JSON has one number type; accept 1e7 for T and 4.0 for K-like integers
    if key in ("T", "sigma0_override", "lambda", "interval_half_width", "proxy_half_width"):
        return float(v) if isinstance(v, (int, float)) and not isinstance(v, bool) else v
    if key in ("K", "seed", "samples", "threads", "nu_override", "tau_grid_count"):
        if isinstance(v, float) and v.is_integer():
            return int(v)
    return v


def config_from_dict(data: dict) -> ExperimentConfig:
    """Validate a parsed JSON object; every problem is reported at once."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    problems = [f"unknown key {k!r}" for k in data if k not in FIELD_KEYS]
    problems += [f"missing required key {k!r}" for k in REQUIRED_KEYS if k not in data]
    kwargs = {_KEY_TO_ATTR.get(k, k): _coerce(k, v) for k, v in data.items() if k in FIELD_KEYS}
    for k in REQUIRED_KEYS:
        kwargs.setdefault(k, {"T": 1e6, "K": 4, "seed": 0}[k])
    try:
        cfg = ExperimentConfig(**kwargs)
    except ConfigError as e:
        problems += e.problems
        cfg = None
    if problems:
        raise ConfigError(problems)
    return cfg


def load_config(path) -> ExperimentConfig:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"config {path} is not valid JSON: {e}") from e
    return config_from_dict(data)


def write_config(cfg: ExperimentConfig, path) -> None:
    Path(path).write_text(json.dumps(cfg.to_dict(), indent=2, sort_keys=True) + "\n")
