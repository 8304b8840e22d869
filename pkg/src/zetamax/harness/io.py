"""Result files and run manifests.

A manifest is written before the first result file of a run and lists the
files the run will produce; it is rewritten with the end time once they
exist. Floats go to CSV through ``repr`` so values round-trip exactly.
"""
from __future__ import annotations

import csv
import datetime as _dt
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .. import __version__
from .config import ExperimentConfig

MANIFEST_PREFIX = "manifest_"


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return str(v)


def _jsonable(o):
    if isinstance(o, dict):
        return {str(k): _jsonable(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_jsonable(v) for v in o]
    if isinstance(o, (np.bool_,)):
        return bool(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, (float, np.floating)):
        f = float(o)
        return f if math.isfinite(f) else repr(f)
    if isinstance(o, np.ndarray):
        return _jsonable(o.tolist())
    if hasattr(o, "value") and isinstance(getattr(o, "value"), str):
        return o.value
    return o


def write_table(path: Path, columns: Sequence[str], rows: Iterable[Sequence], fmt: str = "csv") -> Path:
    """Write rows as CSV, or as a JSON list of objects when ``fmt`` is json."""
    path = Path(path).with_suffix("." + fmt)
    rows = list(rows)
    if fmt == "csv":
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(columns)
            for r in rows:
                w.writerow([_cell(v) for v in r])
    elif fmt == "json":
        with open(path, "w") as fh:
            json.dump([_jsonable(dict(zip(columns, r))) for r in rows], fh, indent=1, sort_keys=True)
            fh.write("\n")
    else:
        raise ValueError(f"unknown format {fmt}")
    return path


def write_json(path: Path, obj) -> Path:
    path = Path(path)
    with open(path, "w") as fh:
        json.dump(_jsonable(obj), fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def _now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


@dataclass
class RunManifest:
    subcommand: str
    config: dict
    config_hash: str
    version: str
    started: str
    finished: str | None = None
    files: list[str] = field(default_factory=list)
    status: str = "running"

    @property
    def path_name(self) -> str:
        return f"{MANIFEST_PREFIX}{self.subcommand}.json"


def start_run(out_dir, subcommand: str, cfg: ExperimentConfig, planned: Sequence[str]) -> RunManifest:
    """Create the output directory and write the manifest before any result."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    m = RunManifest(subcommand, cfg.to_dict(), cfg.hash(), __version__, _now(), files=list(planned))
    write_json(out / m.path_name, m.__dict__)
    return m


def finish_run(out_dir, m: RunManifest, files: Sequence[Path], status: str = "ok") -> None:
    m.files = sorted(Path(f).name for f in files)
    m.finished = _now()
    m.status = status
    write_json(Path(out_dir) / m.path_name, m.__dict__)


def read_manifests(out_dir) -> list[dict]:
    return [json.loads(p.read_text()) for p in sorted(Path(out_dir).glob(MANIFEST_PREFIX + "*.json"))]


def find_orphans(out_dir) -> tuple[list[str], list[str]]:
    """Result files referenced by no manifest, and files claimed by more than one."""
    out = Path(out_dir)
    refs: dict[str, int] = {}
    for m in read_manifests(out):
        for f in m.get("files", []):
            refs[f] = refs.get(f, 0) + 1
    present = sorted(p.name for p in out.iterdir()
                     if p.is_file() and not p.name.startswith(MANIFEST_PREFIX))
    orphans = [f for f in present if f not in refs]
    shared = sorted(f for f, c in refs.items() if c > 1)
    return orphans, shared
