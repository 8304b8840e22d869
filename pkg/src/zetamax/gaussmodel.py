"""Gaussian branching random walk standing in for the prime polynomials.

A tree of depth g with b children per node; every edge at depth j carries
an independent N(0, v) increment and a leaf's value is the sum along its
root path. Leaves that share a depth-(j+1) prefix share the first j+1
increments exactly, and increments on different edges are independent.

Edge noise is a keyed hash of (seed, depth, prefix index), so the tree is
never stored and any leaf can be regenerated on its own.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import BudgetError, DomainError
from .rng import STREAM_BRW_NODE, STREAM_TRIAL, derive_seed, normal
from ._numeric import ordered_map

DEFAULT_LEAF_BUDGET = 1 << 24
SUBTREE_LEAVES = 1 << 16


class Dichotomy(str, enum.Enum):
    EQUAL = "Equal"
    INDEPENDENT = "Independent"


@dataclass(frozen=True)
class BrwConfig:
    generations: int
    branching: int
    level_variance: float
    seed: int = 0
    leaf_budget: int = DEFAULT_LEAF_BUDGET

    def __post_init__(self):
        if self.generations < 1 or self.branching < 1:
            raise DomainError("generations and branching must be positive")
        if self.level_variance < 0:
            raise DomainError("level_variance must be nonnegative")
        if self.leaf_count > self.leaf_budget:
            raise BudgetError(f"{self.leaf_count} leaves exceed budget {self.leaf_budget}",
                              budget=self.leaf_budget)

    @property
    def leaf_count(self) -> int:
        return self.branching ** self.generations

    def prefix(self, leaf, depth: int):
        """Index of the depth-(depth+1) ancestor edge of ``leaf``."""
        return leaf // self.branching ** (self.generations - depth - 1)


@dataclass(frozen=True)
class BrwLeafValue:
    leaf_index: int
    increments: np.ndarray
    total: float


def _increments(cfg: BrwConfig, depth: int, prefixes: np.ndarray) -> np.ndarray:
    if cfg.level_variance == 0:
        return np.zeros(np.shape(prefixes))
    return math.sqrt(cfg.level_variance) * normal(cfg.seed, STREAM_BRW_NODE, depth, prefixes)


def leaf_field(cfg: BrwConfig, leaf: int) -> BrwLeafValue:
    """Increments along the root path of ``leaf`` and their sum."""
    if not 0 <= leaf < cfg.leaf_count:
        raise IndexError(f"leaf {leaf} outside 0..{cfg.leaf_count - 1}")
    inc = np.array([float(_increments(cfg, j, np.uint64(cfg.prefix(leaf, j))))
                    for j in range(cfg.generations)])
    return BrwLeafValue(int(leaf), inc, math.fsum(inc))


def leaf_totals(cfg: BrwConfig, leaves) -> np.ndarray:
    """Vectorized leaf totals; equals leaf_field(...).total up to summation order."""
    leaves = np.asarray(leaves, dtype=np.int64)
    tot = np.zeros(leaves.shape)
    for j in range(cfg.generations):
        tot += _increments(cfg, j, cfg.prefix(leaves, j).astype(np.uint64))
    return tot


def covariance_dichotomy(cfg: BrwConfig, leaf_k: int, leaf_l: int, j: int) -> Dichotomy:
    """Equal when the two root paths share the depth-(j+1) prefix."""
    if not (0 <= leaf_k < cfg.leaf_count and 0 <= leaf_l < cfg.leaf_count):
        raise IndexError("leaf out of range")
    if not 0 <= j < cfg.generations:
        raise DomainError(f"level {j} outside 0..{cfg.generations - 1}")
    same = cfg.prefix(leaf_k, j) == cfg.prefix(leaf_l, j)
    return Dichotomy.EQUAL if same else Dichotomy.INDEPENDENT


def trial_config(cfg: BrwConfig, trial: int) -> BrwConfig:
    return replace(cfg, seed=derive_seed(cfg.seed, STREAM_TRIAL, trial))


def tree_max(cfg: BrwConfig) -> float:
    """Max leaf total of one tree, walking top prefixes and vectorizing subtrees."""
    g, b = cfg.generations, cfg.branching
    top = 0
    while b ** (g - top) > SUBTREE_LEAVES:
        top += 1
    # partial sums over the top levels for every depth-`top` prefix
    partial = np.zeros(1)
    for j in range(top):
        idx = np.arange(b ** (j + 1), dtype=np.uint64)
        partial = np.repeat(partial, b) + _increments(cfg, j, idx)
    best = -math.inf
    for pre in range(b ** top):
        sums = np.array([partial[pre]])
        for j in range(top, g):
            width = b ** (j - top + 1)
            idx = (np.int64(pre) * width + np.arange(width, dtype=np.int64)).astype(np.uint64)
            sums = np.repeat(sums, b) + _increments(cfg, j, idx)
        best = max(best, float(np.max(sums)))
    return best


def simulate_max(cfg: BrwConfig, n_trials: int, threads: int = 1) -> tuple[float, float, np.ndarray]:
    """Mean and sample sd of the leaf maximum over independent trees."""
    if n_trials < 1:
        raise DomainError("n_trials must be at least 1")
    samples = np.array(ordered_map(lambda i: tree_max(trial_config(cfg, i)), range(n_trials), threads))
    sd = float(np.std(samples, ddof=1)) if n_trials > 1 else 0.0
    return float(np.mean(samples)), sd, samples


@dataclass(frozen=True)
class HeightMapping:
    config: BrwConfig
    log_T: float
    K: int
    grid_points: int  # floor(log T), the number of shift points in the model
    leaf_mismatch: float  # b^g / floor(log T)


def brw_from_height(log_T: float, K: int, seed: int = 0) -> HeightMapping:
    """g = K-1, b = ceil((log T)^(1/K)), v = log log T/(2K)."""
    if K < 2 or log_T <= 1:
        raise DomainError("need K >= 2 and log T > 1")
    g = K - 1
    b = int(math.ceil(log_T ** (1 / K)))
    v = math.log(log_T) / (2 * K)
    cfg = BrwConfig(g, b, v, seed)
    n = int(math.floor(log_T))
    return HeightMapping(cfg, log_T, K, n, cfg.leaf_count / n)
