"""Counter-based random streams.

Every random quantity is a pure function of (seed, stream, counters...):
the words are folded through the SplitMix64 finalizer, so any sample can be
regenerated in isolation and results never depend on evaluation order or
worker count.
"""
from __future__ import annotations

import numpy as np
from scipy.special import ndtri

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1

# stream identifiers; new streams must get fresh values
STREAM_T = 1
STREAM_TRIAL = 2
STREAM_BRW_NODE = 3
STREAM_GAUSS = 4
STREAM_SECOND_MOMENT = 5
STREAM_PAIRS = 6
STREAM_BOOTSTRAP = 7


def _mix(x: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        x = (x ^ (x >> np.uint64(30))) * _M1
        x = (x ^ (x >> np.uint64(27))) * _M2
        return x ^ (x >> np.uint64(31))


def hash_words(seed: int, *words) -> np.ndarray:
    """Keyed 64-bit hash of ``seed`` and a sequence of (broadcastable) integer words."""
    h = _mix(np.asarray(np.uint64(seed & _MASK64)) ^ _GOLDEN)
    with np.errstate(over="ignore"):
        for i, w in enumerate(words):
            w = np.asarray(w).astype(np.uint64)
            h = _mix(h ^ (w + _GOLDEN * np.uint64(i + 1)))
    return h


def derive_seed(seed: int, *words: int) -> int:
    return int(hash_words(seed, *words))


def uniform(seed: int, *words) -> np.ndarray:
    """Uniform doubles in the open interval (0, 1), 53 random bits each."""
    h = hash_words(seed, *words)
    return ((h >> np.uint64(11)).astype(np.float64) + 0.5) * (1.0 / (1 << 53))


def normal(seed: int, *words) -> np.ndarray:
    """Standard normals by inverse CDF of the keyed uniforms."""
    return ndtri(uniform(seed, *words))


def sample_ordinates(T: float, seed: int, indices) -> np.ndarray:
    """t uniform on [T, 2T] for each sample index."""
    return T + T * uniform(seed, STREAM_T, np.asarray(indices, dtype=np.uint64))
