"""Counter-based uniform variates keyed by (seed, trial, draw).

Each trial owns a SplitMix64 stream whose starting state is a hash of
``(seed, trial)``.  Draw ``d`` of trial ``t`` is a pure function of
``(seed, t, d)``, so trials can be generated in any order, in blocks or in
parallel and still reproduce bit for bit.  The mapping is part of the public
contract and will not change between versions.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_GAMMA = np.uint64(GOLDEN_GAMMA)


def _mix64(z: np.ndarray) -> np.ndarray:
    # SplitMix64 output function; uint64 arithmetic wraps modulo 2**64
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def _mix_int(z: int) -> int:
    return int(_mix64(np.array([z & MASK64], dtype=np.uint64))[0])


def derive_seed(seed: int, index: int) -> int:
    """Independent child seed, e.g. one per theatre section."""
    return _mix_int(int(seed) ^ _mix_int(index + 1))


def trial_keys(seed: int, trials) -> np.ndarray:
    """Stream key of each trial index under ``seed``."""
    trials = np.asarray(trials, dtype=np.uint64)
    base = np.uint64(_mix_int(int(seed) + GOLDEN_GAMMA))
    with np.errstate(over="ignore"):
        return _mix64(base ^ (trials * _GAMMA + _GAMMA))


def uniforms(keys: np.ndarray, draws) -> np.ndarray:
    """Uniform doubles in [0, 1) for stream ``keys`` at positions ``draws``."""
    draws = np.asarray(draws, dtype=np.uint64)
    with np.errstate(over="ignore"):
        bits = _mix64(keys + (draws + np.uint64(1)) * _GAMMA)
    return (bits >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))
