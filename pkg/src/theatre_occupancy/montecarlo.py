"""Seeded simulation of the seating process.

Two semantics are offered:

``MODEL``
    The instance-shrinking process behind the recurrences.  On an ``m``-seat
    one-entrance instance a seat ``k`` is drawn from the ``m``-seat
    distribution; a courteous arrival leaves an ``(m-1)``-seat instance, a
    selfish one leaves ``k-1`` seats.  With two entrances a selfish arrival at
    ``k`` splits the row into one-entrance instances of ``k-1`` and ``m-k``
    seats, each labelled from its own entrance.

``PHYSICAL``
    Seats keep their labels and their original choice weights.  An empty seat
    is accessible if no selfish occupant sits between it and some entrance;
    each arrival draws from the weights restricted to the accessible seats.
    Which entrance an arrival uses cannot change the count, so it is not
    tracked.

Both semantics coincide in distribution for uniform seat choice.  Every
trial consumes two variates per arrival (seat, then courtesy) from its own
keyed stream, see :mod:`theatre_occupancy.rng`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import rng
from .core import Entrances, RowSpec, inverse_cdf, seat_pmf

Z95 = 1.96
MODEL_BLOCK = 1 << 16
PHYSICAL_CELLS = 1 << 18  # trials * seats held in memory per block
CHUNK = 16


class Semantics(enum.Enum):
    MODEL = "model"
    PHYSICAL = "physical"

    @classmethod
    def parse(cls, value) -> "Semantics":
        if isinstance(value, Semantics):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"semantics must be 'model' or 'physical', got {value!r}") from None


@dataclass(frozen=True)
class SimulationSummary:
    trials: int
    mean: float
    variance: float
    std_error: float
    ci95: tuple[float, float]
    spec: RowSpec | None = None
    seed: int | None = None
    semantics: Semantics | None = None

    def to_dict(self) -> dict:
        spec = self.spec
        return {
            "trials": self.trials,
            "mean": self.mean,
            "variance": self.variance,
            "std_error": self.std_error,
            "ci95": list(self.ci95),
            "seed": self.seed,
            "semantics": self.semantics.value if self.semantics else None,
            "spec": None if spec is None else {
                "seats": spec.seats,
                "entrances": spec.entrances.value,
                "distribution": spec.distribution.value,
                "courtesy": spec.courtesy,
            },
        }


def _moments(samples: np.ndarray) -> tuple[int, float, float]:
    x = np.asarray(samples, dtype=float).ravel()
    n = x.size
    # shifted-data sums: one pass over x - x[0] keeps cancellation small
    d = x - x[0]
    s1 = float(np.sum(d))
    s2 = float(np.sum(d * d))
    mean = x[0] + s1 / n
    var = (s2 - s1 * s1 / n) / (n - 1) if n > 1 else math.nan
    return n, float(mean), max(var, 0.0) if n > 1 else var


def summarize(samples, spec: RowSpec | None = None, seed: int | None = None,
              semantics: Semantics | None = None) -> SimulationSummary:
    """Mean, unbiased variance, standard error and normal 95% interval."""
    samples = np.asarray(samples)
    if samples.size < 2:
        raise ValueError("need at least two samples to estimate a variance")
    return _summary(samples, spec, seed, semantics)


def _summary(samples, spec, seed, semantics) -> SimulationSummary:
    n, mean, var = _moments(samples)
    se = math.sqrt(var / n) if n > 1 else math.nan
    return SimulationSummary(n, mean, var, se, (mean - Z95 * se, mean + Z95 * se),
                             spec, seed, semantics)


def _model_one(dist, sizes, p, keys, draws, counts):
    """Run one-entrance instances of the given sizes to exhaustion, in place."""
    idx = np.flatnonzero(sizes > 0)
    while idx.size:
        m = sizes[idx]
        d = draws[idx]
        k = inverse_cdf(dist, m, rng.uniforms(keys[idx], d))
        courteous = rng.uniforms(keys[idx], d + 1) < p
        draws[idx] = d + 2
        counts[idx] += 1
        m = np.where(courteous, m - 1, k - 1)
        sizes[idx] = m
        idx = idx[m > 0]


def _model_block(spec: RowSpec, keys: np.ndarray) -> np.ndarray:
    t = keys.size
    counts = np.zeros(t, dtype=np.int64)
    draws = np.zeros(t, dtype=np.uint64)
    dist, p = spec.distribution, spec.courtesy
    if spec.entrances is Entrances.ONE:
        _model_one(dist, np.full(t, spec.seats, dtype=np.int64), p, keys, draws, counts)
        return counts
    sizes = np.full(t, spec.seats, dtype=np.int64)
    left = np.zeros(t, dtype=np.int64)
    right = np.zeros(t, dtype=np.int64)
    idx = np.arange(t)
    while idx.size:
        m = sizes[idx]
        d = draws[idx]
        k = inverse_cdf(dist, m, rng.uniforms(keys[idx], d))
        courteous = rng.uniforms(keys[idx], d + 1) < p
        draws[idx] = d + 2
        counts[idx] += 1
        sizes[idx] = np.where(courteous, m - 1, 0)
        selfish = idx[~courteous]
        left[selfish] = k[~courteous] - 1
        right[selfish] = m[~courteous] - k[~courteous]
        idx = idx[sizes[idx] > 0]
    # the two sides fill independently; left side first, then right
    _model_one(dist, left, p, keys, draws, counts)
    _model_one(dist, right, p, keys, draws, counts)
    return counts


def _chunk_sums(avail: np.ndarray) -> np.ndarray:
    t, width = avail.shape
    return avail.reshape(t, width // CHUNK, CHUNK).sum(axis=2)


def _weighted_pick(avail: np.ndarray, sums: np.ndarray, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row-wise draw of a column with probability proportional to ``avail``.

    ``sums`` holds the per-chunk totals of ``avail``; only the chunk the
    target falls in is scanned seat by seat.  Returns the column per row
    (-1 where a row has no weight left) and the row totals.
    """
    t = avail.shape[0]
    cum = np.cumsum(sums, axis=1)
    total = cum[:, -1]
    target = u * total
    chunk = np.argmax(cum > target[:, None], axis=1)
    r = np.arange(t)
    before = np.where(chunk > 0, cum[r, chunk - 1], 0.0)
    inside = avail.reshape(t, -1, CHUNK)[r, chunk]
    local = np.cumsum(inside, axis=1)
    hit = local > (target - before)[:, None]
    col = np.argmax(hit, axis=1)
    # rounding can leave no hit inside the chunk: take its last weighted seat
    miss = ~hit[:, -1]
    if miss.any():
        col[miss] = CHUNK - 1 - np.argmax(inside[miss, ::-1] > 0, axis=1)
    pos = chunk * CHUNK + col
    pos[total <= 0] = -1
    return pos, total


def _physical_block(spec: RowSpec, keys: np.ndarray) -> np.ndarray:
    t, n, p = keys.size, spec.seats, spec.courtesy
    two = spec.entrances is Entrances.TWO
    width = -(-n // CHUNK) * CHUNK
    weights = np.zeros(width)
    weights[:n] = seat_pmf(spec.distribution, n)
    cols = np.arange(1, width + 1)
    counts = np.zeros(t, dtype=np.int64)
    # live state, compacted as trials finish
    avail = np.tile(weights, (t, 1))
    sums = _chunk_sums(avail)
    rows = np.arange(t)
    live_keys = keys
    first = np.full(t, n + 1, dtype=np.int64)  # leftmost selfish seat
    last = np.zeros(t, dtype=np.int64)         # rightmost selfish seat
    draw = np.uint64(0)
    while rows.size:
        # every live trial has made the same number of arrivals
        pos, total = _weighted_pick(avail, sums, rng.uniforms(live_keys, draw))
        live = np.flatnonzero(total > 0)
        if live.size < rows.size:
            if not live.size:
                break
            if 4 * live.size < 3 * rows.size:
                avail, sums, rows, live_keys = avail[live], sums[live], rows[live], live_keys[live]
                first, last, pos = first[live], last[live], pos[live]
                live = np.arange(rows.size)
        courteous = rng.uniforms(live_keys[live], draw + np.uint64(1)) < p
        draw += np.uint64(2)
        pos = pos[live]
        avail[live, pos] = 0.0
        chunk = pos // CHUNK
        sums[live, chunk] = avail.reshape(rows.size, -1, CHUNK)[live, chunk].sum(axis=1)
        counts[rows[live]] += 1
        sel = live[~courteous]
        if sel.size:
            seat = pos[~courteous] + 1
            first[sel] = np.minimum(first[sel], seat)
            last[sel] = np.maximum(last[sel], seat)
            if two:
                blocked = (cols >= first[sel, None]) & (cols <= last[sel, None])
            else:
                blocked = cols >= first[sel, None]
            avail[sel] = np.where(blocked, 0.0, avail[sel])
            sums[sel] = _chunk_sums(avail[sel])
    return counts


def simulate_trials(spec: RowSpec, trials: int, seed: int,
                    semantics: Semantics | str = Semantics.MODEL, first_trial: int = 0) -> np.ndarray:
    """Per-trial occupied-seat counts for trials ``first_trial .. first_trial+trials-1``."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    semantics = Semantics.parse(semantics)
    if semantics is Semantics.MODEL:
        run, block = _model_block, MODEL_BLOCK
    else:
        run, block = _physical_block, max(1, PHYSICAL_CELLS // spec.seats)
    out = np.empty(trials, dtype=np.int64)
    for start in range(0, trials, block):
        stop = min(trials, start + block)
        keys = rng.trial_keys(seed, np.arange(first_trial + start, first_trial + stop))
        out[start:stop] = run(spec, keys)
    return out


def simulate(spec: RowSpec, trials: int, seed: int,
             semantics: Semantics | str = Semantics.MODEL) -> SimulationSummary:
    semantics = Semantics.parse(semantics)
    values = simulate_trials(spec, trials, seed, semantics)
    return _summary(values, spec, seed, semantics)


def simulate_model(spec: RowSpec, trials: int, seed: int) -> SimulationSummary:
    return simulate(spec, trials, seed, Semantics.MODEL)


def simulate_physical(spec: RowSpec, trials: int, seed: int) -> SimulationSummary:
    return simulate(spec, trials, seed, Semantics.PHYSICAL)
