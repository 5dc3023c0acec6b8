"""Row description, seat-choice distributions and harmonic numbers.

Seats in a row are labelled ``1..n`` starting from the (left) entrance.  All
distributions are defined relative to that labelling, so a "left" bias is a
bias towards the entrance and a "right" bias is a bias away from it.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass

import numpy as np

EULER_GAMMA = 0.5772156649015329


class Entrances(enum.Enum):
    ONE = 1  # single entrance next to seat 1
    TWO = 2

    @classmethod
    def parse(cls, value) -> "Entrances":
        if isinstance(value, Entrances):
            return value
        try:
            return cls(int(value))
        except (TypeError, ValueError):
            raise ValueError(f"entrances must be 1 or 2, got {value!r}") from None


class SeatDistribution(enum.Enum):
    UNIFORM = "uniform"
    GEOMETRIC_LEFT = "geo-left"
    GEOMETRIC_RIGHT = "geo-right"
    ZIPF_LEFT = "zipf-left"
    ZIPF_RIGHT = "zipf-right"

    @classmethod
    def parse(cls, value) -> "SeatDistribution":
        if isinstance(value, SeatDistribution):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            names = ", ".join(d.value for d in cls)
            raise ValueError(f"unknown distribution {value!r} (expected one of {names})") from None


def check_probability(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"courtesy probability must lie in [0, 1], got {p}")
    return p


@dataclass(frozen=True)
class RowSpec:
    """One row (or row section): seat count, entrances, seat choice, courtesy."""

    seats: int
    entrances: Entrances = Entrances.ONE
    distribution: SeatDistribution = SeatDistribution.UNIFORM
    courtesy: float = 0.0

    def __post_init__(self):
        if isinstance(self.seats, bool) or int(self.seats) != self.seats or self.seats < 1:
            raise ValueError(f"a row needs a positive integer seat count, got {self.seats!r}")
        object.__setattr__(self, "seats", int(self.seats))
        object.__setattr__(self, "entrances", Entrances.parse(self.entrances))
        object.__setattr__(self, "distribution", SeatDistribution.parse(self.distribution))
        object.__setattr__(self, "courtesy", check_probability(self.courtesy))

    def with_seats(self, seats: int) -> "RowSpec":
        return RowSpec(seats, self.entrances, self.distribution, self.courtesy)


class HarmonicCache:
    """Grow-only table of harmonic numbers with ``H_0 = 0`` at index 0.

    The table is always rebuilt from scratch by forward summation when it
    grows, so every entry is independent of the order in which callers asked
    for it.
    """

    gamma = EULER_GAMMA

    def __init__(self):
        self._lock = threading.Lock()
        self._values = np.zeros(1)
        self._values.setflags(write=False)

    def table(self, n: int) -> np.ndarray:
        """Read-only array ``[H_0, H_1, ..., H_n]`` (possibly longer)."""
        values = self._values
        if len(values) > n:
            return values
        with self._lock:
            if len(self._values) <= n:
                size = max(n, 2 * (len(self._values) - 1), 1024)
                fresh = np.empty(size + 1)
                fresh[0] = 0.0
                np.cumsum(1.0 / np.arange(1, size + 1), out=fresh[1:])
                fresh.setflags(write=False)
                self._values = fresh
            return self._values


_HARMONIC = HarmonicCache()


def harmonic_table(n: int) -> np.ndarray:
    """Array ``[H_0, ..., H_n]`` of exactly ``n + 1`` entries (read-only)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return _HARMONIC.table(n)[: n + 1]


def harmonic(n: int) -> float:
    """The n-th harmonic number ``1 + 1/2 + ... + 1/n``."""
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"harmonic(n) is defined for integers n >= 1, got {n!r}")
    return float(_HARMONIC.table(int(n))[int(n)])


def seat_pmf(dist: SeatDistribution, n: int) -> np.ndarray:
    """Probability of choosing each seat ``1..n`` (entry ``k - 1`` is seat k)."""
    dist = SeatDistribution.parse(dist)
    if n < 1:
        raise ValueError("a row needs at least one seat")
    k = np.arange(1, n + 1, dtype=float)
    if dist is SeatDistribution.UNIFORM:
        return np.full(n, 1.0 / n)
    if dist is SeatDistribution.GEOMETRIC_LEFT:
        pmf = np.ldexp(1.0, -np.arange(1, n + 1))
        pmf[-1] = np.ldexp(1.0, -(n - 1))  # last seat absorbs the tail mass
        return pmf
    if dist is SeatDistribution.GEOMETRIC_RIGHT:
        pmf = np.ldexp(1.0, np.arange(1, n + 1) - n - 1)
        pmf[0] = np.ldexp(1.0, -(n - 1))  # first seat absorbs the tail mass
        return pmf
    h = harmonic(n)
    if dist is SeatDistribution.ZIPF_LEFT:
        return 1.0 / (k * h)
    return 1.0 / ((n + 1 - k) * h)


def seat_cdf(dist: SeatDistribution, m, k) -> np.ndarray:
    """``P(seat <= k)`` in an m-seat row, vectorised over ``m`` and ``k``.

    Closed form of the cumulative sum of :func:`seat_pmf`; ``cdf(m, m) == 1``
    exactly for every distribution.
    """
    dist = SeatDistribution.parse(dist)
    m = np.asarray(m, dtype=np.int64)
    k = np.asarray(k, dtype=np.int64)
    if dist is SeatDistribution.UNIFORM:
        return k / m
    if dist is SeatDistribution.GEOMETRIC_LEFT:
        return np.where(k >= m, 1.0, 1.0 - np.ldexp(1.0, -k))
    if dist is SeatDistribution.GEOMETRIC_RIGHT:
        return np.ldexp(1.0, k - m)
    H = harmonic_table(int(m.max(initial=1)))
    if dist is SeatDistribution.ZIPF_LEFT:
        return H[k] / H[m]
    return (H[m] - H[m - k]) / H[m]


def _initial_guess(dist: SeatDistribution, m: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Approximate inverse of the closed-form CDF; corrected exactly afterwards."""
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if dist is SeatDistribution.UNIFORM:
            k = np.floor(u * m) + 1
        elif dist is SeatDistribution.GEOMETRIC_LEFT:
            k = np.floor(-np.log2(1.0 - u)) + 1
        elif dist is SeatDistribution.GEOMETRIC_RIGHT:
            k = np.floor(m + np.log2(u)) + 1
        else:
            H = harmonic_table(int(m.max(initial=1)))
            if dist is SeatDistribution.ZIPF_LEFT:
                k = np.ceil(np.exp(u * H[m] - EULER_GAMMA) - 0.5)
            else:
                k = m - np.floor(np.exp((1.0 - u) * H[m] - EULER_GAMMA) - 0.5)
    k = np.nan_to_num(k, nan=1.0, posinf=1.0, neginf=1.0)
    return np.clip(k, 1, m).astype(np.int64)


def inverse_cdf(dist: SeatDistribution, m, u) -> np.ndarray:
    """Smallest seat k in ``1..m`` with ``u < cdf(m, k)``, for ``u`` in [0, 1).

    Vectorised; ``m`` and ``u`` broadcast against each other.  An analytic
    first guess is walked to the exact answer by comparisons against
    :func:`seat_cdf`, so the result depends only on the closed-form CDF.
    """
    dist = SeatDistribution.parse(dist)
    m, u = np.broadcast_arrays(np.asarray(m, dtype=np.int64), np.asarray(u, dtype=float))
    shape = m.shape
    m = m.ravel()
    u = u.ravel()
    k = _initial_guess(dist, m, u)
    # too small: cdf(k) <= u
    idx = np.flatnonzero(u >= seat_cdf(dist, m, k))
    while idx.size:
        k[idx] += 1
        idx = idx[u[idx] >= seat_cdf(dist, m[idx], k[idx])]
    # too large: cdf(k - 1) > u
    idx = np.flatnonzero(k > 1)
    idx = idx[u[idx] < seat_cdf(dist, m[idx], k[idx] - 1)]
    while idx.size:
        k[idx] -= 1
        idx = idx[k[idx] > 1]
        idx = idx[u[idx] < seat_cdf(dist, m[idx], k[idx] - 1)]
    return k.reshape(shape)


def sample_seat(dist: SeatDistribution, n: int, rng: np.random.Generator) -> int:
    """Draw one seat index in ``1..n`` by inverse-CDF sampling."""
    if n < 1:
        raise ValueError("a row needs at least one seat")
    return int(inverse_cdf(dist, n, rng.random()))
