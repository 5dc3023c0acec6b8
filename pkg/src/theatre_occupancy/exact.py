"""Expected occupancy by dynamic programming over the seating recurrences.

Every engine returns an :class:`ExpectationTable` whose ``values[k]`` is the
expected number of occupied seats in a ``k``-seat instance, for ``k = 0..n``
(``values[0] == 0`` is the empty row).  A seated courteous theatregoer leaves
an instance one seat smaller; a selfish one sitting at seat ``k`` leaves only
seats ``1..k-1`` reachable from the entrance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    Entrances,
    RowSpec,
    SeatDistribution,
    check_probability,
    harmonic_table,
)

ZIPF_RIGHT_MAX_SEATS = 10_000
NEAR_ONE = 1e-8


class UnsupportedRowError(ValueError):
    """Raised for (distribution, entrances) pairs without an exact recurrence."""


@dataclass(frozen=True, eq=False)
class ExpectationTable:
    spec: RowSpec
    values: np.ndarray

    def __post_init__(self):
        self.values.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.values) - 1

    @property
    def deltas(self) -> np.ndarray:
        """``deltas[k] = values[k] - values[k-1]`` for ``k >= 1``; ``deltas[0] = 0``."""
        return np.diff(self.values, prepend=0.0)

    def __getitem__(self, k):
        return self.values[k]

    def __len__(self):
        return len(self.values)

    @property
    def value(self) -> float:
        return float(self.values[-1])


def _check_n(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"seat count must be a positive integer, got {n!r}")
    return int(n)


def _table(n, entrances, dist, p, values) -> ExpectationTable:
    return ExpectationTable(RowSpec(n, entrances, dist, p), values)


def _one_entrance_uniform(n: int, p: float) -> np.ndarray:
    E = np.zeros(n + 1)
    prefix = 0.0  # E_0 + ... + E_{k-1}
    for k in range(1, n + 1):
        E[k] = 1.0 + p * E[k - 1] + (1.0 - p) * prefix / k
        prefix += E[k]
    return E


def uniform_one_selfish(n: int) -> ExpectationTable:
    """Selfish theatregoers, one entrance; equals the harmonic numbers."""
    n = _check_n(n)
    return _table(n, Entrances.ONE, SeatDistribution.UNIFORM, 0.0, _one_entrance_uniform(n, 0.0))


def uniform_one_courteous(n: int, p: float) -> ExpectationTable:
    n = _check_n(n)
    p = check_probability(p)
    if p == 1.0:
        values = np.arange(n + 1, dtype=float)
    else:
        values = _one_entrance_uniform(n, p)
    return _table(n, Entrances.ONE, SeatDistribution.UNIFORM, p, values)


def _two_entrance_uniform(n: int, p: float) -> np.ndarray:
    E = _one_entrance_uniform(n, p)
    F = np.zeros(n + 1)
    prefix = 0.0
    for k in range(1, n + 1):
        # sum_j (E_{k-j} + E_{j-1}) over j = 1..k is twice the prefix sum
        F[k] = 1.0 + p * F[k - 1] + 2.0 * (1.0 - p) * prefix / k
        prefix += E[k]
    return F


def uniform_two_selfish(n: int) -> ExpectationTable:
    n = _check_n(n)
    return _table(n, Entrances.TWO, SeatDistribution.UNIFORM, 0.0, _two_entrance_uniform(n, 0.0))


def uniform_two_courteous(n: int, p: float) -> ExpectationTable:
    n = _check_n(n)
    p = check_probability(p)
    if p == 1.0:
        values = np.arange(n + 1, dtype=float)
    else:
        values = _two_entrance_uniform(n, p)
    return _table(n, Entrances.TWO, SeatDistribution.UNIFORM, p, values)


def _partial_geometric_sum(k: int, p: float) -> float:
    """``(1 - p**k) / (1 - p)``, i.e. ``1 + p + ... + p**(k-1)``."""
    q = 1.0 - p
    if abs(q) < NEAR_ONE:
        return k * (1.0 - (k - 1) * q / 2.0)
    if p == 0.0:
        return 1.0
    return -math.expm1(k * math.log(p)) / q


def closed_uniform_one(n: int, p: float) -> float:
    """``sum_{k=1}^n (1 - p^k) / (k (1 - p))``."""
    n = _check_n(n)
    p = check_probability(p)
    return math.fsum(_partial_geometric_sum(k, p) / k for k in range(1, n + 1))


def closed_uniform_two(n: int, p: float) -> float:
    n = _check_n(n)
    p = check_probability(p)
    return 2.0 * closed_uniform_one(n, p) - _partial_geometric_sum(n, p)


def geometric_left(n: int, p: float) -> ExpectationTable:
    """Geometric seat choice biased towards the entrance."""
    n = _check_n(n)
    p = check_probability(p)
    q = 1.0 - p
    L = np.zeros(n + 1)
    acc = 0.0  # sum_{j=1}^{k-1} 2^-j L_{j-1}
    for k in range(1, n + 1):
        L[k] = 1.0 + p * L[k - 1] + q * acc + q * math.ldexp(L[k - 1], -(k - 1))
        acc += math.ldexp(L[k - 1], -k)
    return _table(n, Entrances.ONE, SeatDistribution.GEOMETRIC_LEFT, p, L)


def closed_geometric_left(n: int, p: float) -> float:
    """``sum_{l=1}^n prod_{k=1}^{l-1} (p + (1 - p) / 2^k)``."""
    n = _check_n(n)
    p = check_probability(p)
    terms = []
    prod = 1.0
    for l in range(1, n + 1):
        terms.append(prod)
        prod *= p + math.ldexp(1.0 - p, -l)
    return math.fsum(terms)


def geometric_right(n: int, p: float) -> ExpectationTable:
    """Geometric seat choice biased away from the entrance.

    Seat ``j >= 2`` of a ``k``-seat instance is chosen with probability
    ``2^(j-k-1)`` and seat 1 with ``2^-(k-1)``.
    """
    n = _check_n(n)
    p = check_probability(p)
    q = 1.0 - p
    R = np.zeros(n + 1)
    acc = 0.0  # sum_{j=2}^{k} 2^(j-k-1) R_{j-1}
    for k in range(1, n + 1):
        if k >= 2:
            acc = 0.5 * (acc + R[k - 1])
        R[k] = 1.0 + p * R[k - 1] + q * acc
    return _table(n, Entrances.ONE, SeatDistribution.GEOMETRIC_RIGHT, p, R)


def zipf_left_courteous(n: int, p: float) -> ExpectationTable:
    n = _check_n(n)
    p = check_probability(p)
    H = harmonic_table(n)
    L = np.zeros(n + 1)
    acc = 0.0  # sum_{j=1}^{k} L_{j-1} / j
    for k in range(1, n + 1):
        acc += L[k - 1] / k
        L[k] = 1.0 + p * L[k - 1] + (1.0 - p) * acc / H[k]
    return _table(n, Entrances.ONE, SeatDistribution.ZIPF_LEFT, p, L)


def zipf_left_selfish(n: int) -> ExpectationTable:
    return zipf_left_courteous(n, 0.0)


def zipf_left_closed(n: int) -> float:
    """``1 + sum_{k=2}^n 1 / (k H_k)``."""
    n = _check_n(n)
    H = harmonic_table(n)
    k = np.arange(2, n + 1)
    return 1.0 + math.fsum(1.0 / (k * H[k]))


def zipf_right_courteous(n: int, p: float, max_seats: int = ZIPF_RIGHT_MAX_SEATS) -> ExpectationTable:
    """Zipf seat choice biased away from the entrance; O(n^2)."""
    n = _check_n(n)
    p = check_probability(p)
    if n > max_seats:
        raise ValueError(f"zipf-right tables are quadratic; n={n} exceeds the cap of {max_seats}")
    if p == 1.0:
        return _table(n, Entrances.ONE, SeatDistribution.ZIPF_RIGHT, p, np.arange(n + 1, dtype=float))
    H = harmonic_table(n)
    recip = np.zeros(n + 1)
    recip[1:] = 1.0 / np.arange(1, n + 1)
    R = np.zeros(n + 1)
    for k in range(1, n + 1):
        # sum_{j=1}^{k-1} R_j / (k - j)
        conv = float(np.dot(R[1:k], recip[k - 1 : 0 : -1])) if k > 1 else 0.0
        R[k] = 1.0 + p * R[k - 1] + (1.0 - p) * conv / H[k]
    return _table(n, Entrances.ONE, SeatDistribution.ZIPF_RIGHT, p, R)


def zipf_right_selfish(n: int, max_seats: int = ZIPF_RIGHT_MAX_SEATS) -> ExpectationTable:
    return zipf_right_courteous(n, 0.0, max_seats=max_seats)


_ONE_ENTRANCE = {
    SeatDistribution.UNIFORM: uniform_one_courteous,
    SeatDistribution.GEOMETRIC_LEFT: geometric_left,
    SeatDistribution.GEOMETRIC_RIGHT: geometric_right,
    SeatDistribution.ZIPF_LEFT: zipf_left_courteous,
    SeatDistribution.ZIPF_RIGHT: zipf_right_courteous,
}


def exact_table(spec: RowSpec) -> ExpectationTable:
    """Dispatch a row description to the matching engine."""
    if spec.entrances is Entrances.TWO:
        if spec.distribution is not SeatDistribution.UNIFORM:
            raise UnsupportedRowError(
                f"no exact recurrence for {spec.distribution.value} seat choice with two entrances; "
                "only uniform choice has one. Use the simulator instead."
            )
        return uniform_two_courteous(spec.seats, spec.courtesy)
    return _ONE_ENTRANCE[spec.distribution](spec.seats, spec.courtesy)


def expected_occupancy(spec: RowSpec) -> float:
    return exact_table(spec).value
