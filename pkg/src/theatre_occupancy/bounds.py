"""Numerical checks of bounds, constants and interpolations."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import Entrances, RowSpec, SeatDistribution, harmonic_table
from .exact import UnsupportedRowError, zipf_right_courteous, zipf_right_selfish
from .poly import zipf_right_polynomial

ZIPF_RIGHT_LOWER = 100 / 383
ZIPF_RIGHT_UPPER = 5 / 7
HARMONIC_SUM_RANGE = (1.408, 1.86)
INTERP_INTERCEPT = 1.6746
INTERP_SLOPE = -0.6425
INTERP_BAND = 0.035
T0_LIMIT = 1.64163
R40_LOWER_NUMERATOR = 2.13
R40_LOWER_DECAY = 0.945
R40_UPPER_NUMERATOR = 13.0
TP_MAX_TERMS = 100_000
TP_TINY = 1e-16


@dataclass
class BoundReport:
    """``lower <= values <= upper`` checked pointwise over ``grid``."""

    quantity: str
    grid_name: str
    grid: np.ndarray
    values: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        n = len(self.grid)
        self.values = np.broadcast_to(np.asarray(self.values, dtype=float), (n,)).copy()
        self.lower = np.broadcast_to(np.asarray(self.lower, dtype=float), (n,)).copy()
        self.upper = np.broadcast_to(np.asarray(self.upper, dtype=float), (n,)).copy()

    @property
    def verdicts(self) -> np.ndarray:
        return (self.lower <= self.values) & (self.values <= self.upper)

    @property
    def passed(self) -> bool:
        return bool(self.verdicts.all())

    @property
    def max_violation(self) -> float:
        if not len(self.grid):
            return 0.0
        excess = np.maximum(self.lower - self.values, self.values - self.upper)
        return float(max(excess.max(), 0.0))

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "grid_name": self.grid_name,
            "grid": self.grid.tolist(),
            "values": self.values.tolist(),
            "lower": self.lower.tolist(),
            "upper": self.upper.tolist(),
            "verdicts": ["pass" if v else "fail" for v in self.verdicts],
            "passed": self.passed,
            "max_violation": self.max_violation,
            "notes": self.notes,
        }


def harmonic_difference_sum(n: int) -> float:
    """``sum_{k=1}^{n-1} (H_n - H_k) / (n - k)``; tends to pi^2/6."""
    if n < 2:
        raise ValueError("the sum needs n >= 2")
    H = harmonic_table(n)
    k = np.arange(1, n)
    return math.fsum((H[n] - H[k]) / (n - k))


def harmonic_difference_report(n_values) -> BoundReport:
    n_values = np.asarray(list(n_values), dtype=int)
    values = [harmonic_difference_sum(int(n)) for n in n_values]
    lo, hi = HARMONIC_SUM_RANGE
    return BoundReport("harmonic-difference sum", "n", n_values, values, lo, hi,
                       {"limit": math.pi**2 / 6})


def t_p_partial(p: float, terms: int = TP_MAX_TERMS) -> float:
    """Partial sum of ``sum_l prod_{k<l} (p + (1-p)/2^k)``, the n -> infinity
    occupancy under left-biased geometric choice.

    Stops early once the running product drops below 1e-16.
    """
    if not 0.0 <= p < 1.0:
        raise ValueError("the series diverges for p = 1 (occupancy is unbounded)")
    if terms < 1:
        raise ValueError("terms must be >= 1")
    total = 0.0
    prod = 1.0
    for l in range(1, terms + 1):
        total += prod
        prod *= p + math.ldexp(1.0 - p, -l)
        if prod < TP_TINY:
            break
    return total


def g_interpolant(p):
    return INTERP_INTERCEPT + INTERP_SLOPE * np.asarray(p, dtype=float)


def check_g_interpolation(p_grid) -> BoundReport:
    """``g(p) - (1-p) T_p`` against the band ``+-0.035``."""
    p_grid = np.asarray(list(p_grid), dtype=float)
    scaled = np.array([(1.0 - p) * t_p_partial(p) for p in p_grid])
    return BoundReport("g(p) - (1-p)T_p", "p", p_grid, g_interpolant(p_grid) - scaled,
                       -INTERP_BAND, INTERP_BAND)


def t_p_sandwich(p_grid) -> BoundReport:
    """``(1.6396 - 0.6425p)/(1-p) <= T_p <= (1.7096 - 0.6425p)/(1-p)``."""
    p_grid = np.asarray(list(p_grid), dtype=float)
    t = np.array([t_p_partial(p) for p in p_grid])
    base = g_interpolant(p_grid)
    return BoundReport("T_p", "p", p_grid, t,
                       (base - INTERP_BAND) / (1.0 - p_grid),
                       (base + INTERP_BAND) / (1.0 - p_grid))


def zipf_right_sandwich(n_max: int) -> BoundReport:
    """``(100/383) H_n^2 <= R_n <= (5/7) H_n^2`` for ``40 <= n <= n_max``."""
    if n_max < 40:
        raise ValueError("the sandwich only holds from n = 40 on")
    R = zipf_right_selfish(n_max).values
    H = harmonic_table(n_max)
    n = np.arange(40, n_max + 1)
    h2 = H[n] ** 2
    return BoundReport("zipf-right selfish R_n", "n", n, R[n],
                       ZIPF_RIGHT_LOWER * h2, ZIPF_RIGHT_UPPER * h2,
                       {"ratio": (R[n] / h2).tolist()})


def courteous_sandwich_bounds(n: int, p, c1: float = ZIPF_RIGHT_LOWER, c2: float = ZIPF_RIGHT_UPPER):
    """Lower/upper bound functions transferred from the selfish sandwich."""
    p = np.asarray(p, dtype=float)
    h2 = harmonic_table(n)[n] ** 2
    lower = (4.0 * c1 / 9.0) / (1.0 - (1.0 - 0.214 * c1) * p) * h2
    upper = c2 / (1.0 - p) * h2
    return lower, upper


def r40_numeric_bounds(p):
    """Numeric bounds ``2.13 / (1 - 0.945p)`` and ``13 / (1 - p)`` for n = 40."""
    p = np.asarray(p, dtype=float)
    return (R40_LOWER_NUMERATOR / (1.0 - R40_LOWER_DECAY * p),
            R40_UPPER_NUMERATOR / (1.0 - p))


def zipf_right_courteous_sandwich(n: int, p_grid) -> BoundReport:
    if n < 40:
        raise ValueError("the sandwich only holds from n = 40 on")
    p_grid = np.asarray(list(p_grid), dtype=float)
    if ((p_grid < 0) | (p_grid >= 1)).any():
        raise ValueError("p grid must lie in [0, 1)")
    values = np.array([zipf_right_courteous(n, p).value for p in p_grid])
    lower, upper = courteous_sandwich_bounds(n, p_grid)
    return BoundReport(f"zipf-right courteous R_{n}(p)", "p", p_grid, values, lower, upper)


def r40_sandwich(p_grid) -> BoundReport:
    """The polynomial ``R_40(p)`` against its numeric bounds."""
    p_grid = np.asarray(list(p_grid), dtype=float)
    lower, upper = r40_numeric_bounds(p_grid)
    values = zipf_right_polynomial(40)(p_grid) if len(p_grid) else np.zeros(0)
    return BoundReport("R_40(p)", "p", p_grid, values, lower, upper)


def asymptotic_estimate(spec: RowSpec) -> float:
    """Leading-order formula for the families that have one."""
    n, p = spec.seats, spec.courtesy
    if p >= 1.0:
        raise ValueError("asymptotic forms need p < 1")
    H = harmonic_table(n)[n]
    dist, two = spec.distribution, spec.entrances is Entrances.TWO
    if dist is SeatDistribution.UNIFORM:
        one = (H + math.log1p(-p)) / (1.0 - p)
        if not two:
            return one
        if p == 0.0:
            return 2.0 * math.log(n)
        return -1.0 / (1.0 - p) + 2.0 * one
    if not two and dist is SeatDistribution.GEOMETRIC_LEFT:
        return t_p_partial(p)
    if not two and dist is SeatDistribution.ZIPF_LEFT and p == 0.0:
        return math.log(math.log(n)) if n > 1 else 1.0
    raise UnsupportedRowError(
        f"no asymptotic formula for {dist.value} with {spec.entrances.value} entrance(s) at p={p}"
    )
