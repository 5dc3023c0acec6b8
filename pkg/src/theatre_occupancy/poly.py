"""Zipf-right occupancy as an explicit polynomial in the courtesy probability."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import harmonic_table

MAX_POLY_SEATS = 200


class PolynomialTooLarge(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class PolynomialInP:
    """Dense coefficients, ``coefficients[i]`` multiplies ``p**i``."""

    coefficients: np.ndarray

    def __post_init__(self):
        self.coefficients.setflags(write=False)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, p):
        return eval_polynomial(self, p)

    def to_list(self) -> list[float]:
        return [float(c) for c in self.coefficients]


def eval_polynomial(poly: PolynomialInP, p):
    """Horner evaluation; vectorised over ``p``."""
    p = np.asarray(p, dtype=float)
    acc = np.zeros_like(p)
    for c in poly.coefficients[::-1]:
        acc = acc * p + c
    return float(acc) if acc.ndim == 0 else acc


def zipf_right_polynomials(n: int) -> list[np.ndarray]:
    """Coefficient arrays of ``R_0(p), ..., R_n(p)``; ``R_k`` has degree ``k - 1``."""
    if n > MAX_POLY_SEATS:
        raise PolynomialTooLarge(f"polynomial tables are capped at n={MAX_POLY_SEATS}, got {n}")
    if n < 1:
        raise ValueError("n must be at least 1")
    H = harmonic_table(n)
    polys = [np.zeros(0), np.array([1.0])]
    for k in range(2, n + 1):
        conv = np.zeros(k - 1)
        for j in range(1, k):
            conv[:j] += polys[j] / (k - j)
        conv /= H[k]
        c = np.zeros(k)
        c[0] = 1.0
        c[1:] += polys[k - 1]  # p * R_{k-1}
        c[: k - 1] += conv     # (1 - p) * conv
        c[1:] -= conv
        polys.append(c)
    return polys


def zipf_right_polynomial(n: int) -> PolynomialInP:
    return PolynomialInP(zipf_right_polynomials(n)[n])
