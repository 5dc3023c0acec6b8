import math

import numpy as np
import pytest

from theatre_occupancy import RowSpec, UnsupportedRowError
from theatre_occupancy.bounds import (
    asymptotic_estimate,
    check_g_interpolation,
    courteous_sandwich_bounds,
    harmonic_difference_report,
    harmonic_difference_sum,
    r40_numeric_bounds,
    r40_sandwich,
    t_p_partial,
    t_p_sandwich,
    zipf_right_courteous_sandwich,
    zipf_right_sandwich,
)
from theatre_occupancy.core import harmonic_table
from theatre_occupancy.exact import closed_geometric_left, uniform_one_courteous, uniform_two_courteous

P_GRID = np.round(np.arange(0, 0.951, 0.05), 12)


def test_harmonic_difference_sum_values():
    assert harmonic_difference_sum(2) == pytest.approx(0.5, abs=1e-15)
    assert harmonic_difference_sum(40) == pytest.approx(1.51328, abs=1e-5)
    assert harmonic_difference_sum(2000) == pytest.approx(1.64035, abs=1e-5)
    with pytest.raises(ValueError):
        harmonic_difference_sum(1)


def test_harmonic_difference_sum_brute_force():
    for n in (2, 3, 17, 100):
        H = harmonic_table(n)
        brute = sum((H[n] - H[k]) / (n - k) for k in range(1, n))
        assert harmonic_difference_sum(n) == pytest.approx(brute, rel=1e-13)


def test_harmonic_difference_sum_increases_towards_limit():
    values = [harmonic_difference_sum(n) for n in (10, 100, 1000, 10_000)]
    assert values == sorted(values)
    assert values[-1] < math.pi**2 / 6


def test_harmonic_difference_report():
    report = harmonic_difference_report(range(40, 301))
    assert report.passed and report.max_violation == 0.0
    assert report.to_dict()["notes"]["limit"] == pytest.approx(1.6449340668)


def test_t_p_selfish_value():
    assert t_p_partial(0.0) == pytest.approx(1.6416325606551538, abs=1e-14)
    with pytest.raises(ValueError):
        t_p_partial(1.0)


@pytest.mark.parametrize("p", [0.0, 0.3, 0.7, 0.95])
def test_t_p_is_limit_of_finite_rows(p):
    assert closed_geometric_left(3000, p) == pytest.approx(t_p_partial(p), rel=1e-9)


def test_interpolation_band():
    report = check_g_interpolation(P_GRID)
    assert report.passed
    assert report.values[0] == pytest.approx(0.03297, abs=1e-5)
    assert np.abs(report.values).max() <= 0.035


def test_t_p_sandwich():
    assert t_p_sandwich(P_GRID).passed


def test_zipf_right_sandwich():
    report = zipf_right_sandwich(2000)
    assert report.passed
    ratio = np.array(report.notes["ratio"])
    assert ratio.min() == pytest.approx(0.3646, abs=1e-4)
    assert ratio.max() == pytest.approx(0.4306, abs=1e-4)
    with pytest.raises(ValueError):
        zipf_right_sandwich(39)


def test_courteous_sandwich():
    grid = np.round(np.arange(0, 0.991, 0.01), 12)
    assert zipf_right_courteous_sandwich(40, grid).passed
    lo, hi = courteous_sandwich_bounds(40, 0.0)
    assert float(lo) == pytest.approx(4 * (100 / 383) / 9 * harmonic_table(40)[40] ** 2)
    assert float(lo) == pytest.approx(2.1243, abs=1e-4)


def test_r40_sandwich():
    grid = np.round(np.arange(0, 0.991, 0.01), 12)
    report = r40_sandwich(grid)
    assert report.passed
    lo, hi = r40_numeric_bounds(0.5)
    assert float(lo) == pytest.approx(2.13 / (1 - 0.4725))
    assert float(hi) == 26.0


def test_report_flags_violations():
    report = r40_sandwich([0.5])
    report.upper[:] = 1.0
    assert not report.passed
    assert report.max_violation > 0
    assert report.to_dict()["verdicts"] == ["fail"]


def test_asymptotic_estimates_track_exact_values():
    n = 10_000
    for p in (0.1, 0.5, 0.9):
        E = uniform_one_courteous(n, p).value
        F = uniform_two_courteous(n, p).value
        assert asymptotic_estimate(RowSpec(n, 1, "uniform", p)) == pytest.approx(E, rel=1e-3)
        assert asymptotic_estimate(RowSpec(n, 2, "uniform", p)) == pytest.approx(F, rel=2e-3)
    assert asymptotic_estimate(RowSpec(50, 1, "geo-left", 0.3)) == pytest.approx(t_p_partial(0.3))
    with pytest.raises(UnsupportedRowError):
        asymptotic_estimate(RowSpec(50, 1, "zipf-right", 0.3))
    with pytest.raises(ValueError):
        asymptotic_estimate(RowSpec(50, 1, "uniform", 1.0))


def test_courteous_sandwich_larger_row():
    grid = np.round(np.arange(0, 0.991, 0.01), 12)
    assert zipf_right_courteous_sandwich(100, grid).passed
    assert zipf_right_sandwich(100).passed
