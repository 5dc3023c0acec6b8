import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from theatre_occupancy import PolynomialInP, eval_polynomial, zipf_right_polynomial
from theatre_occupancy.core import harmonic_table
from theatre_occupancy.exact import zipf_right_courteous
from theatre_occupancy.poly import MAX_POLY_SEATS, PolynomialTooLarge, zipf_right_polynomials

GRID = np.linspace(0, 1, 21)


def test_small_polynomials():
    polys = zipf_right_polynomials(3)
    assert polys[1].tolist() == [1.0]
    # R_2 = 1 + p + (1 - p) / H_2
    np.testing.assert_allclose(polys[2], [1 + 2 / 3, 1 - 2 / 3])
    assert all(len(polys[k]) == k for k in range(1, 4))


@pytest.mark.parametrize("n", [1, 2, 5, 13, 40, 60])
def test_polynomial_matches_recurrence(n):
    poly = zipf_right_polynomial(n)
    assert poly.degree == n - 1
    direct = [zipf_right_courteous(n, p).value for p in GRID]
    np.testing.assert_allclose(poly(GRID), direct, rtol=1e-10)


def test_every_size_up_to_sixty():
    polys = zipf_right_polynomials(60)
    for n in range(1, 61):
        direct = [zipf_right_courteous(n, p).value for p in GRID]
        np.testing.assert_allclose(eval_polynomial(PolynomialInP(polys[n]), GRID), direct, rtol=1e-10)


def test_value_at_one_is_seat_count():
    for n in (1, 10, 40, 120):
        assert zipf_right_polynomial(n)(1.0) == pytest.approx(n, rel=1e-12)


def test_coefficients_positive_and_decreasing():
    c = zipf_right_polynomial(40).coefficients
    assert (c > 0).all()
    assert (np.diff(c) < 0).all()


def test_leading_coefficient_product():
    H = harmonic_table(40)
    lead = np.prod(1 - 1 / H[2:41])
    assert zipf_right_polynomial(40).coefficients[-1] == pytest.approx(lead, rel=1e-12)


def test_r40_coefficients():
    c = zipf_right_polynomial(40).coefficients
    np.testing.assert_allclose(c[:3], [7.88239735, 5.71170053, 4.51247535], atol=1e-8)
    assert abs(c[39] - 3.709627103392018e-7) <= 1e-12
    assert zipf_right_polynomial(40)(0.99) == pytest.approx(38.268, abs=1e-3)


@settings(max_examples=30, deadline=None)
@given(p=st.floats(0, 1), n=st.integers(1, 50))
def test_scalar_eval(p, n):
    poly = zipf_right_polynomial(n)
    value = poly(p)
    assert isinstance(value, float)
    assert value == pytest.approx(np.polyval(poly.coefficients[::-1], p), rel=1e-12)


def test_cap_and_validation():
    with pytest.raises(PolynomialTooLarge):
        zipf_right_polynomial(MAX_POLY_SEATS + 1)
    with pytest.raises(ValueError):
        zipf_right_polynomial(0)
    assert zipf_right_polynomial(40).to_list()[0] == pytest.approx(7.88239735, abs=1e-8)
