import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from qrv.errors import NonUnitLeading, ZeroSeries
from qrv.series import (
    INF,
    BivariateSeries,
    LaurentSeries,
    _mul_schoolbook,
    bv_eval_x1,
    bv_mul_poly,
    bv_substitute,
    div_binomial_inplace,
    ls_inv,
    ls_shift,
    ls_sum,
    mul_binomial_inplace,
    mul_truncated,
)

from strategies import agree, series, small_ints, unit_series


# -- unit tests ------------------------------------------------------------


def test_normalisation_strips_zeros():
    s = LaurentSeries(-2, [0, 0, 3, 0, 0], 10)
    assert s.offset == 0 and s.coeffs == (3,)


def test_coefficient_beyond_precision_raises():
    s = LaurentSeries(0, [1, 2], 2)
    assert s.coefficient(1) == 2
    with pytest.raises(ValueError):
        s.coefficient(2)


def test_precision_propagates_as_minimum():
    a = LaurentSeries(0, [1, 1], 5)
    b = LaurentSeries(0, [1], 9)
    assert (a + b).prec == 5
    # multiplying by q^3 raises the trusted range by 3
    assert (a * LaurentSeries.monomial(3)).prec == 8


def test_inverse_of_one_minus_q():
    inv = ls_inv(LaurentSeries(0, [1, -1]), 6)
    assert inv == LaurentSeries(0, [1] * 6, 6)


def test_inverse_negative_valuation():
    a = LaurentSeries(-2, [1, 1], 8)
    inv = ls_inv(a)
    assert inv.offset == 2
    assert agree(a * inv, LaurentSeries.one())


def test_inverse_errors():
    with pytest.raises(NonUnitLeading):
        ls_inv(LaurentSeries(0, [2, 1], 5))
    with pytest.raises(ZeroSeries):
        ls_inv(LaurentSeries.zero(5))


def test_binomial_inplace_roundtrip():
    c = [1, 2, 3, 4, 5, 6, 7, 8]
    d = list(c)
    mul_binomial_inplace(d, 3, -1)
    div_binomial_inplace(d, 3, -1)
    assert d == c


def test_kronecker_matches_schoolbook():
    a = [(-1) ** i * (i * 7919) % 1000003 - 500000 for i in range(60)]
    b = [(i * i * 31) % 997 - 400 for i in range(50)]
    assert mul_truncated(a, b, 90) == _mul_schoolbook(a, b, 90)


def test_shift_and_sum():
    a = LaurentSeries(0, [1, 1], 10)
    assert ls_shift(a, -3) == LaurentSeries(-3, [1, 1], 7)
    assert ls_sum([a, a, LaurentSeries(0, [0, 0, 5], 4)], 20) == LaurentSeries(0, [2, 2, 5], 4)


def test_bivariate_substitute_and_eval():
    f = BivariateSeries.from_terms({(0, 0): 1, (1, 1): 1, (2, 4): 1}, xcap=2)
    g = bv_substitute(f, 2)
    assert g.component(1) == LaurentSeries.monomial(3)
    assert g.component(2) == LaurentSeries.monomial(8)
    prod = bv_mul_poly(f, BivariateSeries.from_terms({(1, 0): 1}))
    assert prod.component(0).is_zero()
    assert prod.component(2) == LaurentSeries.monomial(1)
    assert bv_eval_x1(f.truncate(qprec=3)) == LaurentSeries(0, [1, 1], 3)


def test_bivariate_rejects_short_component():
    with pytest.raises(ValueError):
        BivariateSeries({0: LaurentSeries(0, [1], 3)}, 4, 5)


# -- property suites ---------------------------------------------------------

RING_SETTINGS = settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@RING_SETTINGS
@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert agree((a * b) * c, a * (b * c))
    assert agree(a * b, b * a)
    assert agree(a * (b + c), a * b + a * c)
    assert a + LaurentSeries.zero() == a
    assert agree(a * LaurentSeries.one(), a)
    assert (a - a).is_zero()


@RING_SETTINGS
@given(unit_series())
def test_inversion_roundtrip(a):
    inv = ls_inv(a)
    prod = a * inv
    assert agree(prod, LaurentSeries.one())
    assert agree(ls_inv(inv), a)


@settings(max_examples=200, deadline=None)
@given(series(max_len=70, big=True), series(max_len=70, big=True))
def test_large_products_agree_with_schoolbook(a, b):
    if not a.coeffs or not b.coeffs:
        return
    n = len(a.coeffs) + len(b.coeffs) - 1
    assert mul_truncated(a.coeffs, b.coeffs, n) == _mul_schoolbook(a.coeffs, b.coeffs, n)


@settings(max_examples=200, deadline=None)
@given(series(), st.integers(-5, 20))
def test_truncation_commutes_with_arithmetic(a, p):
    b = LaurentSeries(0, [1, -2, 3], INF)
    assert agree((a * b).truncate(p), (a.truncate(p) * b).truncate(p))
    assert (a + b).truncate(p) == a.truncate(p) + b.truncate(p)
