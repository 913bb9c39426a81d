import pytest

from qrv.errors import BadParameter
from qrv.krseries import (
    A_TABLE,
    H_STRUCTURE,
    J5,
    J8,
    J10_FAMILY,
    J11_FAMILY,
    H,
    H_at_1,
    HCDParams,
    HSeriesParams,
    J_at_1,
    J_series,
    h_cd,
    h_cd_table,
    j12,
    j_coeff,
    j_exponent,
    prop1_closed_product,
    prop1_rhs,
    prop2_rhs,
    sec5_triple,
    sec5_via_j,
    sec6_sum,
    thm2_rhs,
)
from qrv.qfactor import INFINITE, QProduct
from qrv.series import LaurentSeries, bv_eval_x1, bv_substitute, ls_shift


def brute_H(ell, qprec):
    """H_ell(1) summed term by term over (i, j, k), for cross-checking the dense builder."""
    ai, aj, ak = A_TABLE[ell]
    acc = LaurentSeries.zero(qprec)
    for N in range(0, 40):
        for k in range(N // 3 + 1):
            for j in range((N - 3 * k) // 2 + 1):
                i = N - 2 * j - 3 * k
                e = N * (N - 1) + 3 * k * k + ai * i + aj * j + ak * k
                den = QProduct.poch(1, 1, i) * QProduct.poch(4, 4, j) * QProduct.poch(6, 6, k)
                sign = -1 if k % 2 else 1
                if e >= qprec:
                    continue
                acc = acc + (QProduct.monomial(e, sign) / den).series(qprec)
    return acc


def test_h1_first_terms():
    assert H_at_1(1, 7) == LaurentSeries(0, [1, 1, 1, 1, 2, 2, 3], 7)


def test_h6_at_prec_2():
    assert H_at_1(6, 2) == LaurentSeries(0, [1, 1], 2)


def test_x_degree_zero_is_one():
    for ell in range(1, 12):
        f = H(HSeriesParams.catalog(ell), 0, 30)
        assert f.component(0) == LaurentSeries.one(30)


@pytest.mark.parametrize("ell", [1, 3, 5, 9])
def test_dense_builder_matches_termwise_sum(ell):
    assert H_at_1(ell, 30) == brute_H(ell, 30)


def test_params_validation():
    with pytest.raises(BadParameter):
        HSeriesParams.catalog(12)
    with pytest.raises(BadParameter):
        HSeriesParams.raw_form(13, 0, 0)
    with pytest.raises(BadParameter):
        HSeriesParams()


def test_h_cd_boundary_values():
    assert h_cd(HCDParams(5, 1, -3), 10).is_zero()
    assert h_cd(HCDParams(5, 1, 0), 10) == LaurentSeries.one(10)
    assert h_cd(HCDParams(5, 1, 1), 5) == LaurentSeries(0, [1] * 5, 5)


@pytest.mark.parametrize("ell", range(1, 10))
def test_structure_identity(ell):
    two_c, d, m = H_STRUCTURE[ell]
    P, n = 60, 7
    f = H(HSeriesParams.catalog(ell), n, P)
    h = h_cd_table(two_c, d, n, P)
    for N in range(n + 1):
        assert f.component(N) == ls_shift(h[N], N * N + m * N).truncate(P)


def test_h8_equals_h9_coefficients():
    assert H_STRUCTURE[8][:2] == H_STRUCTURE[9][:2]
    # and H8(x q^2) = H9(x) as series
    f8 = bv_substitute(H(HSeriesParams.catalog(8), 8, 60), 2)
    f9 = H(HSeriesParams.catalog(9), 8, 60)
    assert f8 == f9


def test_j5_components():
    f = J5(1, 4)
    h5 = H(HSeriesParams.catalog(5), 1, 4)
    assert f.component(0) == LaurentSeries.one(4)
    assert f.component(1) == (h5.component(1) - LaurentSeries.monomial(3)).truncate(4)


def test_j8_h8_relation():
    P = 60
    lhs = H_at_1(8, P)
    rhs = bv_eval_x1(J8(None, P)) + ls_shift(H_at_1(9, P), 1)
    assert lhs == rhs.truncate(P)


def test_j_families_constant_term():
    for fam in (J10_FAMILY, J11_FAMILY, j12(0), j12(2), j12(3)):
        assert J_series(fam, 0, 20).component(0) == LaurentSeries.one(20)


def test_j12_bad_a():
    with pytest.raises(BadParameter):
        j12(1)


def test_j_coeff_small_values():
    assert j_coeff(10, 0, 10) == LaurentSeries.one(10)
    assert j_coeff(11, 0, 10) == LaurentSeries.one(10)
    assert j_coeff((12, 0), -1, 10).is_zero()
    assert j_coeff(10, -2, 10).is_zero()
    expected = (
        QProduct.poch(1, 1, 2, -1, power=-1) * QProduct.poch(2, 2, 1, power=-1)
    ).series(4) + (QProduct.monomial(3) * QProduct.poch(1, 1, 3, -1, power=-1) * QProduct.poch(3, 3, 1, power=-1)).series(4)
    assert j_coeff(10, 1, 4) == expected


@pytest.mark.parametrize("fam,key", [(J10_FAMILY, 10), (J11_FAMILY, 11), (j12(0), (12, 0)), (j12(2), (12, 2))])
def test_j_structure(fam, key):
    P = 80
    f = J_series(fam, 12, P)
    for M in range(7):
        assert f.component(2 * M) == ls_shift(j_coeff(key, M, P), j_exponent(key, M)).truncate(P)


def test_thm2_low_order():
    assert thm2_rhs("H4", 3) == H_at_1(4, 3)
    with pytest.raises(BadParameter):
        thm2_rhs("H6", 3)


def test_thm2_h5_reaches_negative_exponent():
    s = thm2_rhs("H5", 10)
    assert s.valuation() >= -1
    assert s == H_at_1(5, 10)


def test_prop1_a0_closed_products():
    for b in (1, 3):
        assert prop1_rhs(0, b, 60) == prop1_closed_product(b, 60)


def test_prop2_zero_weights():
    f = prop2_rhs(-2, 4, 6, 0, 0, 40, 6)
    assert all(f.component(n).is_zero() for n in range(7))


def test_prop2_bad_a():
    with pytest.raises(BadParameter):
        prop2_rhs(-6, 4, 6, 1, 0, 20, 4)


def test_sec5_routes_agree():
    assert sec5_triple(30) == sec5_via_j(30)


def test_sec6_times_product():
    P = 20
    s = bv_eval_x1(sec6_sum(None, P + 2))
    prod = (QProduct.poch(3, 4, INFINITE) * QProduct.poch(4, 12, INFINITE) * QProduct.poch(5, 12, INFINITE)).series(P + 2)
    assert (s * prod).truncate(P) == LaurentSeries(-1, [1, 1, 1], P)


def test_sec6_x0_component():
    assert sec6_sum(0, 10).component(0) == LaurentSeries.one(10)


def test_sec6_coefficients_are_c_minus2_d_minus2():
    P, n = 50, 6
    f = sec6_sum(n, P)
    h = h_cd_table(-4, -2, n, P + 40)
    for N in range(n + 1):
        assert f.component(N) == ls_shift(h[N], N * N).truncate(P)


@pytest.mark.parametrize("ell", [1, 4, 10])
def test_truncation_invariance(ell):
    lo, hi = H_at_1(ell, 50), H_at_1(ell, 90)
    assert hi.truncate(50) == lo


def test_h10_h11_factor_through_j():
    P = 60
    assert H_at_1(10, P) == (QProduct.poch(1, 1, INFINITE, -1).series(P) * J_at_1(J10_FAMILY, P)).truncate(P)
    assert H_at_1(11, P) == (QProduct.poch(2, 1, INFINITE, -1).series(P) * J_at_1(J11_FAMILY, P)).truncate(P)
