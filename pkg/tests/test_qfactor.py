import pytest

from qrv.errors import DivergentTermOrder, IllFormedInfinite, NonUnitLeading, ZeroSeries
from qrv.oracle import oracle_partitions
from qrv.qfactor import (
    CLASSICAL,
    INFINITE,
    PochhammerSpec,
    QProduct,
    check_classical,
    euler_exp_sum,
    hypersum,
    phi,
    poch,
    poch_recip_guarded,
    product_side,
)
from qrv.series import LaurentSeries


def test_finite_poch_expands():
    # (q;q)_2 = 1 - q - q^2 + q^3
    assert poch(PochhammerSpec(1, 1, 2), 10) == LaurentSeries(0, [1, -1, -1, 1], 10)


def test_infinite_poch_is_euler_function():
    s = poch(PochhammerSpec(1, 1, INFINITE), 16)
    assert s == oracle_partitions([(1, 1, -1)], 16)


def test_negative_length_uses_reciprocal():
    # (x;q)_{-1} = 1/(x q^{-1}; q)_1
    p = QProduct.poch(3, 1, -1)
    assert p.series(6) == LaurentSeries(0, [1, 0, 1, 0, 1, 0], 6)


def test_reciprocal_zero_convention():
    # 1/(q;q)_n vanishes for negative n
    for n in (-1, -2, -5):
        assert poch_recip_guarded(1, 1, n, 10).is_zero()
    assert QProduct.poch(1, 1, -3, power=-1).is_zero()


def test_zero_factor_in_denominator_raises():
    with pytest.raises(ZeroSeries):
        QProduct.poch(0, 1, 2, power=-1).series(5)


def test_two_factor_scalar():
    # (-1;q)_1 = 2
    assert QProduct.poch(0, 1, 1, -1).series(3) == LaurentSeries(0, [2], 3)
    with pytest.raises(NonUnitLeading):
        QProduct.poch(0, 1, 1, -1, power=-1).series(3)


def test_removable_singularity_cancels():
    p = QProduct.binomial(0) / QProduct.binomial(0)
    assert p.series(4) == LaurentSeries.one(4)


def test_negative_exponent_binomial_is_canonicalised():
    # 1 - q^{-2} = -q^{-2}(1 - q^2)
    p = QProduct.binomial(-2)
    assert p.series(3) == LaurentSeries(-2, [-1, 0, 1], 3)


def test_illformed_infinite():
    with pytest.raises(IllFormedInfinite):
        QProduct.poch(0, 0, INFINITE)


def test_negative_base_infinite_product():
    # (q^{-1};q^4)_oo = (1 - q^{-1}) (q^3;q^4)_oo
    lhs = QProduct.poch(-1, 4, INFINITE).series(30)
    rhs = (LaurentSeries.from_dict({0: 1, -1: -1}) * QProduct.poch(3, 4, INFINITE).series(31)).truncate(30)
    assert lhs == rhs


def test_product_side_helper():
    s = product_side([(PochhammerSpec(1, 5, INFINITE), -1), (PochhammerSpec(4, 5, INFINITE), -1)], 30)
    assert s == oracle_partitions([(1, 5), (4, 5)], 30)


def test_hypersum_euler():
    # sum q^{n^2}/(q;q)_n with a quadratic valuation
    def ratio(n):
        return QProduct.binomial(n, 1, -1) * QProduct.monomial(2 * n - 1)

    s = hypersum(QProduct(), ratio, 40, burn_in=1)
    assert s == oracle_partitions([(1, 5), (4, 5)], 40)


def test_hypersum_divergent():
    def ratio(n):
        return QProduct.monomial(-1)

    with pytest.raises(DivergentTermOrder):
        hypersum(QProduct(), ratio, 10, burn_in=2)


def test_euler_exp_sum_is_product():
    # sum (-1)^n q^{n(n-1)/2} (q)^n/(q;q)_n = (q;q)_oo
    assert euler_exp_sum(1, 40) == poch(PochhammerSpec(1, 1, INFINITE), 40)


def test_phi_terminates_on_zero_upper():
    # q-binomial theorem: (q^{-2} q^3;q)_oo/(q^3;q)_oo = (1-q)(1-q^2)
    assert phi([-2], [], 1, 3, 1, 20) == LaurentSeries(0, [1, -1, -1, 1], 20)


def test_phi_lower_zero_raises():
    with pytest.raises(ZeroSeries):
        phi([1], [0], 1, 1, 1, 10)


@pytest.mark.parametrize("name", CLASSICAL)
def test_classical_small_order(name):
    m, checked, _ = check_classical(name, 30)
    assert m is None and checked > 0
