import dataclasses

import pytest

from qrv.certificates import (
    PAIRS,
    check_summed_recurrence,
    check_telescoping,
    check_vanishing_tail,
    f_sum,
    g_valuations,
    get_pair,
    tail_threshold,
    telescoping_mismatch,
)
from qrv.errors import ParameterMismatch
from qrv.krseries import j_coeff
from qrv.recurrences import check_equivalence_reduction

FAMILIES = sorted(PAIRS)


def test_four_families():
    assert FAMILIES == ["J10", "J11", "J12_0", "J12_2"]


@pytest.mark.parametrize("alias", ["J12,0", "J12_0", PAIRS["J12_0"]])
def test_get_pair_aliases(alias):
    assert get_pair(alias).family == "J12_0"


def test_get_pair_unknown():
    with pytest.raises(ParameterMismatch):
        get_pair("J13")


@pytest.mark.parametrize("fam", FAMILIES)
def test_g_vanishes_at_k0(fam):
    pair = PAIRS[fam]
    assert all(pair.g_product(0, M).is_zero() for M in range(12))


@pytest.mark.parametrize("fam", FAMILIES)
def test_g_vanishes_beyond_pole_cells(fam):
    pair = PAIRS[fam]
    for M in range(8):
        for k in range(M + 3, M + 8):
            assert pair.g_product(k, M).is_zero()
        # pole cells carry a finite nonzero limit
        assert not pair.g_product(M + 1, M).is_zero()
        assert not pair.g_product(M + 2, M).is_zero()


@pytest.mark.parametrize("fam", FAMILIES)
def test_f_vanishes_past_m(fam):
    pair = PAIRS[fam]
    assert all(pair.f_product(k, 4).is_zero() for k in range(5, 10))


@pytest.mark.parametrize("fam", FAMILIES)
@pytest.mark.parametrize("k,M", [(1, 0), (0, 0), (1, 1), (2, 0), (3, 1), (2, 2)])
def test_special_cells(fam, k, M):
    assert telescoping_mismatch(PAIRS[fam], k, M, 80) is None


@pytest.mark.parametrize("fam", FAMILIES)
def test_telescoping_small_grid(fam):
    r = check_telescoping(fam, 10, 10, 120)
    assert r.passed, r.text_line()
    assert r.id == f"WZ:{fam}"


@pytest.mark.parametrize("fam", FAMILIES)
def test_summed_recurrence_small(fam):
    assert check_summed_recurrence(fam, 10, 120).passed


@pytest.mark.parametrize("fam", FAMILIES)
def test_bridge_links_sum_to_j(fam):
    pair = PAIRS[fam]
    for M in range(6):
        assert (pair.bridge * f_sum(pair, M, 60)).truncate(60) == j_coeff(pair.j_family, M, 60)


@pytest.mark.parametrize("fam", FAMILIES)
def test_valuations_grow_up_to_pole_cells(fam):
    M = 10
    vals = g_valuations(fam, M, range(1, M + 3))
    assert all(a < b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("fam", FAMILIES)
@pytest.mark.parametrize("M", [0, 5, 12])
def test_vanishing_tail(fam, M):
    r = check_vanishing_tail(fam, M, None, 200)
    assert r.passed
    assert r.id == f"TAIL:{fam}[M={M}]"
    assert tail_threshold(fam, M, range(M + 1, M + 21), 200) is not None


def test_tail_from_k1_also_passes():
    assert check_vanishing_tail("J10", 6, range(1, 27), 10**6).passed


def test_corrupted_certificate_fails():
    pair = PAIRS["J10"]
    bad = dataclasses.replace(pair, lead=pair.lead + 1)
    r = check_telescoping(bad, 4, 4, 60)
    assert not r.passed
    assert r.first_mismatch.where is not None


def test_corrupted_coefficients_fail():
    pair = PAIRS["J11"]
    good = pair.coeffs

    def shifted(M):
        c2, c1, c0 = good(M)
        return c2, c1, c0 + c0
    bad = dataclasses.replace(pair, coeffs=shifted)
    assert not check_telescoping(bad, 4, 4, 60).passed
    assert not check_summed_recurrence(bad, 4, 60).passed


@pytest.mark.parametrize("fam,which", [("J10", "j10rec"), ("J11", "j11rec"), ("J12_0", "j120rec"), ("J12_2", "j122rec")])
def test_certificate_agrees_with_recurrence_bridge(fam, which):
    # both routes must land on the same j-recurrence
    assert check_summed_recurrence(fam, 6, 80).passed
    assert check_equivalence_reduction(which, 8, 80).passed
