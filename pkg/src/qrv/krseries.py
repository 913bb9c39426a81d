"""Sum sides: the triple sums H, the generalised sums h_{c,d,N}, the J families,
their coefficient sums, and the single-sum right-hand sides built on them."""

from __future__ import annotations

import threading
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadParameter
from .qfactor import INFINITE, QProduct, hypersum, phi
from .series import (
    INF,
    BivariateSeries,
    LaurentSeries,
    bv_eval_x1,
    bv_mul_poly,
    bv_substitute,
    div_binomial_inplace,
    ls_shift,
    ls_sum,
    mul_truncated,
)

# linear forms A_ell(i, j, k)
A_TABLE: dict[int, tuple[int, int, int]] = {
    1: (1, 6, 6),
    2: (2, 2, 6),
    3: (4, 6, 12),
    4: (1, 3, 3),
    5: (2, -1, 3),
    6: (1, 0, 0),
    7: (2, 4, 6),
    8: (1, 1, 3),
    9: (3, 5, 9),
    10: (1, 2, 4),
    11: (2, 4, 5),
}

# H_ell(x) = sum_N h_{c,d,N} q^{N^2 + mN} x^N, stored as (2c, d, m)
H_STRUCTURE: dict[int, tuple[int, int, int]] = {
    1: (5, 1, 0),
    2: (-1, 0, 1),
    3: (-1, 0, 3),
    4: (2, 0, 0),
    5: (-4, -1, 1),
    6: (-1, -1, 0),
    7: (1, 0, 1),
    8: (0, 0, 0),
    9: (0, 0, 2),
}

RAW_BOUND = 12


@dataclass(frozen=True)
class HSeriesParams:
    """Selects a triple sum: a catalogued ``ell`` or a RAW linear form.

    ``half`` picks the ``(q;q)_i (q^2;q^2)_j (q^3;q^3)_k`` shape used for
    ``ell`` in {10, 11}; otherwise the ``(q^4;q^4)_j (q^6;q^6)_k`` shape.
    """

    ell: int | None = None
    raw: tuple[int, int, int] | None = None
    half: bool = False

    def __post_init__(self):
        if (self.ell is None) == (self.raw is None):
            raise BadParameter("give exactly one of ell or raw")
        if self.ell is not None:
            if self.ell not in A_TABLE:
                raise BadParameter(f"ell must be in 1..11, got {self.ell}")
            object.__setattr__(self, "half", self.ell >= 10)
        elif any(abs(a) > RAW_BOUND for a in self.raw):
            raise BadParameter(f"RAW coefficients must satisfy |a| <= {RAW_BOUND}")

    @classmethod
    def catalog(cls, ell: int) -> HSeriesParams:
        return cls(ell=ell)

    @classmethod
    def raw_form(cls, ai: int, aj: int, ak: int, half: bool = False) -> HSeriesParams:
        return cls(raw=(ai, aj, ak), half=half)

    @property
    def linear(self) -> tuple[int, int, int]:
        return A_TABLE[self.ell] if self.ell is not None else self.raw


@dataclass(frozen=True)
class HCDParams:
    two_c: int
    d: int
    N: int

    @property
    def c(self) -> Fraction:
        return Fraction(self.two_c, 2)


# ---------------------------------------------------------------------------
# cached reciprocal Pochhammer tables

_lock = threading.Lock()
_recip: dict[tuple[int, int, int], tuple[int, list[list[int]]]] = {}


def recip_table(base: int, step: int, n_max: int, length: int, sign: int = 1) -> list[list[int]]:
    """Dense ``1/(sign q^base; q^step)_n`` for ``n <= n_max`` to ``length`` terms (``base >= 1``)."""
    key = (base, step, sign)
    with _lock:
        have = _recip.get(key)
        if have is not None and have[0] >= length and len(have[1]) > n_max:
            return [row[:length] for row in have[1][: n_max + 1]]
    rows = []
    cur = [1] + [0] * (length - 1) if length > 0 else []
    rows.append(cur[:])
    for n in range(1, n_max + 1):
        div_binomial_inplace(cur, base + step * (n - 1), sign)
        rows.append(cur[:])
    with _lock:
        old = _recip.get(key)
        if old is None or (old[0] <= length and len(old[1]) <= len(rows)):
            _recip[key] = (length, rows)
    return [row[:length] for row in rows]


# ---------------------------------------------------------------------------
# triple sums


def _quad(N: int, half: bool) -> int:
    return N * (N - 1) // 2 if half else N * (N - 1)


def h_valuation_floor(params: HSeriesParams, N: int) -> int:
    """Lower bound for the q-valuation of every term with ``i+2j+3k = N``."""
    ai, aj, ak = params.linear
    slack = Fraction(min(0, ai)) + Fraction(min(0, aj), 2) + Fraction(min(0, ak), 3)
    return _quad(N, params.half) + int((slack * N).__floor__())


def h_top(params: HSeriesParams, qprec: int) -> int:
    """Largest ``N`` that can contribute below ``qprec``."""
    top, N = -1, 0
    while True:
        v = h_valuation_floor(params, N)
        if v < qprec:
            top = N
        elif N > 2 * RAW_BOUND and v >= h_valuation_floor(params, N - 1):
            return top
        N += 1


def H(params: HSeriesParams, xcap: int | None, qprec: int) -> BivariateSeries:
    """The triple sum as a bivariate series; ``xcap=None`` keeps every component below ``qprec``."""
    if qprec < 1:
        raise BadParameter("qprec must be >= 1")
    ai, aj, ak = params.linear
    half = params.half
    top = h_top(params, qprec)
    n_hi = top if xcap is None else min(top, xcap)
    if n_hi < 0:
        return BivariateSeries({}, INF if xcap is None else xcap, qprec)
    floor = min(h_valuation_floor(params, N) for N in range(n_hi + 1))
    length = qprec - min(floor, 0)
    ri = recip_table(1, 1, n_hi, length)
    rj = recip_table(2, 2, n_hi // 2, length) if half else recip_table(4, 4, n_hi // 2, length)
    rk = recip_table(3, 3, n_hi // 3, length) if half else recip_table(6, 6, n_hi // 3, length)
    djk: dict[tuple[int, int], list[int]] = {}
    comps = {}
    for N in range(n_hi + 1):
        acc: dict[int, int] = {}
        base = _quad(N, half)
        for k in range(N // 3 + 1):
            for j in range((N - 3 * k) // 2 + 1):
                i = N - 2 * j - 3 * k
                e = base + (j * j if half else 3 * k * k) + ai * i + aj * j + ak * k
                if e >= qprec:
                    continue
                n = qprec - e
                if (j, k) not in djk:
                    djk[(j, k)] = mul_truncated(rj[j], rk[k], length)
                term = mul_truncated(ri[i][:n], djk[(j, k)][:n], n)
                sign = -1 if (k % 2 and not half) else 1
                for t, c in enumerate(term):
                    if c:
                        acc[e + t] = acc.get(e + t, 0) + sign * c
        comps[N] = LaurentSeries.from_dict(acc, qprec)
    return BivariateSeries(comps, INF if xcap is None else xcap, qprec)


def H_at_1(ell: int, qprec: int) -> LaurentSeries:
    return bv_eval_x1(H(HSeriesParams.catalog(ell), None, qprec))


def h_cd_table(two_c: int, d: int, n_max: int, qprec: int) -> list[LaurentSeries]:
    """``[h_{c,d,0}, ..., h_{c,d,n_max}]`` with ``c = two_c / 2``."""
    if n_max < 0:
        return []
    lin_j = two_c - 1
    lin_k = 3 * d

    def expo(j, k):
        return 3 * k * k + lin_j * j + lin_k * k

    floor = min(
        expo(j, k) for N in range(n_max + 1) for k in range(N // 3 + 1) for j in range((N - 3 * k) // 2 + 1)
    )
    length = qprec - min(floor, 0)
    ri = recip_table(1, 1, n_max, length)
    rj = recip_table(4, 4, n_max // 2, length)
    rk = recip_table(6, 6, n_max // 3, length)
    djk: dict[tuple[int, int], list[int]] = {}
    out = []
    for N in range(n_max + 1):
        acc: dict[int, int] = {}
        for k in range(N // 3 + 1):
            for j in range((N - 3 * k) // 2 + 1):
                e = expo(j, k)
                if e >= qprec:
                    continue
                n = qprec - e
                if (j, k) not in djk:
                    djk[(j, k)] = mul_truncated(rj[j], rk[k], length)
                term = mul_truncated(ri[N - 2 * j - 3 * k][:n], djk[(j, k)][:n], n)
                sign = -1 if k % 2 else 1
                for t, c in enumerate(term):
                    if c:
                        acc[e + t] = acc.get(e + t, 0) + sign * c
        out.append(LaurentSeries.from_dict(acc, qprec))
    return out


def h_cd(p: HCDParams, qprec: int) -> LaurentSeries:
    """``h_{c,d,N}``; exactly zero for ``N < 0``."""
    if p.N < 0:
        return LaurentSeries.zero(qprec)
    return h_cd_table(p.two_c, p.d, p.N, qprec)[p.N]


def sec6_sum(xcap: int | None, qprec: int) -> BivariateSeries:
    """The triple sum with linear form ``i - 3j - 3k``."""
    return H(HSeriesParams.raw_form(1, -3, -3), xcap, qprec)


# ---------------------------------------------------------------------------
# J families: double sums in (j, k) carrying x^{2j+2k}


@dataclass(frozen=True)
class JFamily:
    name: str
    lin_j: int
    lin_k: int
    shift: int  # denominator (-q^shift; q)_{2j+3k}

    def term(self, j: int, k: int) -> QProduct:
        n = 2 * j + 3 * k
        e = n * (n - 1) // 2 + j * j + self.lin_j * j + self.lin_k * k
        return (
            QProduct.monomial(e)
            * QProduct.poch(self.shift, 1, n, -1, power=-1)
            * QProduct.poch(2, 2, j, power=-1)
            * QProduct.poch(3, 3, k, power=-1)
        )


def j12(a: int) -> JFamily:
    if a not in (0, 2, 3):
        raise BadParameter(f"J12 index a must be 0, 2 or 3, got {a}")
    return JFamily(f"J12,{a}", 2 * a + 2, 3 * a + 2, a + 1)


J10_FAMILY = JFamily("J10", 2, 4, 1)
J11_FAMILY = JFamily("J11", 4, 5, 2)


def J_series(fam: JFamily, xcap: int | None, qprec: int) -> BivariateSeries:
    """``sum_{j,k} term(j,k) x^{2j+2k}``; components above ``xcap`` are dropped."""
    comps: dict[int, list[LaurentSeries]] = {}
    M = 0
    while M * (2 * M - 1) < qprec and (xcap is None or 2 * M <= xcap):
        for k in range(M + 1):
            j = M - k
            t = fam.term(j, k)
            if t.valuation() < qprec:
                comps.setdefault(2 * M, []).append(t.series(qprec))
        M += 1
    return BivariateSeries(
        {n: ls_sum(ts, qprec) for n, ts in comps.items()}, INF if xcap is None else xcap, qprec
    )


def J10(xcap2: int | None, qprec: int) -> BivariateSeries:
    return J_series(J10_FAMILY, xcap2, qprec)


def J11(xcap2: int | None, qprec: int) -> BivariateSeries:
    return J_series(J11_FAMILY, xcap2, qprec)


def J12(a: int, xcap2: int | None, qprec: int) -> BivariateSeries:
    return J_series(j12(a), xcap2, qprec)


def J_at_1(fam: JFamily, qprec: int) -> LaurentSeries:
    return bv_eval_x1(J_series(fam, None, qprec))


# j-coefficients: J(x) = sum_M j_M q^{3M^2 + lin M} x^{2M}
# family -> (u, shift, lin) with summand q^{k(3k+u)/2} / (-q^shift;q)_{2M+k} ...
J_COEFF = {
    10: (3, 1, 1),
    11: (1, 2, 3),
    (12, 0): (-1, 1, 1),
    (12, 2): (3, 3, 5),
    (12, 3): (5, 4, 7),
}


def _jkey(family):
    if isinstance(family, str):
        family = {"J10": 10, "J11": 11, "J12_0": (12, 0), "J12_2": (12, 2), "J12_3": (12, 3)}.get(
            family, family
        )
    if isinstance(family, list):
        family = tuple(family)
    if family not in J_COEFF:
        raise BadParameter(f"unknown j-coefficient family {family!r}")
    return family


def j_coeff(family, M: int, qprec: int) -> LaurentSeries:
    """The finite k-sum ``j_M``; zero for ``M < 0``."""
    u, shift, _ = J_COEFF[_jkey(family)]
    if M < 0:
        return LaurentSeries.zero(qprec)
    initial = QProduct.poch(shift, 1, 2 * M, -1, power=-1) * QProduct.poch(2, 2, M, power=-1)

    def ratio(k: int) -> QProduct:
        return QProduct.binomials(
            [(shift + 2 * M + k - 1, -1, -1), (2 * (M - k + 1), 1, 1), (3 * k, 1, -1)]
        ) * QProduct.monomial((6 * k - 3 + u) // 2)

    return hypersum(initial, ratio, qprec, burn_in=M + 2)


def j_exponent(family, M: int) -> int:
    return 3 * M * M + J_COEFF[_jkey(family)][2] * M


# ---------------------------------------------------------------------------
# J5 and J8


def _x_monomial(xexp: int, qexp: int, coeff: int = 1) -> BivariateSeries:
    return BivariateSeries.from_terms({(xexp, qexp): coeff})


def J5(xcap: int | None, qprec: int) -> BivariateSeries:
    """``H_5(x) - x q^3 H_5(x q^2)``."""
    h = H(HSeriesParams.catalog(5), xcap, qprec)
    return h - bv_mul_poly(bv_substitute(h, 2), _x_monomial(1, 3))


def J8(xcap: int | None, qprec: int) -> BivariateSeries:
    """``H_8(x) - x q H_8(x q^2)``."""
    h = H(HSeriesParams.catalog(8), xcap, qprec)
    return h - bv_mul_poly(bv_substitute(h, 2), _x_monomial(1, 1))


# ---------------------------------------------------------------------------
# single sums with an infinite-product prefactor


def tail_sum(
    tail_base: int,
    tail_step: int,
    num: list[tuple[int, int]],
    den: list[tuple[int, int]],
    quad_lin: int,
    qprec: int,
    shift: int = 0,
    weight: Callable[[int], QProduct] | None = None,
) -> LaurentSeries:
    """``(q^t;q^s)_oo sum_n W_n q^{n^2 + quad_lin n + shift} prod(q^a;q^m)_n / prod(q^b;q^m)_n / (q^t;q^s)_n``.

    ``num`` and ``den`` list ``(base, step)`` pairs.  The prefactor is folded
    into each term as ``(q^{t+sn}; q^s)_oo``, which keeps vanishing factors
    symbolic until they cancel.
    """
    initial = QProduct.poch(tail_base, tail_step, INFINITE) * QProduct.monomial(shift)

    def ratio(n: int) -> QProduct:
        items = [(a + m * (n - 1), 1, 1) for a, m in num]
        items += [(b + m * (n - 1), 1, -1) for b, m in den]
        items.append((tail_base + tail_step * (n - 1), 1, -1))
        return QProduct.binomials(items) * QProduct.monomial(2 * n - 1 + quad_lin)

    return hypersum(initial, ratio, qprec, burn_in=8, weight=weight)


def prop1_rhs(a: int, b: int, qprec: int) -> LaurentSeries:
    """Single-sum value of ``A(1)`` for the three-shift q-difference equation with parameters ``(a, b)``."""
    return tail_sum(
        2 * b + a - 2, 4, [(3 * b - 6, 6)], [(b - 2, 2), (2, 2)], a + 1, qprec
    )


def prop1_closed_product(b: int, qprec: int) -> LaurentSeries:
    """``(q^{3b};q^12)_oo / (q^2, q^b; q^4)_oo``, the ``a = 0`` evaluation."""
    return (
        QProduct.poch(3 * b, 12, INFINITE)
        * QProduct.poch(2, 4, INFINITE, power=-1)
        * QProduct.poch(b, 4, INFINITE, power=-1)
    ).series(qprec)


def _check_prop2(a: int):
    if a <= -6 and a % 3 == 0:
        raise BadParameter("a must not be a multiple of 3 when a <= -6")


def prop2_rhs(
    a: int, b: int, c: int, alpha0: int, alpha1: int, qprec: int, xcap2: int | None
) -> BivariateSeries:
    """Solution of the two-shift q-difference equation with initial data ``alpha0, alpha1``."""
    _check_prop2(a)

    def coeff(n: int, odd: bool) -> QProduct:
        lo, hi = (b - 2, c - 2) if odd else (b - 5, c - 5)
        d1, d2 = (9, a + 9) if odd else (6, a + 6)
        return (
            QProduct.poch(lo, 6, n)
            * QProduct.poch(hi, 6, n)
            * QProduct.poch(d1, 6, n, power=-1)
            * QProduct.poch(d2, 6, n, power=-1)
            * QProduct.monomial(5 * n, -1 if n % 2 else 1)
        )

    cap = INF if xcap2 is None else xcap2
    s_terms: dict[int, QProduct] = {}
    n = 0
    while 2 * n <= cap:
        live = False
        for odd, alpha in ((False, alpha0), (True, alpha1)):
            if alpha and 2 * n + odd <= cap:
                t = coeff(n, odd) * alpha
                if xcap2 is not None or t.valuation() < qprec:
                    s_terms[2 * n + odd] = t
                    live = True
        # with no cap, stop once past the parameter burn-in and out of range
        if xcap2 is None and not live and n > 2 + max(0, -a, -b, -c) // 6:
            break
        n += 1
    if not s_terms:
        return BivariateSeries({}, cap, qprec)
    vmin = min(min(t.valuation() for t in s_terms.values()), 0)
    inner = qprec - vmin
    sums = {deg: t.series(inner) for deg, t in s_terms.items()}
    # prefactor (-x^2 q^5; q^6)_oo as a direct product of (1 + x^2 q^t)
    pref: dict[int, LaurentSeries] = {0: LaurentSeries.one(inner)}
    for t in range(5, inner, 6):
        new = dict(pref)
        for deg, f in pref.items():
            if deg + 2 <= cap:
                new[deg + 2] = (new.get(deg + 2, LaurentSeries.zero(inner)) + ls_shift(f, t)).truncate(inner)
        pref = new
    comps: dict[int, LaurentSeries] = {}
    for dp, p in pref.items():
        for ds, s in sums.items():
            deg = dp + ds
            if deg <= cap:
                term = (p * s).truncate(qprec)
                comps[deg] = term if deg not in comps else comps[deg] + term
    return BivariateSeries(comps, cap, qprec)


def prop2_at_1(a: int, b: int, c: int, alpha0: int, alpha1: int, qprec: int) -> LaurentSeries:
    """``A(1)`` from the same solution, summed as two basic hypergeometric series."""
    _check_prop2(a)
    pre = QProduct.poch(5, 6, INFINITE, -1)
    out = LaurentSeries.zero(qprec)
    if alpha0:
        out = out + phi([b - 5, c - 5], [a + 6], 6, 5, -1, qprec, prefactor=pre * alpha0)
    if alpha1:
        out = out + phi([b - 2, c - 2], [a + 9, 3], 6, 5, -1, qprec, prefactor=pre * alpha1)
    return out


# ---------------------------------------------------------------------------
# single-sum reductions for the four conjectural H values


def _weight(poly_terms: Callable[[int], dict[int, int]], den: Callable[[int], int]):
    def w(n: int) -> QProduct:
        return QProduct.polynomial(LaurentSeries.from_dict(poly_terms(n))) * QProduct.binomial(
            den(n), 1, -1
        )

    return w


def thm2_rhs(which: str, qprec: int) -> LaurentSeries:
    """Single-sum expressions for ``H_4(1), H_5(1), H_8(1), H_9(1)``."""
    if which == "H4":
        return tail_sum(3, 4, [(3, 6)], [(1, 2), (2, 2)], 0, qprec)
    if which == "H9":
        return tail_sum(5, 4, [(3, 6)], [(1, 2), (2, 2)], 2, qprec)
    if which == "H5":
        w = _weight(lambda n: _poly_add({0: 1}, {2 * n - 4: 1}, {2 * n - 1: 1}), lambda n: 2 * n + 2)
        head = QProduct.poch(-1, 4, INFINITE).series(qprec)
        return head + tail_sum(3, 4, [(-3, 6)], [(-1, 2), (2, 2)], 4, qprec, shift=3, weight=w)
    if which == "H8":
        w = _weight(lambda n: _poly_add({0: 1}, {2 * n: 1}, {2 * n + 1: 1}), lambda n: 2 * n + 2)
        head = QProduct.poch(1, 4, INFINITE).series(qprec)
        return head + tail_sum(5, 4, [(3, 6)], [(1, 2), (2, 2)], 2, qprec, shift=1, weight=w)
    raise BadParameter(f"unknown reduction {which!r}")


def _poly_add(*ds: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for d in ds:
        for e, c in d.items():
            out[e] = out.get(e, 0) + c
    return out


# ---------------------------------------------------------------------------
# the partially reduced modulus-12 conjecture


def sec5_triple(qprec: int) -> LaurentSeries:
    """Triple sum with the ``(1 + q^{2N+2} - q^{3N+5})`` weight, ``N = i+2j+3k``."""
    h = H(HSeriesParams.raw_form(1, 2, 2, half=True), None, qprec)
    parts = []
    for N, f in h.components.items():
        w = LaurentSeries.from_dict(_poly_add({0: 1}, {2 * N + 2: 1}, {3 * N + 5: -1}))
        parts.append((f * w).truncate(qprec))
    return ls_sum(parts, qprec)


def sec5_via_j(qprec: int) -> LaurentSeries:
    """``(-q;q)_oo J_{12,0}(1) + q^2 (-q^3;q)_oo J_{12,2}(1) - q^5 (-q^4;q)_oo J_{12,3}(1)``."""
    out = LaurentSeries.zero(qprec)
    for a, sign, e in ((0, 1, 0), (2, 1, 2), (3, -1, 5)):
        pre = QProduct.poch(a + 1, 1, INFINITE, -1).series(qprec - e)
        out = out + ls_shift(pre * J_at_1(j12(a), qprec - e), e) * sign
    return out.truncate(qprec)


def sec5_lhs(qprec: int) -> LaurentSeries:
    return sec5_triple(qprec)
