"""Exact checks of the telescoping certificates behind the j-coefficient recurrences.

Each family has a term ``f(k, M)`` and a certificate ``g(k, M)`` with

    c2(M) f(k, M+2) - c1(M) f(k, M+1) + c0 f(k, M) = g(k+1, M) - g(k, M).

Both are built as :class:`QProduct` objects so that the apparent poles of
``g`` at ``k = M+1`` and ``k = M+2`` cancel against the reciprocal-zero
factors of ``f`` before anything is expanded.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import ParameterMismatch
from .krseries import j_coeff
from .qfactor import QProduct
from .report import Mismatch, VerificationReport, first_mismatch, stopwatch
from .series import INF, LaurentSeries

Poly = LaurentSeries


def _poly(*terms: tuple[int, int]) -> Poly:
    d: dict[int, int] = {}
    for e, c in terms:
        d[e] = d.get(e, 0) + c
    return LaurentSeries.from_dict(d)


def _one_minus(e: int) -> Poly:
    return _poly((0, 1), (e, -1))


def _f_term(u: int, shift: int, k: int, M: int) -> QProduct:
    """``q^{k(3k+u)/2} / ((-q;q)_{2M+k+shift} (q^2;q^2)_{M-k} (q^3;q^3)_k)``."""
    num = QProduct.monomial(k * (3 * k + u) // 2)
    den = (
        QProduct.poch(1, 1, 2 * M + k + shift, s=-1)
        * QProduct.poch(2, 2, M - k)
        * QProduct.poch(3, 3, k)
    )
    return num / den


def _g_term(
    lead: int, P: Poly, plus: tuple[int, int, int], k: int, M: int, f: QProduct
) -> QProduct:
    """``q^lead P (1-q^{3k}) f / [prod (1+q^{2M+k+t}) (q^{2k}-q^{2M+2}) (q^{2M+4}-q^{2k})]``."""
    den = QProduct.binomials([(2 * M + k + t, -1, 1) for t in plus])
    den = den * QProduct.monomial(2 * k) * QProduct.binomial(2 * M + 2 - 2 * k)
    # both vanishing factors are written in the variable q^{2(M-k)} of the
    # (q^2;q^2)_{M-k} they cancel, so pole cells take their limiting value
    den = den * QProduct.monomial(2 * k, -1) * QProduct.binomial(2 * M + 4 - 2 * k)
    num = QProduct.monomial(lead) * QProduct.polynomial(P) * QProduct.binomial(3 * k) * f
    return num / den


@dataclass(frozen=True)
class CertificatePair:
    """A term, its certificate and the recurrence coefficients ``(c2, c1, c0)`` in ``M``."""

    family: str
    u: int
    shift: int
    lead: int
    plus: tuple[int, int, int]
    P: Callable[[int, int], Poly] = field(compare=False)
    coeffs: Callable[[int], tuple[Poly, Poly, Poly]] = field(compare=False)
    bridge: Poly = field(compare=False)
    j_family: object = None

    def f_product(self, k: int, M: int) -> QProduct:
        return _f_term(self.u, self.shift, k, M)

    def g_product(self, k: int, M: int) -> QProduct:
        return _g_term(self.lead, self.P(k, M), self.plus, k, M, self.f_product(k, M))

    def f_term(self, k: int, M: int, qprec: int) -> LaurentSeries:
        return _series(self, "f", k, M, qprec)

    def g_cert(self, k: int, M: int, qprec: int) -> LaurentSeries:
        return _series(self, "g", k, M, qprec)

    def recurrence_coeffs(self, M: int) -> tuple[Poly, Poly, Poly]:
        return self.coeffs(M)


@lru_cache(maxsize=20000)
def _series(pair: CertificatePair, which: str, k: int, M: int, qprec: int) -> LaurentSeries:
    prod = pair.f_product(k, M) if which == "f" else pair.g_product(k, M)
    return prod.series(qprec)


def _p10(k, M):
    return _poly(
        (4 * M + 2, 1),
        (4 * M + 3 * k - 1, -1),
        (4 * M + 3 * k, -1),
        (6 * M + 4 * k + 2, -1),
        (6 * M + k + 3, 1),
        (6 * M + k + 4, 1),
        (8 * M + 2 * k + 6, 1),
        (8 * M + 2 * k + 8, -1),
    )


def _p11(k, M):
    return _poly(
        (4 * M + 1, 1),
        (4 * M + 3 * k, -1),
        (4 * M + 3 * k + 2, -1),
        (6 * M + 4 * k + 4, -1),
        (6 * M + k + 4, 1),
        (6 * M + k + 5, 1),
        (8 * M + 2 * k + 8, 1),
        (8 * M + 2 * k + 10, -1),
    )


def _p120(k, M):
    return _poly(
        (2 * M + 2 * k - 6, 1),
        (2 * M + 2 * k - 4, -1),
        (4 * M, 1),
        (4 * M + 3 * k - 2, -1),
        (4 * M + 3 * k - 1, -1),
        (6 * M + k + 2, 1),
        (6 * M + k + 3, 1),
        (6 * M + 4 * k, -1),
    )


def _p122(k, M):
    return _poly(
        (4 * M + 2, 1),
        (4 * M + 3 * k + 3, -1),
        (4 * M + 3 * k + 4, -1),
        (6 * M + k + 6, 1),
        (6 * M + k + 7, 1),
        (6 * M + 4 * k + 8, -1),
    )


def _coeffs(e2a: int, e2b: int, q1: int, e1a: int, e1b: int):
    def f(M):
        return (
            _one_minus(6 * M + e2a) * _one_minus(6 * M + e2b),
            _poly((0, 1), (q1, 1), (6 * M + e1a, -1), (6 * M + e1b, -1)),
            _poly((q1, 1)),
        )

    return f


PAIRS: dict[str, CertificatePair] = {
    "J10": CertificatePair("J10", 3, 0, 6, (3, 2, 1), _p10, _coeffs(10, 12, 2, 7, 11), _poly((0, 1)), 10),
    "J11": CertificatePair("J11", 1, 1, 7, (4, 3, 2), _p11, _coeffs(12, 14, 2, 9, 13), _poly((0, 1), (1, 1)), 11),
    "J12_0": CertificatePair("J12_0", -1, 0, 10, (3, 2, 1), _p120, _coeffs(10, 12, 4, 9, 11), _poly((0, 1)), (12, 0)),
    # (-q^3;q)_{2M+k} = (-q;q)_{2M+k+2} / ((1+q)(1+q^2))
    "J12_2": CertificatePair(
        "J12_2", 3, 2, 6, (5, 4, 3), _p122, _coeffs(12, 16, 2, 11, 13),
        _poly((0, 1), (1, 1), (2, 1), (3, 1)), (12, 2),
    ),
}


def get_pair(family) -> CertificatePair:
    if isinstance(family, CertificatePair):
        return family
    key = str(family).replace(",", "_").replace(" ", "")
    if key not in PAIRS:
        raise ParameterMismatch(f"unknown certificate family {family!r}; expected one of {sorted(PAIRS)}")
    return PAIRS[key]


def telescoping_mismatch(pair: CertificatePair, k: int, M: int, qprec: int) -> Mismatch | None:
    c2, c1, c0 = pair.coeffs(M)
    lhs = (
        c2 * pair.f_term(k, M + 2, qprec)
        - c1 * pair.f_term(k, M + 1, qprec)
        + c0 * pair.f_term(k, M, qprec)
    )
    rhs = pair.g_cert(k + 1, M, qprec) - pair.g_cert(k, M, qprec)
    return first_mismatch(lhs.truncate(qprec), rhs.truncate(qprec), qprec, f"k={k} M={M}")


def check_telescoping(pair, k_max: int = 30, M_max: int = 30, qprec: int = 300) -> VerificationReport:
    """Certificate identity on every cell ``0 <= k <= k_max``, ``0 <= M <= M_max``.

    Also requires ``g(0, M)`` to be exactly zero.
    """
    pair = get_pair(pair)
    with stopwatch() as ms:
        m = None
        for M in range(M_max + 1):
            if not pair.g_product(0, M).is_zero():
                g0 = pair.g_cert(0, M, qprec)
                e = g0.valuation()
                m = Mismatch(e, g0.coefficient(e), 0, f"g(0,M) M={M}")
                break
            for k in range(k_max + 1):
                m = telescoping_mismatch(pair, k, M, qprec)
                if m:
                    break
            if m:
                break
    return VerificationReport(f"WZ:{pair.family}", "proved", qprec, m is None, m, ms[0])


def f_sum(pair: CertificatePair, M: int, qprec: int) -> LaurentSeries:
    """``sum_k f(k, M)``; terms with ``k > M`` vanish."""
    acc = LaurentSeries.zero(qprec)
    for k in range(M + 1):
        acc = acc + pair.f_term(k, M, qprec)
    return acc


def check_summed_recurrence(pair, M_max: int = 30, qprec: int = 300) -> VerificationReport:
    """Summing the certificate identity over ``k`` gives the j-recurrence.

    Three things are checked for every ``M <= M_max``: the k-sum of ``f``
    times the family's bridging polynomial reproduces ``j_M`` computed
    directly; the telescoped right side ``g(M+3, M) - g(0, M)`` is exactly
    zero; and the summed left side (hence the recurrence on ``j``) vanishes.
    """
    pair = get_pair(pair)
    with stopwatch() as ms:
        m = None
        sums = [f_sum(pair, M, qprec) for M in range(M_max + 3)]
        for M in range(M_max + 3):
            j = j_coeff(pair.j_family, M, qprec)
            m = first_mismatch(j, (pair.bridge * sums[M]).truncate(qprec), qprec, f"j vs sum f, M={M}")
            if m:
                break
        if m is None:
            for M in range(M_max + 1):
                if not (pair.g_product(M + 3, M).is_zero() and pair.g_product(0, M).is_zero()):
                    m = Mismatch(0, 1, 0, f"telescoped boundary M={M}")
                    break
                c2, c1, c0 = pair.coeffs(M)
                total = (c2 * sums[M + 2] - c1 * sums[M + 1] + c0 * sums[M]).truncate(qprec)
                m = first_mismatch(total, LaurentSeries.zero(qprec), qprec, f"summed M={M}")
                if m:
                    break
    return VerificationReport(f"WZSUM:{pair.family}", "proved", qprec, m is None, m, ms[0])


def g_valuations(pair, M: int, k_range: range) -> list[int | float]:
    pair = get_pair(pair)
    return [pair.g_product(k, M).valuation() for k in k_range]


def check_vanishing_tail(pair, M: int, k_range: range | None = None, qprec: int = 300) -> VerificationReport:
    """Truncation-level form of ``g(k, M) -> 0`` as ``k`` grows.

    On ``k_range`` (default ``[M+1, M+20]``) the valuations of ``g(k, M)``
    must be strictly increasing until they reach ``qprec`` and stay at or
    above ``qprec`` from some threshold on.  In practice ``g`` is exactly
    zero from ``k = M+3``, which the check also records as infinite valuation.
    """
    pair = get_pair(pair)
    if k_range is None:
        k_range = range(M + 1, M + 21)
    with stopwatch() as ms:
        vals = g_valuations(pair, M, k_range)
        m = None
        prev = None
        for k, v in zip(k_range, vals):
            if prev is not None and prev < qprec and not v > prev:
                m = Mismatch(int(v), 0, 0, f"valuation not increasing at k={k}")
                break
            prev = v
        if m is None and not (vals and vals[-1] >= qprec):
            m = Mismatch(int(vals[-1]) if vals else 0, 0, 0, "tail never reaches qprec")
    return VerificationReport(f"TAIL:{pair.family}[M={M}]", "proved", qprec, m is None, m, ms[0])


def tail_threshold(pair, M: int, k_range: range, qprec: int) -> int | None:
    """Smallest ``k`` in range from which every valuation is at least ``qprec``."""
    vals = g_valuations(pair, M, k_range)
    thr = None
    for k, v in zip(k_range, vals):
        if v >= qprec:
            thr = k if thr is None else thr
        else:
            thr = None
    return thr


__all__ = [
    "INF",
    "PAIRS",
    "CertificatePair",
    "check_summed_recurrence",
    "check_telescoping",
    "check_vanishing_tail",
    "f_sum",
    "g_valuations",
    "get_pair",
    "tail_threshold",
]
