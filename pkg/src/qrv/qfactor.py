"""q-Pochhammer symbols, factored q-products and basic hypergeometric sums.

Everything here is exact.  A :class:`QProduct` keeps a closed-form term as
``coeff * q**exp * poly(q) * prod (1 - s q**t)**mult * prod (s q**a; q**m)_oo**p``
with every binomial normalised to ``t >= 0``.  Keeping the factors symbolic
lets removable singularities such as ``(1 - q**0) / (1 - q**0)`` cancel before
anything is expanded, which is how the reciprocal-zero convention
``1/(q;q)_n = 0`` for negative ``n`` falls out.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass

from .errors import DivergentTermOrder, IllFormedInfinite, NonUnitLeading, ZeroSeries
from .series import (
    INF,
    LaurentSeries,
    div_binomial_inplace,
    ls_sum,
    mul_binomial_inplace,
    mul_truncated,
)

INFINITE = INF

ZERO_FACTOR = (0, 1)  # 1 - q^0
TWO_FACTOR = (0, -1)  # 1 + q^0


def _sign_pow(s: int, p: int) -> int:
    return s if p % 2 else 1


class QProduct:
    """Closed-form q-product with symbolic binomial factors (immutable)."""

    __slots__ = ("coeff", "exp", "factors", "tails", "poly")

    def __init__(
        self,
        coeff: int = 1,
        exp: int = 0,
        factors: dict[tuple[int, int], int] | None = None,
        tails: tuple[tuple[int, int, int, int], ...] = (),
        poly: LaurentSeries | None = None,
    ):
        poly = LaurentSeries.one() if poly is None else poly
        if not poly.is_exact():
            raise ValueError("QProduct polynomial part must be exact")
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "exp", exp)
        object.__setattr__(self, "factors", {k: v for k, v in (factors or {}).items() if v})
        object.__setattr__(self, "tails", tuple(tails))
        object.__setattr__(self, "poly", poly)

    def __setattr__(self, name, value):
        raise AttributeError("QProduct is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> QProduct:
        return cls(coeff, exp)

    @classmethod
    def polynomial(cls, poly: LaurentSeries) -> QProduct:
        return cls(poly=poly)

    @classmethod
    def binomial(cls, t: int, s: int = 1, power: int = 1) -> QProduct:
        """``(1 - s q**t) ** power``."""
        if t < 0:
            # 1 - s q^t = -s q^t (1 - s q^-t)
            return cls(_sign_pow(-s, power), t * power, {(-t, s): power})
        return cls(1, 0, {(t, s): power})

    @classmethod
    def binomials(cls, items: Sequence[tuple[int, int, int]]) -> QProduct:
        """Product of ``(1 - s q**t) ** power`` over ``(t, s, power)`` triples."""
        coeff, exp = 1, 0
        fac: dict[tuple[int, int], int] = {}
        for t, s, p in items:
            if t < 0:
                coeff *= _sign_pow(-s, p)
                exp += t * p
                key = (-t, s)
            else:
                key = (t, s)
            fac[key] = fac.get(key, 0) + p
        return cls(coeff, exp, fac)

    @classmethod
    def poch(cls, a: int, m: int, n: int | float, s: int = 1, power: int = 1) -> QProduct:
        """``(s q**a; q**m)_n ** power`` for any integer ``n`` or ``INFINITE``.

        Negative ``n`` follows ``(x;q)_n = 1/(x q**n; q)_{-n}``.
        """
        if m < 1:
            if n == INFINITE:
                raise IllFormedInfinite(f"(q^{a}; q^{m})_oo has infinitely many nonpositive factors")
            raise ValueError("Pochhammer step must be positive")
        if n == INFINITE:
            items = []
            while a <= 0:
                items.append((a, s, power))
                a += m
            head = cls.binomials(items)
            return head * cls(tails=((a, m, s, power),))
        n = int(n)
        if n >= 0:
            return cls.binomials([(a + m * i, s, power) for i in range(n)])
        return cls.binomials([(a + m * (n + i), s, -power) for i in range(-n)])

    # -- algebra ------------------------------------------------------
    def __mul__(self, other: QProduct | int) -> QProduct:
        if isinstance(other, int):
            return QProduct(self.coeff * other, self.exp, self.factors, self.tails, self.poly)
        fac = dict(self.factors)
        for k, v in other.factors.items():
            fac[k] = fac.get(k, 0) + v
        poly = self.poly if other.poly == _ONE else (
            other.poly if self.poly == _ONE else self.poly * other.poly
        )
        return QProduct(
            self.coeff * other.coeff, self.exp + other.exp, fac, self.tails + other.tails, poly
        )

    __rmul__ = __mul__

    def inverse(self) -> QProduct:
        if self.coeff not in (1, -1):
            raise NonUnitLeading(f"cannot invert the constant {self.coeff}")
        p = self.poly
        if len(p.coeffs) != 1 or p.coeffs[0] not in (1, -1):
            raise NonUnitLeading("cannot invert a non-monomial polynomial part")
        return QProduct(
            self.coeff * p.coeffs[0],
            -self.exp - p.offset,
            {k: -v for k, v in self.factors.items()},
            tuple((a, m, s, -pw) for a, m, s, pw in self.tails),
        )

    def __truediv__(self, other: QProduct) -> QProduct:
        return self * other.inverse()

    def __pow__(self, k: int) -> QProduct:
        if k < 0:
            return self.inverse() ** (-k)
        out = QProduct()
        for _ in range(k):
            out = out * self
        return out

    # -- inspection ---------------------------------------------------
    def zero_multiplicity(self) -> int:
        return self.factors.get(ZERO_FACTOR, 0)

    def is_zero(self) -> bool:
        return self.coeff == 0 or self.poly.is_zero() or self.zero_multiplicity() > 0

    def valuation(self) -> int | float:
        if self.is_zero():
            return INF
        return self.exp + self.poly.offset

    def unit_core(self, length: int) -> list[int]:
        """Expansion of the binomial and tail factors alone, to ``length`` terms."""
        c = [1] + [0] * (length - 1) if length > 0 else []
        if length <= 0:
            return c
        for (t, s), mult in self.factors.items():
            if t == 0:
                continue
            if mult > 0:
                for _ in range(mult):
                    mul_binomial_inplace(c, t, s)
            else:
                for _ in range(-mult):
                    div_binomial_inplace(c, t, s)
        for a, m, s, pw in self.tails:
            t = a
            while t < length:
                if pw > 0:
                    for _ in range(pw):
                        mul_binomial_inplace(c, t, s)
                else:
                    for _ in range(-pw):
                        div_binomial_inplace(c, t, s)
                t += m
        return c

    def scalar(self) -> int:
        """``coeff`` times the power of two carried by ``(1 + q^0)`` factors."""
        k = self.factors.get(TWO_FACTOR, 0)
        if k >= 0:
            return self.coeff << k if self.coeff >= 0 else -((-self.coeff) << k)
        if self.coeff % (1 << -k):
            raise NonUnitLeading("an uncancelled factor (1 + q^0) = 2 sits in a denominator")
        return self.coeff // (1 << -k)

    def series(self, prec: int) -> LaurentSeries:
        """Expand exactly below ``prec``."""
        z = self.zero_multiplicity()
        if z < 0:
            raise ZeroSeries("division by the vanishing factor (1 - q^0)")
        if self.is_zero():
            return LaurentSeries.zero(prec)
        c = self.scalar()
        e = self.exp + self.poly.offset
        length = prec - e
        if length <= 0:
            return LaurentSeries.zero(prec)
        core = self.unit_core(length)
        if self.poly != _ONE:
            core = mul_truncated(core, self.poly.coeffs, length)
        if c != 1:
            core = [c * x for x in core]
        return LaurentSeries(e, core, prec)

    def __repr__(self) -> str:
        return (
            f"QProduct(coeff={self.coeff}, exp={self.exp}, factors={self.factors}, "
            f"tails={self.tails}, poly={self.poly!r})"
        )


_ONE = LaurentSeries.one()


@dataclass(frozen=True)
class PochhammerSpec:
    """``(sign * q**base_exp; q**step)_length``; ``length`` may be ``INFINITE``."""

    base_exp: int
    step: int
    length: int | float
    sign: int = 1

    def __post_init__(self):
        if self.step < 1:
            if self.length == INFINITE:
                raise IllFormedInfinite("an infinite product needs a positive step")
            raise ValueError("Pochhammer step must be positive")
        if self.length != INFINITE and self.length < 0:
            raise ValueError("PochhammerSpec length must be nonnegative or INFINITE")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def as_product(self) -> QProduct:
        return QProduct.poch(self.base_exp, self.step, self.length, self.sign)


def poch(spec: PochhammerSpec, prec: int) -> LaurentSeries:
    return spec.as_product().series(prec)


def poch_recip_guarded(base_exp: int, step: int, n: int, prec: int, sign: int = 1) -> LaurentSeries:
    """``1/(sign q**base_exp; q**step)_n``, and exactly zero for ``n < 0``."""
    if step < 1:
        raise ValueError("Pochhammer step must be positive")
    if n < 0:
        return LaurentSeries.zero(prec)
    return QProduct.poch(base_exp, step, n, sign, power=-1).series(prec)


def product_of(factors: Sequence[tuple[PochhammerSpec, int]]) -> QProduct:
    out = QProduct()
    for spec, power in factors:
        if power not in (1, -1):
            raise ValueError("factor power must be +1 or -1")
        out = out * QProduct.poch(spec.base_exp, spec.step, spec.length, spec.sign, power)
    return out


def product_side(factors: Sequence[tuple[PochhammerSpec, int]], prec: int) -> LaurentSeries:
    """``prod poch(spec) ** power`` over ``(spec, power)`` pairs, exact below ``prec``."""
    return product_of(factors).series(prec)


# ---------------------------------------------------------------------------
# hypergeometric term streams


def _stream_state(initial: QProduct, ratio: Callable[[int], QProduct], n_max: int):
    """Valuation bookkeeping for ``T_n = initial * ratio(1) * ... * ratio(n)``."""
    exps, zeros, ratios = [], [], []
    e = initial.exp + initial.poly.offset
    z = initial.zero_multiplicity()
    for n in range(n_max + 1):
        if n:
            r = ratio(n)
            if r.tails or len(r.poly.coeffs) != 1:
                raise ValueError("term ratios must be monomials times binomials")
            ratios.append(r)
            e += r.exp + r.poly.offset
            z += r.zero_multiplicity()
        exps.append(e)
        zeros.append(z)
    return exps, zeros, ratios


def hyperterms(
    initial: QProduct,
    ratio: Callable[[int], QProduct],
    prec: int,
    n_max: int,
    weight: Callable[[int], QProduct] | None = None,
) -> Iterator[tuple[int, LaurentSeries]]:
    """Yield ``(n, W_n T_n)`` exactly below ``prec`` for ``n = 0..n_max``.

    ``T_n`` is built incrementally from ``T_{n-1}`` by the binomial factors of
    ``ratio(n)``; ``weight(n)`` is an optional per-term factor that does not
    accumulate.
    """
    exps, zeros, ratios = _stream_state(initial, ratio, n_max)
    weights = [weight(n) for n in range(n_max + 1)] if weight else None
    wvals = [w.valuation() for w in weights] if weights else [0] * (n_max + 1)
    need = 0
    for n in range(n_max + 1):
        if zeros[n] < 0:
            raise ZeroSeries(f"term {n} divides by the vanishing factor (1 - q^0)")
        if zeros[n] == 0 and wvals[n] != INF:
            need = max(need, prec - exps[n] - wvals[n])
    core = initial.unit_core(need)
    coeff = initial.coeff
    twos = initial.factors.get(TWO_FACTOR, 0)
    poly = initial.poly
    for n in range(n_max + 1):
        if n:
            r = ratios[n - 1]
            for (t, s), mult in r.factors.items():
                if t == 0:
                    continue
                if mult > 0:
                    for _ in range(mult):
                        mul_binomial_inplace(core, t, s)
                else:
                    for _ in range(-mult):
                        div_binomial_inplace(core, t, s)
            coeff *= r.coeff * r.poly.coeffs[0]
            twos += r.factors.get(TWO_FACTOR, 0)
        if zeros[n] > 0 or (weights and weights[n].is_zero()):
            yield n, LaurentSeries.zero(prec)
            continue
        scale = QProduct(coeff, 0, {TWO_FACTOR: twos}).scalar()
        e = exps[n]
        wv = wvals[n]
        length = prec - e - wv
        if length <= 0:
            yield n, LaurentSeries.zero(prec)
            continue
        body = core[:length]
        if poly != _ONE:
            body = mul_truncated(body, poly.coeffs, length)
        term = LaurentSeries(e, [scale * x for x in body], prec - wv)
        if weights:
            term = (term * weights[n].series(prec - e)).truncate(prec)
        yield n, term


def stream_extent(
    initial: QProduct,
    ratio: Callable[[int], QProduct],
    prec: int,
    burn_in: int = 0,
    weight: Callable[[int], QProduct] | None = None,
    max_terms: int = 100_000,
) -> int:
    """Number of leading terms whose sum is exact below ``prec``.

    Past ``burn_in`` every new factor must have positive exponent; from then
    on term valuations must grow, otherwise :class:`DivergentTermOrder`.
    Summation stops at the first term past ``burn_in`` that lies at or above
    ``prec`` while valuations are increasing and not decelerating.
    """
    e = initial.exp + initial.poly.offset
    z = initial.zero_multiplicity()
    prev_v = None
    prev_d = None
    for n in range(max_terms):
        if n:
            r = ratio(n)
            e += r.exp + r.poly.offset
            z += r.zero_multiplicity()
        w = weight(n).valuation() if weight else 0
        v = e + (0 if w == INF else w)
        if n >= burn_in:
            if z > 0:
                return n
            d = None if prev_v is None else v - prev_v
            if d is not None and d <= 0:
                raise DivergentTermOrder(
                    f"term valuations stop increasing at n={n} (step {d}); no truncation bound"
                )
            if v >= prec and d is not None and (prev_d is None or d >= prev_d):
                return n
            prev_d = d
        prev_v = v
    raise DivergentTermOrder(f"no truncation bound found within {max_terms} terms")


def hypersum(
    initial: QProduct,
    ratio: Callable[[int], QProduct],
    prec: int,
    burn_in: int = 0,
    weight: Callable[[int], QProduct] | None = None,
) -> LaurentSeries:
    """``sum_n W_n T_n`` exactly below ``prec`` (see :func:`hyperterms`)."""
    n_stop = stream_extent(initial, ratio, prec, burn_in, weight)
    if n_stop == 0:
        return LaurentSeries.zero(prec)
    return ls_sum((t for _, t in hyperterms(initial, ratio, prec, n_stop - 1, weight)), prec)


# ---------------------------------------------------------------------------
# basic hypergeometric series

Param = "int | tuple[int, int] | None"


def as_param(p) -> tuple[int, int] | None:
    """Normalise a parameter to ``(sign, exponent)``; ``None`` is the parameter 0."""
    if p is None:
        return None
    if isinstance(p, int):
        return (1, p)
    s, e = p
    if s not in (1, -1):
        raise ValueError("parameter sign must be +1 or -1")
    return (s, e)


def phi(
    upper: Sequence,
    lower: Sequence,
    step: int,
    arg_exp: int,
    arg_sign: int,
    prec: int,
    prefactor: QProduct | None = None,
) -> LaurentSeries:
    """``prefactor * sum_n (upper; q^m)_n / (lower, q^m; q^m)_n (arg_sign q^arg_exp)^n``.

    Parameters are q-monomials: an int ``e`` for ``q**e``, a pair ``(s, e)``
    for ``s*q**e``, or ``None`` for a zero parameter.
    """
    if step < 1:
        raise ValueError("step must be positive")
    ups = [as_param(p) for p in upper]
    lows = [as_param(p) for p in lower]
    live_ups = [p for p in ups if p is not None]
    live_lows = [p for p in lows if p is not None]

    def first_zero(params):
        hits = [1 - e // step for s, e in params if s == 1 and e <= 0 and e % step == 0]
        return min(hits, default=None)

    nu, nl = first_zero(live_ups), first_zero(live_lows)
    if nl is not None and (nu is None or nl <= nu):
        # a vanishing lower factor not preceded by termination: 0/0 or x/0
        raise ZeroSeries(f"lower parameter makes term {nl} undefined")

    def ratio(n: int) -> QProduct:
        items = [(e + step * (n - 1), s, 1) for s, e in live_ups]
        items += [(e + step * (n - 1), s, -1) for s, e in live_lows]
        items.append((step * n, 1, -1))
        return QProduct.binomials(items) * QProduct.monomial(arg_exp, arg_sign)

    burn_in = 1
    for _, e in live_ups + live_lows:
        # first n whose new factor exponent e + step*(n-1) is positive
        burn_in = max(burn_in, 2 + max(0, -e) // step + 1)
    initial = prefactor if prefactor is not None else QProduct()
    return hypersum(initial, ratio, prec, burn_in)


def mul_params(*ps) -> tuple[int, int] | None:
    s, e = 1, 0
    for p in ps:
        p = as_param(p)
        if p is None:
            return None
        s *= p[0]
        e += p[1]
    return (s, e)


def inv_param(p) -> tuple[int, int]:
    s, e = as_param(p)
    return (s, -e)


def inf_poch(p, m: int = 1, power: int = 1) -> QProduct:
    """``(p; q^m)_oo ** power`` for a monomial parameter ``p``."""
    s, e = as_param(p)
    return QProduct.poch(e, m, INFINITE, s, power)


def euler_exp_sum(x, prec: int, m: int = 1) -> LaurentSeries:
    """``sum_n (-1)^n q^{m n(n-1)/2} x^n / (q^m;q^m)_n`` (the ``a -> oo`` limit form)."""
    s, e = as_param(x)

    def ratio(n: int) -> QProduct:
        return QProduct.binomial(m * n, 1, -1) * QProduct.monomial(m * (n - 1) + e, -s)

    return hypersum(QProduct(), ratio, prec, burn_in=1 + max(0, -e) // m + 1)


# ---------------------------------------------------------------------------
# classical identities at q-power specialisations

GRID = (-1, 0, 1, 2, 3, 5)


def _point(**kw) -> str:
    return ",".join(f"{k}={v}" for k, v in kw.items())


def _qbinomial(a, x, prec):
    lhs = phi([a], [], 1, x[1], x[0], prec)
    rhs = (inf_poch(mul_params(a, x)) * inf_poch(x, power=-1)).series(prec)
    return lhs, rhs


def _euler_first(x, prec):
    lhs = phi([None], [], 1, x[1], x[0], prec)
    return lhs, inf_poch(x, power=-1).series(prec)


def _euler_second(x, prec):
    return euler_exp_sum(x, prec), inf_poch(x).series(prec)


def _heine(a, b, c, x, prec):
    lhs = phi([a, b], [c], 1, x[1], x[0], prec)
    pre = inf_poch(b) * inf_poch(mul_params(a, x)) / (inf_poch(c) * inf_poch(x))
    rhs = phi(
        [mul_params(c, inv_param(b)), x], [mul_params(a, x)], 1, b[1], b[0], prec, prefactor=pre
    )
    return lhs, rhs


def _bailey_daum(a, b, prec):
    aq_b = mul_params(a, 1, inv_param(b))
    arg = mul_params((-1, 1), inv_param(b))
    lhs = phi([a, b], [aq_b], 1, arg[1], arg[0], prec)
    num = inf_poch(mul_params(a, 1), 2) * inf_poch(
        mul_params(a, 2, inv_param(b), inv_param(b)), 2
    ) * inf_poch(2, 2)
    den = inf_poch(arg) * inf_poch(aq_b) * inf_poch(1)
    return lhs, (num / den).series(prec)


def _hall(a, b, c, d, e, prec):
    z = mul_params(d, e, inv_param(a), inv_param(b), inv_param(c))
    de_ab = mul_params(d, e, inv_param(a), inv_param(b))
    de_bc = mul_params(d, e, inv_param(b), inv_param(c))
    lhs = phi([a, b, c], [d, e], 1, z[1], z[0], prec)
    pre = inf_poch(b) * inf_poch(de_ab) * inf_poch(de_bc) / (
        inf_poch(d) * inf_poch(e) * inf_poch(z)
    )
    rhs = phi(
        [mul_params(d, inv_param(b)), mul_params(e, inv_param(b)), z],
        [de_ab, de_bc],
        1,
        b[1],
        b[0],
        prec,
        prefactor=pre,
    )
    return lhs, rhs


def classical_grid(name: str) -> list[tuple[str, Callable[[int], tuple[LaurentSeries, LaurentSeries]]]]:
    """Grid points ``(label, build)`` for one classical identity.

    Every parameter runs over ``q**alpha`` with ``alpha`` in :data:`GRID`
    (and ``-q**alpha`` where a sign is natural).  Points where a side is
    undefined (a vanishing or non-unit denominator, or no formal convergence)
    are dropped by the caller.
    """
    pts = []
    if name == "qbinomial":
        for al in GRID:
            for xi in GRID:
                if xi >= 1:
                    pts.append((_point(a=al, x=xi), lambda P, al=al, xi=xi: _qbinomial((1, al), (1, xi), P)))
    elif name == "euler1":
        for xi in GRID:
            if xi >= 1:
                pts.append((_point(x=xi), lambda P, xi=xi: _euler_first((1, xi), P)))
    elif name == "euler2":
        for s in (1, -1):
            for xi in GRID:
                pts.append((_point(x=f"{'-' if s < 0 else ''}q^{xi}"), lambda P, s=s, xi=xi: _euler_second((s, xi), P)))
    elif name == "heine":
        for al in GRID:
            for be in GRID:
                for ga in GRID:
                    for xi in GRID:
                        if be >= 1 and xi >= 1:
                            pts.append(
                                (
                                    _point(a=al, b=be, c=ga, x=xi),
                                    lambda P, al=al, be=be, ga=ga, xi=xi: _heine(
                                        (1, al), (1, be), (1, ga), (1, xi), P
                                    ),
                                )
                            )
    elif name == "bailey-daum":
        for al in GRID:
            for sb in (1, -1):
                for be in GRID:
                    if be <= 0:
                        pts.append(
                            (
                                _point(a=al, b=f"{'-' if sb < 0 else ''}q^{be}"),
                                lambda P, al=al, sb=sb, be=be: _bailey_daum((1, al), (sb, be), P),
                            )
                        )
    elif name == "hall":
        for al in GRID:
            for be in GRID:
                for ga in GRID:
                    if ga < al or be < 1:
                        continue  # a <-> c symmetry; the transformed series needs |b| < 1
                    for de in GRID:
                        for ep in GRID:
                            if ep < de or de + ep - al - be - ga < 1:
                                continue  # d <-> e symmetry; |de/abc| < 1
                            pts.append(
                                (
                                    _point(a=al, b=be, c=ga, d=de, e=ep),
                                    lambda P, al=al, be=be, ga=ga, de=de, ep=ep: _hall(
                                        (1, al), (1, be), (1, ga), (1, de), (1, ep), P
                                    ),
                                )
                            )
    else:
        raise KeyError(name)
    return pts


CLASSICAL = ("qbinomial", "euler1", "euler2", "heine", "bailey-daum", "hall")


def check_classical(name: str, order: int):
    """Verify one classical identity at every admissible grid point.

    Returns ``(mismatch or None, checked, skipped)``.
    """
    from .report import first_mismatch

    checked = skipped = 0
    for label, build in classical_grid(name):
        try:
            lhs, rhs = build(order)
        except (ZeroSeries, NonUnitLeading, DivergentTermOrder):
            skipped += 1
            continue
        checked += 1
        m = first_mismatch(lhs, rhs, order, where=label)
        if m is not None:
            return m, checked, skipped
    return None, checked, skipped


def classical_checks(order: int):
    """One :class:`~qrv.report.VerificationReport` per classical identity."""
    from .report import VerificationReport, stopwatch

    reports = []
    for name in CLASSICAL:
        with stopwatch() as ms:
            m, checked, _ = check_classical(name, order)
            if checked == 0:
                raise RuntimeError(f"no admissible grid point for {name}")
        reports.append(
            VerificationReport(f"CLASSICAL:{name}", "classical", order, m is None, m, ms[0])
        )
    return reports


def partition_count_bound(prec: int) -> int:
    """Crude bound on the coefficient size of ``1/(q;q)_oo`` below ``prec``."""
    return math.ceil(math.exp(math.pi * math.sqrt(2 * max(prec, 1) / 3)))
