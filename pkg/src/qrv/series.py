"""Truncated formal Laurent series in q with exact integer coefficients.

A :class:`LaurentSeries` stores the coefficients of ``q**offset``,
``q**(offset+1)``, ... and a precision ``prec``: every coefficient of an
exponent strictly below ``prec`` is known, nothing at or above it is.  Exact
Laurent polynomials carry ``prec == INF``.

:class:`BivariateSeries` is a polynomial in ``x`` whose coefficients are
Laurent series in ``q``; it is used to state and check q-difference
equations such as ``F(x) = (1 + x q) F(x q**2) + ...``.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping, Sequence
from types import MappingProxyType

from .errors import NonUnitLeading, ZeroSeries

INF = math.inf

# below this length the schoolbook product is faster than Kronecker packing
_KRONECKER_MIN = 24


def _mul_schoolbook(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    m = min(n, len(a) + len(b) - 1)
    res = [0] * m
    lb = len(b)
    for i, x in enumerate(a):
        if i >= m:
            break
        if not x:
            continue
        lim = min(lb, m - i)
        for j in range(lim):
            res[i + j] += x * b[j]
    return res


def _pack(coeffs: Sequence[int], width: int) -> int:
    pos = b"".join(c.to_bytes(width, "little") if c > 0 else bytes(width) for c in coeffs)
    neg = b"".join((-c).to_bytes(width, "little") if c < 0 else bytes(width) for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _mul_kronecker(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    m = min(n, len(a) + len(b) - 1)
    bits = (
        max(abs(x) for x in a).bit_length()
        + max(abs(x) for x in b).bit_length()
        + min(len(a), len(b)).bit_length()
        + 2
    )
    width = (bits + 7) // 8
    prod = _pack(a, width) * _pack(b, width)
    half = 1 << (8 * width - 1)
    bias = int.from_bytes((bytes(width - 1) + b"\x80") * m, "little")
    raw = ((prod + bias) & ((1 << (8 * width * m)) - 1)).to_bytes(width * m, "little")
    return [
        int.from_bytes(raw[i : i + width], "little") - half
        for i in range(0, width * m, width)
    ]


def mul_truncated(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """First ``n`` coefficients of the product of two dense coefficient lists."""
    if n <= 0 or not a or not b:
        return []
    a = a[:n]
    b = b[:n]
    if min(len(a), len(b)) < _KRONECKER_MIN:
        return _mul_schoolbook(a, b, n)
    return _mul_kronecker(a, b, n)


def _inverse_unit(u: Sequence[int], n: int) -> list[int]:
    # Newton iteration b <- b (2 - u b); u[0] is +1 or -1 so b[0] = u[0]
    b = [u[0]]
    length = 1
    while length < n:
        length = min(2 * length, n)
        e = mul_truncated(u[:length], b, length)
        e = [-c for c in e] + [0] * (length - len(e))
        e[0] += 2
        b = mul_truncated(b, e, length)
        b += [0] * (length - len(b))
    return b[:n]


def mul_binomial_inplace(c: list[int], t: int, s: int) -> None:
    """``c <- c * (1 - s q**t)`` truncated to ``len(c)``; requires ``t > 0``."""
    n = len(c)
    if t >= n:
        return
    if s == 1:
        c[t:] = [x - y for x, y in zip(c[t:], c[: n - t])]
    else:
        c[t:] = [x + y for x, y in zip(c[t:], c[: n - t])]


def div_binomial_inplace(c: list[int], t: int, s: int) -> None:
    """``c <- c / (1 - s q**t)`` truncated to ``len(c)``; requires ``t > 0``."""
    n = len(c)
    for start in range(t, n, t):
        stop = min(start + t, n)
        prev = c[start - t : stop - t]
        if s == 1:
            c[start:stop] = [x + y for x, y in zip(c[start:stop], prev)]
        else:
            c[start:stop] = [x - y for x, y in zip(c[start:stop], prev)]


class LaurentSeries:
    """Immutable truncated Laurent series ``sum c_i q**(offset+i)`` known below ``prec``."""

    __slots__ = ("offset", "coeffs", "prec")

    offset: int
    coeffs: tuple[int, ...]
    prec: int | float

    def __init__(self, offset: int, coeffs: Iterable[int], prec: int | float = INF):
        cs = list(coeffs)
        if prec != INF:
            if prec != int(prec):
                raise ValueError("precision must be an integer or INF")
            prec = int(prec)
            del cs[max(0, prec - offset) :]
        lo = 0
        while lo < len(cs) and cs[lo] == 0:
            lo += 1
        hi = len(cs)
        while hi > lo and cs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            object.__setattr__(self, "offset", 0)
            object.__setattr__(self, "coeffs", ())
        else:
            object.__setattr__(self, "offset", offset + lo)
            object.__setattr__(self, "coeffs", tuple(cs[lo:hi]))
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, prec: int | float = INF) -> LaurentSeries:
        return cls(0, (), prec)

    @classmethod
    def one(cls, prec: int | float = INF) -> LaurentSeries:
        return cls(0, (1,), prec)

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1, prec: int | float = INF) -> LaurentSeries:
        return cls(exp, (coeff,), prec)

    @classmethod
    def from_dict(cls, terms: Mapping[int, int], prec: int | float = INF) -> LaurentSeries:
        """Build from ``{exponent: coefficient}``."""
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return cls.zero(prec)
        lo, hi = min(terms), max(terms)
        return cls(lo, (terms.get(e, 0) for e in range(lo, hi + 1)), prec)

    # -- inspection ---------------------------------------------------
    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self.coeffs

    def is_exact(self) -> bool:
        return self.prec == INF

    def valuation(self) -> int | float:
        """Lowest exponent with a nonzero coefficient; ``prec`` for a zero series."""
        return self.offset if self.coeffs else self.prec

    def degree(self) -> int | float:
        return self.offset + len(self.coeffs) - 1 if self.coeffs else -INF

    def coefficient(self, exp: int) -> int:
        if exp >= self.prec:
            raise ValueError(f"coefficient of q^{exp} is beyond precision {self.prec}")
        i = exp - self.offset
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def items(self) -> Iterable[tuple[int, int]]:
        """Nonzero ``(exponent, coefficient)`` pairs in increasing order."""
        return ((self.offset + i, c) for i, c in enumerate(self.coeffs) if c)

    def dense(self, start: int, stop: int) -> list[int]:
        """Coefficients of ``q**start .. q**(stop-1)`` (zeros outside the support)."""
        out = [0] * max(0, stop - start)
        for i, c in enumerate(self.coeffs):
            k = self.offset + i - start
            if 0 <= k < len(out):
                out[k] = c
        return out

    def truncate(self, prec: int | float) -> LaurentSeries:
        """Forget everything at and above ``prec`` (never raises precision)."""
        if prec >= self.prec:
            return self
        return LaurentSeries(self.offset, self.coeffs, prec)

    # -- arithmetic ---------------------------------------------------
    def __neg__(self) -> LaurentSeries:
        return LaurentSeries(self.offset, (-c for c in self.coeffs), self.prec)

    def __add__(self, other: LaurentSeries | int) -> LaurentSeries:
        return ls_add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other: LaurentSeries | int) -> LaurentSeries:
        return ls_add(self, -_coerce(other))

    def __rsub__(self, other: LaurentSeries | int) -> LaurentSeries:
        return ls_add(_coerce(other), -self)

    def __mul__(self, other: LaurentSeries | int) -> LaurentSeries:
        if isinstance(other, int):
            return LaurentSeries(self.offset, (c * other for c in self.coeffs), self.prec)
        return ls_mul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.offset, self.coeffs, self.prec) == (other.offset, other.coeffs, other.prec)

    def __hash__(self) -> int:
        return hash((self.offset, self.coeffs, self.prec))

    def __repr__(self) -> str:
        terms = []
        for e, c in self.items():
            if len(terms) == 8:
                terms.append("...")
                break
            terms.append(f"{c}*q^{e}" if e else str(c))
        body = " + ".join(terms) if terms else "0"
        tail = "" if self.prec == INF else f" + O(q^{self.prec})"
        return f"LaurentSeries({body}{tail})"


def _coerce(x: LaurentSeries | int) -> LaurentSeries:
    if isinstance(x, LaurentSeries):
        return x
    return LaurentSeries(0, (x,))


def ls_add(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    prec = min(a.prec, b.prec)
    if not a.coeffs:
        return b.truncate(prec)
    if not b.coeffs:
        return a.truncate(prec)
    lo = min(a.offset, b.offset)
    hi = max(a.offset + len(a.coeffs), b.offset + len(b.coeffs))
    if prec != INF:
        hi = min(hi, int(prec))
    if hi <= lo:
        return LaurentSeries.zero(prec)
    out = [0] * (hi - lo)
    for s in (a, b):
        base = s.offset - lo
        for i, c in enumerate(s.coeffs):
            if base + i >= len(out):
                break
            out[base + i] += c
    return LaurentSeries(lo, out, prec)


def ls_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    va, vb = a.valuation(), b.valuation()
    prec = min(a.prec + vb, b.prec + va)
    if not a.coeffs or not b.coeffs:
        return LaurentSeries.zero(prec)
    off = a.offset + b.offset
    n = len(a.coeffs) + len(b.coeffs) - 1
    if prec != INF:
        n = min(n, int(prec) - off)
    return LaurentSeries(off, mul_truncated(a.coeffs, b.coeffs, n), prec)


def ls_inv(a: LaurentSeries, prec: int | float | None = None) -> LaurentSeries:
    """Multiplicative inverse; ``prec`` caps (and for exact input, sets) the result precision."""
    if not a.coeffs:
        raise ZeroSeries("cannot invert a series that is zero below its precision")
    if a.coeffs[0] not in (1, -1):
        raise NonUnitLeading(f"lowest coefficient {a.coeffs[0]} is not a unit")
    v = a.offset
    target = a.prec - 2 * v
    if prec is not None:
        target = min(target, prec)
    if target == INF:
        raise ValueError("inverse of an exact series needs a finite precision")
    n = int(target) + v
    if n <= 0:
        return LaurentSeries.zero(target)
    return LaurentSeries(-v, _inverse_unit(a.coeffs[:n], n), target)


def ls_shift(a: LaurentSeries, m: int) -> LaurentSeries:
    """Multiply by ``q**m``."""
    return LaurentSeries(a.offset + m, a.coeffs, a.prec + m)


def ls_sum(terms: Iterable[LaurentSeries], prec: int | float = INF) -> LaurentSeries:
    """Sum many series with one dense accumulator, truncated at ``prec``."""
    acc: dict[int, int] = {}
    p = prec
    for t in terms:
        p = min(p, t.prec)
        for i, c in enumerate(t.coeffs):
            e = t.offset + i
            if e >= p:
                break
            acc[e] = acc.get(e, 0) + c
    return LaurentSeries.from_dict(acc, p)


class BivariateSeries:
    """``sum_N F_N(q) x**N`` trusted for ``N <= xcap`` and q-exponents below ``qprec``."""

    __slots__ = ("components", "xcap", "qprec")

    components: Mapping[int, LaurentSeries]
    xcap: int | float
    qprec: int | float

    def __init__(
        self,
        components: Mapping[int, LaurentSeries],
        xcap: int | float,
        qprec: int | float = INF,
    ):
        comps = {}
        for n, f in components.items():
            if n < 0:
                raise ValueError("x-exponents must be nonnegative")
            if n > xcap:
                continue
            f = f.truncate(qprec) if f.prec > qprec else f
            if f.prec < qprec:
                raise ValueError(f"component x^{n} has prec {f.prec} < qprec {qprec}")
            if f.coeffs:
                comps[n] = f
        object.__setattr__(self, "components", MappingProxyType(dict(sorted(comps.items()))))
        object.__setattr__(self, "xcap", xcap)
        object.__setattr__(self, "qprec", qprec)

    def __setattr__(self, name, value):
        raise AttributeError("BivariateSeries is immutable")

    @classmethod
    def from_terms(
        cls, terms: Mapping[tuple[int, int], int], xcap: int | float = INF
    ) -> BivariateSeries:
        """Exact polynomial from ``{(x_exponent, q_exponent): coefficient}``."""
        by_x: dict[int, dict[int, int]] = {}
        for (n, e), c in terms.items():
            by_x.setdefault(n, {})
            by_x[n][e] = by_x[n].get(e, 0) + c
        return cls({n: LaurentSeries.from_dict(d) for n, d in by_x.items()}, xcap)

    @classmethod
    def constant(cls, f: LaurentSeries, xcap: int | float = INF) -> BivariateSeries:
        return cls({0: f}, xcap, f.prec)

    def component(self, n: int) -> LaurentSeries:
        if n > self.xcap:
            raise ValueError(f"x^{n} is beyond the x-cap {self.xcap}")
        return self.components.get(n, LaurentSeries.zero(self.qprec))

    def max_xdegree(self) -> int:
        return max(self.components, default=-1)

    def truncate(self, xcap: int | float | None = None, qprec: int | float | None = None):
        xcap = self.xcap if xcap is None else min(xcap, self.xcap)
        qprec = self.qprec if qprec is None else min(qprec, self.qprec)
        return BivariateSeries(self.components, xcap, qprec)

    def __add__(self, other: BivariateSeries) -> BivariateSeries:
        xcap = min(self.xcap, other.xcap)
        qprec = min(self.qprec, other.qprec)
        keys = set(self.components) | set(other.components)
        comps = {}
        for n in keys:
            if n > xcap:
                continue
            comps[n] = (
                self.components.get(n, LaurentSeries.zero(self.qprec))
                + other.components.get(n, LaurentSeries.zero(other.qprec))
            ).truncate(qprec)
        return BivariateSeries(comps, xcap, qprec)

    def __neg__(self) -> BivariateSeries:
        return BivariateSeries({n: -f for n, f in self.components.items()}, self.xcap, self.qprec)

    def __sub__(self, other: BivariateSeries) -> BivariateSeries:
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return (dict(self.components), self.xcap, self.qprec) == (
            dict(other.components),
            other.xcap,
            other.qprec,
        )

    def __repr__(self) -> str:
        parts = ", ".join(f"x^{n}: {f!r}" for n, f in list(self.components.items())[:4])
        return f"BivariateSeries({{{parts}}}, xcap={self.xcap}, qprec={self.qprec})"


def bv_substitute(f: BivariateSeries, m: int) -> BivariateSeries:
    """``F(x) -> F(x q**m)``: component ``N`` is multiplied by ``q**(m N)``."""
    if m < 0:
        raise ValueError("substitution shift must be nonnegative")
    comps = {n: ls_shift(c, m * n) for n, c in f.components.items()}
    return BivariateSeries(comps, f.xcap, f.qprec)


def bv_mul_poly(f: BivariateSeries, p: BivariateSeries) -> BivariateSeries:
    """Product with a polynomial in ``x``; components beyond the joint cap are dropped."""
    xcap = min(f.xcap, p.xcap)
    fmin = min((c.valuation() for c in f.components.values()), default=f.qprec)
    pmin = min((c.valuation() for c in p.components.values()), default=p.qprec)
    qprec = min(f.qprec + pmin, p.qprec + fmin)
    acc: dict[int, LaurentSeries] = {}
    for i, a in f.components.items():
        for j, b in p.components.items():
            n = i + j
            if n > xcap:
                continue
            t = ls_mul(a, b)
            acc[n] = t if n not in acc else acc[n] + t
    return BivariateSeries({n: c.truncate(qprec) for n, c in acc.items()}, xcap, qprec)


def bv_eval_x1(f: BivariateSeries) -> LaurentSeries:
    """Set ``x = 1``.  The caller guarantees that components beyond ``xcap`` vanish below ``qprec``."""
    return ls_sum(f.components.values(), f.qprec)
