"""Hypothesis strategies for small truncated Laurent series."""

from hypothesis import strategies as st

from qrv.series import INF, LaurentSeries

small_ints = st.integers(-6, 6)


@st.composite
def series(draw, max_len=14, big=False):
    offset = draw(st.integers(-4, 4))
    ints = st.integers(-(10**12), 10**12) if big else small_ints
    coeffs = draw(st.lists(ints, max_size=max_len))
    exact = draw(st.booleans())
    prec = INF if exact else offset + len(coeffs) + draw(st.integers(-2, 6))
    return LaurentSeries(offset, coeffs, prec)


@st.composite
def unit_series(draw):
    offset = draw(st.integers(-3, 3))
    lead = draw(st.sampled_from([1, -1]))
    rest = draw(st.lists(small_ints, max_size=12))
    prec = offset + 1 + len(rest) + draw(st.integers(0, 8))
    return LaurentSeries(offset, [lead, *rest], prec)


def agree(x, y):
    p = min(x.prec, y.prec)
    return x.truncate(p) == y.truncate(p)
