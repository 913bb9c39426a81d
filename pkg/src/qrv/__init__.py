"""Exact q-series engine and verifier for Rogers-Ramanujan type identities modulo 12."""

from .errors import (
    BadParameter,
    DivergentTermOrder,
    IllFormedInfinite,
    NonUnitLeading,
    ParameterMismatch,
    SeriesError,
    UnknownIdentity,
    ZeroSeries,
)
from .series import INF, BivariateSeries, LaurentSeries

__all__ = [
    "INF",
    "BadParameter",
    "BivariateSeries",
    "DivergentTermOrder",
    "IllFormedInfinite",
    "LaurentSeries",
    "NonUnitLeading",
    "ParameterMismatch",
    "SeriesError",
    "UnknownIdentity",
    "ZeroSeries",
]
