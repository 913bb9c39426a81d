"""Exception hierarchy shared by every layer of the engine."""


class SeriesError(ArithmeticError):
    """Base class for failures of exact series arithmetic."""


class NonUnitLeading(SeriesError):
    """The lowest coefficient is not +1 or -1, so no integer inverse exists."""


class ZeroSeries(SeriesError):
    """Attempted to invert a series that is zero below its precision."""


class IllFormedInfinite(SeriesError, ValueError):
    """An infinite q-product would need infinitely many nonpositive exponents."""


class DivergentTermOrder(SeriesError):
    """Term valuations of a series do not grow, so no truncation bound exists."""


class BadParameter(ValueError):
    pass


class ParameterMismatch(ValueError):
    pass


class UnknownIdentity(KeyError):
    pass
