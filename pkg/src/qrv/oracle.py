"""Product sides counted directly as partitions into parts from residue classes.

No series division happens here.  A denominator factor ``1/(1 - s q^p)``
allows part ``p`` any number of times (weight ``s`` per copy) and is applied
with an ascending in-place sweep.  A numerator factor ``(1 - s q^p)`` allows
the part at most once with sign ``-s`` and is applied with a descending
sweep, the usual distinct-parts sieve.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from .errors import BadParameter
from .series import LaurentSeries

PartClass = tuple[int, ...]


def _normalise(cls: Sequence[int]) -> tuple[int, int, int, int]:
    """``(residue, modulus[, power[, arg_sign]])`` with power defaulting to 1."""
    if len(cls) == 2:
        r, m = cls
        power, s = 1, 1
    elif len(cls) == 3:
        r, m, power = cls
        s = 1
    elif len(cls) == 4:
        r, m, power, s = cls
    else:
        raise BadParameter(f"bad part class {cls!r}")
    if m < 1:
        raise BadParameter("moduli must be at least 1")
    if r < 1:
        raise BadParameter("residues must be positive part sizes")
    if s not in (1, -1):
        raise BadParameter("argument sign must be +1 or -1")
    return r, m, power, s


def oracle_partitions(classes: Iterable[Sequence[int]], limit: int) -> LaurentSeries:
    """``prod 1/(s q^r; q^m)_oo^power`` over ``classes``, exact below ``limit``.

    Each class is ``(r, m)``, ``(r, m, power)`` or ``(r, m, power, s)``.
    Positive ``power`` means the class sits in the denominator (parts may
    repeat), negative means the numerator (distinct parts, signed).
    """
    if limit < 0:
        raise BadParameter("limit must be nonnegative")
    c = [0] * limit
    if limit:
        c[0] = 1
    for cls in classes:
        r, m, power, s = _normalise(cls)
        for p in range(r, limit, m):
            for _ in range(abs(power)):
                if power > 0:
                    for n in range(p, limit):
                        c[n] += s * c[n - p]
                else:
                    for n in range(limit - 1, p - 1, -1):
                        c[n] -= s * c[n - p]
    return LaurentSeries(0, c, limit)


def parse_classes(spec: str) -> list[tuple[int, ...]]:
    """Parse ``"1:5,4:5"`` or ``"6:12:-1,2:6"`` into class tuples."""
    out = []
    spec = spec.strip()
    if not spec:
        return out
    for item in spec.split(","):
        parts = item.strip().split(":")
        try:
            nums = tuple(int(x) for x in parts)
        except ValueError as exc:
            raise BadParameter(f"bad class {item!r}") from exc
        _normalise(nums)
        out.append(nums)
    return out
