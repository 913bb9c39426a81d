"""Verification reports and coefficient-by-coefficient comparison."""

from __future__ import annotations

import json
import time
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import asdict, dataclass

from .errors import SeriesError
from .series import LaurentSeries

STATUSES = ("proved", "conjectural", "conjectural-external", "classical", "internal-crosscheck")


class InsufficientPrecision(SeriesError):
    """A builder returned a series known to less than the requested order."""


@dataclass(frozen=True)
class Mismatch:
    exp: int
    lhs: int
    rhs: int
    where: str | None = None


@dataclass(frozen=True)
class VerificationReport:
    id: str
    status: str
    order: int
    passed: bool
    first_mismatch: Mismatch | None
    elapsed_ms: int

    def __post_init__(self):
        if self.passed != (self.first_mismatch is None):
            raise ValueError("a report passes exactly when it has no mismatch")

    def to_dict(self) -> dict:
        d = asdict(self)
        m = d["first_mismatch"]
        if m is not None:
            m["lhs"] = str(m["lhs"])
            m["rhs"] = str(m["rhs"])
            if m["where"] is None:
                del m["where"]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> VerificationReport:
        m = d.get("first_mismatch")
        mismatch = None
        if m is not None:
            mismatch = Mismatch(int(m["exp"]), int(m["lhs"]), int(m["rhs"]), m.get("where"))
        return cls(
            id=d["id"],
            status=d["status"],
            order=int(d["order"]),
            passed=bool(d["passed"]),
            first_mismatch=mismatch,
            elapsed_ms=int(d["elapsed_ms"]),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def text_line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        line = f"{verdict}  {self.id:<28} {self.status:<20} order={self.order}"
        if self.first_mismatch is not None:
            m = self.first_mismatch
            line += f"  first mismatch at q^{m.exp}: lhs={m.lhs} rhs={m.rhs}"
            if m.where:
                line += f" [{m.where}]"
        return line


def first_mismatch(
    lhs: LaurentSeries, rhs: LaurentSeries, order: int, where: str | None = None
) -> Mismatch | None:
    """Lowest exponent below ``order`` where the two series differ.

    Raises :class:`InsufficientPrecision` when either side is known to less
    than ``order``, so a truncation can never pass for equality.
    """
    if lhs.prec < order or rhs.prec < order:
        raise InsufficientPrecision(
            f"need order {order}, have lhs prec {lhs.prec} and rhs prec {rhs.prec}"
        )
    diff = (lhs - rhs).truncate(order)
    if diff.is_zero():
        return None
    e = diff.offset
    return Mismatch(e, lhs.coefficient(e), rhs.coefficient(e), where)


@contextmanager
def stopwatch() -> Iterator[list[int]]:
    box = [0]
    start = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = int(round((time.perf_counter() - start) * 1000))


def combine(id: str, status: str, order: int, mismatches, elapsed_ms: int) -> VerificationReport:
    """Report for a sweep: passes when every cell passed, else keeps the first failure."""
    first = next((m for m in mismatches if m is not None), None)
    return VerificationReport(id, status, order, first is None, first, elapsed_ms)
