"""The identity catalog and the runner that checks it."""

from __future__ import annotations

import os
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import certificates as cert
from . import recurrences as rec
from .errors import BadParameter, UnknownIdentity
from .krseries import (
    J5,
    J8,
    J10_FAMILY,
    J11_FAMILY,
    H,
    H_STRUCTURE,
    H_at_1,
    HSeriesParams,
    J_at_1,
    j12,
    prop1_closed_product,
    prop1_rhs,
    prop2_at_1,
    sec5_lhs,
    sec5_triple,
    sec5_via_j,
    sec6_sum,
    thm2_rhs,
)
from .oracle import oracle_partitions
from .qfactor import CLASSICAL, INFINITE, QProduct, check_classical, phi
from .report import Mismatch, VerificationReport, first_mismatch, stopwatch
from .series import LaurentSeries, bv_eval_x1, bv_substitute, ls_shift

STATUSES = ("proved", "conjectural", "conjectural-external", "classical", "internal-crosscheck")

IDENTITY_ORDER = 200
CERTIFICATE_ORDER = 300
FE_ORDER = 150
RECURRENCE_NMAX = 40
RECURRENCE_ORDER = max(200, 6 * RECURRENCE_NMAX + 20)

Builder = Callable[[int], LaurentSeries]
# oracle convention: (residue, modulus, power[, sign]); positive power = denominator
Classes = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ProductSide:
    """``prefactor(q) * prod 1/(s q^r; q^m)_oo^power`` over ``classes``."""

    classes: Classes
    prefactor: tuple[tuple[int, int], ...] = ((0, 1),)

    def _pre(self) -> LaurentSeries:
        return LaurentSeries.from_dict(dict(self.prefactor))

    def series(self, order: int) -> LaurentSeries:
        pre = self._pre()
        q = QProduct()
        for cls in self.classes:
            r, m, power = cls[:3]
            s = cls[3] if len(cls) > 3 else 1
            q = q * QProduct.poch(r, m, INFINITE, s, power=-power)
        return (pre * q.series(order - pre.offset)).truncate(order)

    def oracle(self, order: int) -> LaurentSeries:
        pre = self._pre()
        return (pre * oracle_partitions(self.classes, order - pre.offset)).truncate(order)


@dataclass(frozen=True)
class IdentityRecord:
    id: str
    status: str
    lhs_builder: Builder | None
    rhs_builder: Builder | None
    default_order: int = IDENTITY_ORDER
    product: ProductSide | None = None
    checker: Callable[[int], Mismatch | None] | None = field(default=None, compare=False)
    description: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.checker is None and (self.lhs_builder is None or self.rhs_builder is None):
            raise ValueError("a record needs both builders or a checker")

    def check(self, order: int) -> Mismatch | None:
        if self.checker is not None:
            return self.checker(order)
        return first_mismatch(self.lhs_builder(order), self.rhs_builder(order), order)


def prod(*classes: Sequence[int], prefactor: dict[int, int] | None = None) -> ProductSide:
    pre = tuple(sorted((prefactor or {0: 1}).items()))
    return ProductSide(tuple(tuple(c) for c in classes), pre)


def neg_q(f: LaurentSeries) -> LaurentSeries:
    """``q -> -q``."""
    return LaurentSeries(
        f.offset, [c if (f.offset + i) % 2 == 0 else -c for i, c in enumerate(f.coeffs)], f.prec
    )


def term_sum(term: Callable[[int], QProduct], valuation: Callable[[int], int], order: int) -> LaurentSeries:
    """``sum_r term(r)`` where ``valuation(r)`` is a nondecreasing lower bound on each term."""
    acc = LaurentSeries.zero(order)
    r = 0
    while valuation(r) < order:
        acc = acc + term(r).series(order)
        r += 1
    return acc


# ---------------------------------------------------------------------------
# sum sides that only the catalog needs


def eqh1final_lhs(order: int) -> LaurentSeries:
    def term(r):
        num = QProduct.monomial(r * r + 2 * r, -1 if r % 2 else 1) * QProduct.poch(0, 6, r, -1)
        den = QProduct.poch(0, 1, 2 * r, -1) * QProduct.poch(2, 2, r, -1) * QProduct.poch(2, 2, r)
        return num / den

    return term_sum(term, lambda r: r * r + 2 * r, order)


def ms112_lhs(order: int) -> LaurentSeries:
    def term(r):
        num = QProduct.monomial(r * r + 2 * r) * QProduct.poch(0, 6, r, -1) * QProduct.poch(1, 2, r, -1)
        den = QProduct.poch(0, 2, r, -1) * QProduct.poch(2, 2, 2 * r)
        return num / den

    return term_sum(term, lambda r: r * r + 2 * r, order)


def ms130_lhs(order: int) -> LaurentSeries:
    def term(n):
        num = QProduct.monomial(n * n + 3 * n) * QProduct.poch(2, 2, n, -1) * QProduct.poch(3, 6, n)
        den = QProduct.poch(1, 2, n) * QProduct.poch(2, 2, 2 * n + 1)
        return QProduct.binomial(2) * num / den

    return term_sum(term, lambda n: n * n + 3 * n, order)


def kummer_side(upper: Sequence[int], lower: int) -> Builder:
    """``2phi1[q^u1, q^u2; q^lower; q^6, -q^5]``."""
    return lambda order: phi(list(upper), [lower], 6, 5, -1, order)


def _at1(builder) -> Builder:
    return lambda order: bv_eval_x1(builder(None, order))


def _h5_q2(order: int) -> LaurentSeries:
    return bv_eval_x1(bv_substitute(H(HSeriesParams.catalog(5), None, order), 2))


def _times(pq: QProduct, f: Builder) -> Builder:
    return lambda order: (pq.series(order) * f(order)).truncate(order)


def _shifted(f: Builder, e: int, scale: dict[int, int] | None = None) -> Builder:
    poly = LaurentSeries.from_dict(scale or {0: 1})

    def build(order):
        return (poly * ls_shift(f(order - e - poly.offset), e)).truncate(order)

    return build


def _sum(*fs: Builder) -> Builder:
    def build(order):
        acc = LaurentSeries.zero(order)
        for f in fs:
            acc = acc + f(order)
        return acc.truncate(order)

    return build


# ---------------------------------------------------------------------------
# the records

C_PRODUCTS: dict[int, ProductSide] = {
    1: prod((1, 12, 1), (4, 12, 1), (6, 12, 1), (8, 12, 1), (11, 12, 1)),
    2: prod((6, 12, -1), (2, 6, 1), (3, 6, 1), (4, 6, 1)),
    3: prod(*[(r, 12, 1) for r in (4, 5, 6, 7, 8)]),
    4: prod((1, 4, 1), (4, 12, 1), (11, 12, 1)),
    5: prod((1, 4, 1), (7, 12, 1), (8, 12, 1)),
    6: prod((3, 12, -1), (1, 4, 1), (2, 4, 1)),
    7: prod((9, 12, -1), (2, 4, 1), (3, 4, 1)),
    8: prod((3, 4, 1), (1, 12, 1), (8, 12, 1)),
    9: prod((3, 4, 1), (4, 12, 1), (5, 12, 1)),
    10: prod((1, 3, 1), (3, 12, 1), (6, 12, 1), (11, 12, 1)),
    11: prod((2, 3, 1), (3, 12, 1), (6, 12, 1), (7, 12, 1)),
}
CONJECTURAL_H = {4, 5, 8, 9}

EQH1FINAL_PRODUCT = prod((1, 2, -1), (2, 12, -1), (10, 12, -1), (12, 12, -1), (2, 2, 1), (1, 12, 1), (11, 12, 1))
MS112_PRODUCT = prod(
    (1, 2, -1, -1), (1, 12, -1), (11, 12, -1), (12, 12, -1), (10, 24, -1), (14, 24, -1), (2, 2, 1)
)
MS130_PRODUCT = prod(*[(r, 12, 1) for r in (4, 5, 6, 6, 7, 8, 10, 14)])
SEC5_PRODUCT = prod((2, 3, 1), (1, 12, 1), (6, 12, 1), (9, 12, 1))
SEC6_PRODUCT = prod((3, 4, 1), (4, 12, 1), (5, 12, 1), prefactor={-1: 1, 0: 1, 1: 1})
KUMMER_PRODUCTS = {
    10: prod((5, 12, -1), (9, 12, -1), (12, 12, -1), (5, 6, 1, -1), (4, 6, 1), (6, 6, 1)),
    11: prod((9, 12, -1), (13, 12, -1), (12, 12, -1), (5, 6, 1, -1), (8, 6, 1), (6, 6, 1)),
}


def remark_product(b: int) -> ProductSide:
    return prod((3 * b, 12, -1), (2, 4, 1), (b, 4, 1))


PROP1_TARGETS: dict[tuple[int, int], tuple[str, Builder]] = {
    (2, 3): ("H3(1)", lambda o: H_at_1(3, o)),
    (-1, 3): ("H4(1)", lambda o: H_at_1(4, o)),
    (3, 1): ("H5(q^2)", _h5_q2),
    (3, -1): ("J5(1)", _at1(J5)),
    (0, 1): ("H6(1)", lambda o: H_at_1(6, o)),
    (0, 3): ("H7(1)", lambda o: H_at_1(7, o)),
    (1, 3): ("H9(1)", lambda o: H_at_1(9, o)),
    (1, 1): ("J8(1)", _at1(J8)),
}
PROP2_TARGETS = {
    (-2, 4, 6): ("J10(1)", J10_FAMILY),
    (2, 6, 8): ("J11(1)", J11_FAMILY),
    (-2, 4, 8): ("J12,0(1)", j12(0)),
    (4, 8, 10): ("J12,2(1)", j12(2)),
}

# required instances of the recurrence families, as (family, 2c, d)
RECURRENCE_INSTANCES = (
    ("CD32", 5, 1),
    ("D0", -1, 0),
    ("D0", 2, 0),
    ("D0", 1, 0),
    ("D0", 0, 0),
    ("DM1", -4, -1),
    ("DM1", -1, -1),
)
# every (2c, d) pair that occurs for a catalogued series
CD_PAIRS = tuple(sorted({(tc, d) for tc, d, _ in H_STRUCTURE.values()} | {(-4, -2)}))


def _cfmt(two_c: int) -> str:
    return str(Fraction(two_c, 2))


def _from_report(fn: Callable[[int], VerificationReport]) -> Callable[[int], Mismatch | None]:
    return lambda order: fn(order).first_mismatch


def _classical_checker(name: str) -> Callable[[int], Mismatch | None]:
    def check(order):
        m, checked, _ = check_classical(name, order)
        if checked == 0:
            raise BadParameter(f"no admissible grid point for {name}")
        return m

    return check


def _eqh1_flip(order: int) -> Mismatch | None:
    m = first_mismatch(neg_q(ms112_lhs(order)), eqh1final_lhs(order), order, "sum sides")
    if m is None:
        m = first_mismatch(
            neg_q(MS112_PRODUCT.series(order)), EQH1FINAL_PRODUCT.series(order), order, "product sides"
        )
    return m


def _build_catalog() -> dict[str, IdentityRecord]:
    recs: list[IdentityRecord] = []
    add = recs.append

    for ell, p in C_PRODUCTS.items():
        add(
            IdentityRecord(
                f"C:H{ell}",
                "conjectural" if ell in CONJECTURAL_H else "proved",
                (lambda e: lambda o: H_at_1(e, o))(ell),
                p.series,
                product=p,
                description=f"H{ell}(1) equals its product",
            )
        )
    for ell in (4, 5, 8, 9):
        add(
            IdentityRecord(
                f"T:H{ell}",
                "proved",
                (lambda e: lambda o: thm2_rhs(f"H{e}", o))(ell),
                (lambda e: lambda o: H_at_1(e, o))(ell),
                description=f"single-sum form of H{ell}(1)",
            )
        )
    add(IdentityRecord("EqH1Final", "classical", eqh1final_lhs, EQH1FINAL_PRODUCT.series, product=EQH1FINAL_PRODUCT))
    add(IdentityRecord("MS1.12", "classical", ms112_lhs, MS112_PRODUCT.series, product=MS112_PRODUCT))
    add(IdentityRecord("EqH1Final:q->-q", "internal-crosscheck", None, None, checker=_eqh1_flip))
    add(IdentityRecord("MS1.30", "classical", ms130_lhs, MS130_PRODUCT.series, product=MS130_PRODUCT))
    for b in (1, 3):
        p = remark_product(b)
        add(
            IdentityRecord(
                f"REMARK-P1:b={b}",
                "proved",
                (lambda bb: lambda o: prop1_rhs(0, bb, o))(b),
                p.series,
                product=p,
            )
        )
        add(
            IdentityRecord(
                f"REMARK-P1:b={b}:closed",
                "internal-crosscheck",
                (lambda bb: lambda o: prop1_closed_product(bb, o))(b),
                p.series,
            )
        )
    for (a, b), (label, target) in PROP1_TARGETS.items():
        add(
            IdentityRecord(
                f"PROP1[a={a},b={b}]",
                "proved",
                (lambda aa, bb: lambda o: prop1_rhs(aa, bb, o))(a, b),
                target,
                description=f"single sum equals {label}",
            )
        )
    for (a, b, c), (label, fam) in PROP2_TARGETS.items():
        add(
            IdentityRecord(
                f"PROP2[a={a},b={b},c={c}]",
                "proved",
                (lambda aa, bb, cc: lambda o: prop2_at_1(aa, bb, cc, 1, 0, o))(a, b, c),
                (lambda f: lambda o: J_at_1(f, o))(fam),
                description=f"basic hypergeometric form of {label}",
            )
        )
    add(
        IdentityRecord(
            "H10:J10", "proved", lambda o: H_at_1(10, o), _times(QProduct.poch(1, 1, INFINITE, -1), lambda o: J_at_1(J10_FAMILY, o))
        )
    )
    add(
        IdentityRecord(
            "H11:J11", "proved", lambda o: H_at_1(11, o), _times(QProduct.poch(2, 1, INFINITE, -1), lambda o: J_at_1(J11_FAMILY, o))
        )
    )
    add(IdentityRecord("H10:kummer", "classical", kummer_side((-1, 1), 4), KUMMER_PRODUCTS[10].series, product=KUMMER_PRODUCTS[10]))
    add(IdentityRecord("H11:kummer", "classical", kummer_side((3, 1), 8), KUMMER_PRODUCTS[11].series, product=KUMMER_PRODUCTS[11]))
    five = QProduct.poch(5, 6, INFINITE, -1)
    add(IdentityRecord("SEC5:J12,0", "proved", lambda o: J_at_1(j12(0), o), _times(five, kummer_side((-1, 3), 4))))
    add(IdentityRecord("SEC5:J12,2", "proved", lambda o: J_at_1(j12(2), o), _times(five, kummer_side((3, 5), 10))))
    add(IdentityRecord("SEC5", "conjectural", sec5_lhs, SEC5_PRODUCT.series, product=SEC5_PRODUCT))
    add(IdentityRecord("SEC5:routes", "internal-crosscheck", sec5_triple, sec5_via_j))
    add(IdentityRecord("SEC6", "conjectural", _at1(sec6_sum), SEC6_PRODUCT.series, product=SEC6_PRODUCT))
    add(
        IdentityRecord(
            "SEC6:H9", "internal-crosscheck", _at1(sec6_sum), _shifted(lambda o: H_at_1(9, o), -1, {0: 1, 1: 1, 2: 1})
        )
    )
    add(
        IdentityRecord(
            "J8:H8",
            "internal-crosscheck",
            lambda o: H_at_1(8, o),
            _sum(_at1(J8), _shifted(lambda o: H_at_1(9, o), 1)),
        )
    )
    add(
        IdentityRecord(
            "J5:H5", "internal-crosscheck", lambda o: H_at_1(5, o), _sum(_at1(J5), _shifted(_h5_q2, 3))
        )
    )
    for name in CLASSICAL:
        add(IdentityRecord(f"CLASSICAL:{name}", "classical", None, None, checker=_classical_checker(name)))

    n = RECURRENCE_NMAX
    for fam, tc, d in RECURRENCE_INSTANCES:
        tag = f"[c={_cfmt(tc)},d={d}]"
        add(
            IdentityRecord(
                f"REC:{fam}{tag}",
                "proved",
                None,
                None,
                RECURRENCE_ORDER,
                checker=(lambda f, t, dd: _from_report(lambda o: rec.check_h_recurrence(f, t, dd, n, o)))(fam, tc, d),
            )
        )
        add(
            IdentityRecord(
                f"REC:LONG{tag}",
                "proved",
                None,
                None,
                RECURRENCE_ORDER,
                checker=(lambda t, dd: _from_report(lambda o: rec.check_h_recurrence("LONG", t, dd, n, o)))(tc, d),
            )
        )
        add(
            IdentityRecord(
                f"SHIFT:{fam}{tag}",
                "proved",
                None,
                None,
                RECURRENCE_ORDER,
                checker=(lambda f, t, dd: _from_report(lambda o: rec.check_shift_closure(f, t, dd, n, o)))(fam, tc, d),
            )
        )
    for tc, d in CD_PAIRS:
        add(
            IdentityRecord(
                f"REL:[c={_cfmt(tc)},d={d}]",
                "proved",
                None,
                None,
                RECURRENCE_ORDER,
                checker=(lambda t, dd: _from_report(lambda o: rec.check_basic_relations(t, dd, n, o)))(tc, d),
            )
        )
    for which in list(rec.H_BRIDGES) + list(rec.J_BRIDGES):
        add(
            IdentityRecord(
                f"EQV:{which}",
                "proved",
                None,
                None,
                RECURRENCE_ORDER,
                checker=(lambda w: _from_report(lambda o: rec.check_equivalence_reduction(w, n, o)))(which),
            )
        )
    for name in rec.FUNCTIONAL_EQUATIONS:
        add(
            IdentityRecord(
                f"FE:{name}",
                "proved",
                None,
                None,
                FE_ORDER,
                checker=(lambda nm: _from_report(lambda o: rec.check_functional_equation(nm, None, o)))(name),
            )
        )
    for fam in cert.PAIRS:
        add(
            IdentityRecord(
                f"WZ:{fam}",
                "proved",
                None,
                None,
                CERTIFICATE_ORDER,
                checker=(lambda f: _from_report(lambda o: cert.check_telescoping(f, 30, 30, o)))(fam),
            )
        )
        add(
            IdentityRecord(
                f"WZSUM:{fam}",
                "proved",
                None,
                None,
                CERTIFICATE_ORDER,
                checker=(lambda f: _from_report(lambda o: cert.check_summed_recurrence(f, 30, o)))(fam),
            )
        )

    out: dict[str, IdentityRecord] = {}
    for r in recs:
        if r.id in out:
            raise ValueError(f"duplicate identity id {r.id}")
        out[r.id] = r
    return out


CATALOG: dict[str, IdentityRecord] = _build_catalog()


def default_order(record: IdentityRecord) -> int:
    env = os.environ.get("QRV_DEFAULT_ORDER")
    if env:
        try:
            value = int(env)
        except ValueError as exc:
            raise BadParameter(f"QRV_DEFAULT_ORDER must be an integer, got {env!r}") from exc
        if value < 1:
            raise BadParameter("QRV_DEFAULT_ORDER must be at least 1")
        return value
    return record.default_order


def get(id: str) -> IdentityRecord:
    try:
        return CATALOG[id]
    except KeyError:
        raise UnknownIdentity(id) from None


def run(id: str, order: int | None = None) -> VerificationReport:
    record = get(id)
    if order is None:
        order = default_order(record)
    if order < 1:
        raise BadParameter("order must be at least 1")
    with stopwatch() as ms:
        m = record.check(order)
    return VerificationReport(record.id, record.status, order, m is None, m, ms[0])


def _run_one(args: tuple[str, int | None]) -> VerificationReport:
    return run(*args)


def run_all(order_override: int | None = None, jobs: int = 1, ids: Sequence[str] | None = None) -> list[VerificationReport]:
    """Check every record (or ``ids``); reports come back in catalog order."""
    ids = list(CATALOG) if ids is None else list(ids)
    for i in ids:
        get(i)
    work = [(i, order_override) for i in ids]
    if jobs <= 1:
        return [_run_one(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_one, work))


def oracle_mismatch(record: IdentityRecord, order: int) -> Mismatch | None:
    """Compare a record's product side with the partition oracle."""
    if record.product is None:
        return None
    return first_mismatch(record.product.series(order), record.product.oracle(order), order, "oracle")


def product_records() -> list[IdentityRecord]:
    return [r for r in CATALOG.values() if r.product is not None]
