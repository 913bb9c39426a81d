"""Command-line interface: ``qrv list | run | recur | wz | oracle``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import catalog
from .certificates import PAIRS, check_summed_recurrence, check_telescoping, check_vanishing_tail
from .errors import BadParameter, ParameterMismatch, UnknownIdentity
from .oracle import oracle_partitions, parse_classes
from .recurrences import FAMILIES, check_h_recurrence

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _nonnegative(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _half_integer(text: str) -> int:
    """Parse ``c`` (``"5/2"``, ``"-1"``, ``"0.5"``) and return ``2c``."""
    try:
        c = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad value for c: {text!r}") from None
    two_c = 2 * c
    if two_c.denominator != 1:
        raise argparse.ArgumentTypeError("c must be a multiple of 1/2")
    return int(two_c)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qrv", description="Exact verification of q-series identities.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("list", help="print the catalog with statuses")

    r = sub.add_parser("run", help="check catalogued identities")
    which = r.add_mutually_exclusive_group(required=True)
    which.add_argument("--id", action="append", help="identity id (repeatable)")
    which.add_argument("--all", action="store_true")
    r.add_argument("--order", type=_positive)
    r.add_argument("--jobs", type=_positive, default=1)
    r.add_argument("--format", choices=("text", "json"), default="text")
    r.add_argument("--out", help="also write the JSON report to this path")

    c = sub.add_parser("recur", help="check a recurrence family for h_{c,d,N}")
    c.add_argument("--family", choices=FAMILIES, required=True)
    c.add_argument("--c", dest="two_c", type=_half_integer, required=True)
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--nmax", type=_nonnegative, default=catalog.RECURRENCE_NMAX)
    c.add_argument("--order", type=_positive)
    c.add_argument("--format", choices=("text", "json"), default="text")

    w = sub.add_parser("wz", help="check a telescoping certificate")
    w.add_argument("--family", choices=sorted(PAIRS), required=True)
    w.add_argument("--kmax", type=_nonnegative, default=30)
    w.add_argument("--mmax", type=_nonnegative, default=30)
    w.add_argument("--order", type=_positive, default=catalog.CERTIFICATE_ORDER)
    w.add_argument("--format", choices=("text", "json"), default="text")

    o = sub.add_parser("oracle", help="count partitions into parts from residue classes")
    o.add_argument("--classes", required=True, help='e.g. "1:5,4:5" or "6:12:-1,2:6"')
    o.add_argument("--limit", type=_nonnegative, required=True)
    o.add_argument("--format", choices=("text", "json"), default="text")
    return p


def _emit(reports, fmt: str, out: str | None = None) -> int:
    if fmt == "json":
        print(json.dumps([r.to_dict() for r in reports], sort_keys=True, indent=2))
    else:
        for r in reports:
            print(r.text_line())
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            json.dump([r.to_dict() for r in reports], fh, sort_keys=True, indent=2)
            fh.write("\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_MISMATCH


def _cmd_list(args) -> int:
    for rec in catalog.CATALOG.values():
        print(f"{rec.id:<36} {rec.status:<20} default_order={catalog.default_order(rec)}")
    return EXIT_OK


def _cmd_run(args) -> int:
    if args.all:
        reports = catalog.run_all(args.order, args.jobs)
    else:
        for i in args.id:
            catalog.get(i)
        reports = catalog.run_all(args.order, args.jobs, ids=args.id)
    return _emit(reports, args.format, args.out)


def _cmd_recur(args) -> int:
    order = args.order or max(catalog.RECURRENCE_ORDER, 6 * args.nmax + 20)
    return _emit([check_h_recurrence(args.family, args.two_c, args.d, args.nmax, order)], args.format)


def _cmd_wz(args) -> int:
    reports = [
        check_telescoping(args.family, args.kmax, args.mmax, args.order),
        check_summed_recurrence(args.family, args.mmax, args.order),
    ]
    reports += [check_vanishing_tail(args.family, M, None, args.order) for M in range(args.mmax + 1)]
    return _emit(reports, args.format)


def _cmd_oracle(args) -> int:
    series = oracle_partitions(parse_classes(args.classes), args.limit)
    coeffs = [series.coefficient(n) for n in range(args.limit)]
    if args.format == "json":
        print(json.dumps({"classes": args.classes, "limit": args.limit, "coefficients": [str(c) for c in coeffs]}))
    else:
        print(" ".join(str(c) for c in coeffs))
    return EXIT_OK


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--c -1/2`` into ``--c=-1/2``; argparse would take ``-1/2`` for an option."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok in ("--c", "--d") and nxt and nxt.startswith("-") and nxt[1:2].isdigit():
            out.append(f"{tok}={nxt}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


COMMANDS = {"list": _cmd_list, "run": _cmd_run, "recur": _cmd_recur, "wz": _cmd_wz, "oracle": _cmd_oracle}


def main(argv: list[str] | None = None) -> int:
    try:
        argv = sys.argv[1:] if argv is None else list(argv)
        args = build_parser().parse_args(_glue_negative_values(argv))
        return COMMANDS[args.command](args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except UnknownIdentity as exc:
        print(f"qrv: unknown identity {exc.args[0]!r}", file=sys.stderr)
        return EXIT_USAGE
    except (BadParameter, ParameterMismatch) as exc:
        print(f"qrv: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
