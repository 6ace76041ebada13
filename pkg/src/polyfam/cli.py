"""Command-line front end: family values, coefficient tables, polynomial
coefficients, and identity verification sweeps.

Output is one JSON record per line by default (keys sorted, so identical
invocations produce identical bytes) or CSV with a header row. Rationals are
always rendered exactly as "p/q" (the denominator omitted when 1); the
--decimals option adds a clearly separate "approx" field, never replacing the
exact value.

Exit codes: 0 success; 1 verification found a failing identity in the
selected mode; 2 flag/parse errors; 3 precondition violations.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import Polynomial, PreconditionError, Rat
from .bernoulli import mp_bernoulli, mp_bernoulli_poly
from .cauchy import (
    FamilyPoint,
    mp_first_def,
    mp_poly_first,
    mp_poly_second,
    mp_second_def,
)
from .harness import (
    FAIL,
    GridSpec,
    IDENTITY_IDS,
    errata_ledger,
    point_to_json,
    sweep,
)
from .stirling import (
    comtet_first,
    comtet_second,
    lah_signed,
    noncentral_first,
    noncentral_second,
    signless_comtet_first,
    stirling_first,
    stirling_second,
)

NUMBER_FAMILIES = (
    "mp-cauchy-1",
    "mp-cauchy-2",
    "mp-bernoulli",
    "poly-cauchy-1",
    "poly-cauchy-2",
    "poly-bernoulli",
    "cauchy-1",
    "cauchy-2",
)

TABLE_FAMILIES = {
    "comtet-1": (comtet_first, True),
    "comtet-2": (comtet_second, True),
    "signless-comtet-1": (signless_comtet_first, True),
    "stirling-1": (stirling_first, False),
    "stirling-2": (stirling_second, False),
    "lah": (lah_signed, False),
    "noncentral-1": (noncentral_first, True),
    "noncentral-2": (noncentral_second, True),
}


def _rational(text: str) -> Rat:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(
            f"not a rational number: {text!r} (use 'p/q' or an integer)"
        )


def _rational_list(text: str) -> tuple[Rat, ...]:
    if not text:
        return ()
    return tuple(_rational(part) for part in text.split(","))


def _ids_list(text: str) -> tuple[str, ...]:
    if text == "all":
        return IDENTITY_IDS
    ids = tuple(part for part in text.split(",") if part)
    unknown = [i for i in ids if i not in IDENTITY_IDS]
    if unknown:
        raise argparse.ArgumentTypeError(
            f"unknown identity ids: {', '.join(unknown)}"
        )
    return ids


def _approx(value: Rat, places: int) -> str:
    """Round-half-even decimal rendering with exactly `places` digits."""
    scaled = round(value * Fraction(10) ** places)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**places)
    if places == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{str(frac).zfill(places)}"


class _Emitter:
    """Streams records as JSON lines or CSV rows with a fixed column order."""

    def __init__(self, fmt: str, columns: Sequence[str]):
        self.fmt = fmt
        self.columns = list(columns)
        self._csv = None

    def emit(self, record: dict) -> None:
        if self.fmt == "json":
            print(json.dumps(record, sort_keys=True))
            return
        if self._csv is None:
            self._csv = csv.writer(sys.stdout, lineterminator="\n")
            self._csv.writerow(self.columns)
        row = []
        for column in self.columns:
            value = record.get(column, "")
            if isinstance(value, (dict, list)):
                value = json.dumps(value, sort_keys=True, separators=(",", ":"))
            row.append(value)
        self._csv.writerow(row)


def _render(value) -> object:
    if isinstance(value, Polynomial):
        return [str(c) for c in value.coeffs]
    if isinstance(value, (list, tuple)):
        return [str(v) for v in value]
    return str(value)


def _approx_of(value, places: int) -> object:
    if isinstance(value, Polynomial):
        return [_approx(c, places) for c in value.coeffs]
    if isinstance(value, (list, tuple)):
        return [_approx(v, places) for v in value]
    return _approx(value, places)


def _build_point(args, n: int) -> FamilyPoint:
    if args.alpha is not None:
        alpha = args.alpha
    elif args.q is not None:
        alpha = tuple(Fraction(i) * args.q for i in range(n))
    else:
        alpha = tuple(Fraction(i) for i in range(n))
    k = 1 if args.family in ("cauchy-1", "cauchy-2") else args.k
    lengths = args.lengths if args.lengths is not None else (Fraction(1),) * k
    return FamilyPoint(n, k, alpha, lengths)


def _family_params(args, point: FamilyPoint) -> dict:
    params = {
        "n": str(point.n),
        "k": str(point.k),
        "alpha": ",".join(str(a) for a in point.alpha),
        "lengths": ",".join(str(l) for l in point.lengths),
    }
    if args.q is not None:
        params["q"] = str(args.q)
    return params


def _number_value(family: str, point: FamilyPoint, mode: str) -> Rat:
    if family in ("mp-cauchy-1", "poly-cauchy-1", "cauchy-1"):
        return mp_first_def(point)
    if family in ("mp-cauchy-2", "poly-cauchy-2", "cauchy-2"):
        return mp_second_def(point)
    return mp_bernoulli(point, convention=mode)


def _poly_value(family: str, point: FamilyPoint, mode: str) -> Polynomial:
    if family in ("mp-cauchy-1", "poly-cauchy-1", "cauchy-1"):
        return mp_poly_first(point)
    if family in ("mp-cauchy-2", "poly-cauchy-2", "cauchy-2"):
        return mp_poly_second(point)
    return mp_bernoulli_poly(point, convention=mode)


def _cmd_number(args) -> int:
    point = _build_point(args, args.n)
    value = _number_value(args.family, point, args.mode)
    record = {
        "family": args.family,
        "params": _family_params(args, point),
        "value": _render(value),
        "mode": args.mode,
    }
    columns = ["family", "params", "value", "mode"]
    if args.decimals is not None:
        record["approx"] = _approx_of(value, args.decimals)
        columns.append("approx")
    _Emitter(args.format, columns).emit(record)
    return 0


def _cmd_poly(args) -> int:
    point = _build_point(args, args.n)
    poly = _poly_value(args.family, point, args.mode)
    value = poly(args.z) if args.z is not None else poly
    record = {
        "family": args.family,
        "params": _family_params(args, point),
        "value": _render(value),
        "mode": args.mode,
    }
    if args.z is not None:
        record["params"]["z"] = str(args.z)
    columns = ["family", "params", "value", "mode"]
    if args.decimals is not None:
        record["approx"] = _approx_of(value, args.decimals)
        columns.append("approx")
    _Emitter(args.format, columns).emit(record)
    return 0


def _cmd_table(args) -> int:
    build, needs_alpha = TABLE_FAMILIES[args.family]
    if needs_alpha:
        if args.alpha is not None:
            alpha = args.alpha
        elif args.q is not None:
            alpha = tuple(Fraction(i) * args.q for i in range(args.n_max))
        else:
            raise PreconditionError(
                f"table family {args.family!r} needs --alpha or --q"
            )
        table = build(alpha, args.n_max)
        base_params = {"alpha": ",".join(str(a) for a in alpha)}
    else:
        table = build(args.n_max)
        base_params = {}
    columns = ["family", "params", "value", "mode"]
    emitter = _Emitter(args.format, columns)
    for n in range(args.n_max + 1):
        params = dict(base_params)
        params["n"] = str(n)
        emitter.emit(
            {
                "family": args.family,
                "params": params,
                "value": [str(c) for c in table.row(n)],
                "mode": "corrected",
            }
        )
    return 0


def _cmd_verify(args) -> int:
    grid = GridSpec(
        n_max=args.n_max,
        k_max=args.k_max,
        points=args.points,
        series_order=args.order,
    )
    reports = sweep(ids=args.ids, grid=grid, seed=args.seed)
    if args.errata:
        ledger = errata_ledger(reports)
        if args.format == "json":
            print(json.dumps(ledger, sort_keys=True))
        else:
            columns = [
                "identity",
                "statement",
                "corrected_reading",
                "verbatim_failures",
                "points_checked",
                "counterexample",
            ]
            emitter = _Emitter("csv", columns)
            for entry in ledger["entries"]:
                emitter.emit(entry)
            if not ledger["entries"]:
                emitter.emit({})
    else:
        columns = ["identity", "point", "verbatim", "corrected", "note"]
        emitter = _Emitter(args.format, columns)
        for report in reports:
            emitter.emit(
                {
                    "identity": report.identity,
                    "point": point_to_json(report.point),
                    "verbatim": report.verbatim,
                    "corrected": report.corrected,
                    "note": report.note,
                }
            )
    verdicts = [
        report.corrected if args.mode == "corrected" else report.verbatim
        for report in reports
    ]
    return 1 if FAIL in verdicts else 0


def _add_family_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--n", type=int, required=True, help="family index n >= 0")
    sub.add_argument("--k", type=int, default=1, help="number of integrations")
    group = sub.add_mutually_exclusive_group()
    group.add_argument(
        "--alpha",
        type=_rational_list,
        default=None,
        help="comma list of rational parameters (default: 0,1,...,n-1)",
    )
    group.add_argument(
        "--q",
        type=_rational,
        default=None,
        help="q-parameter sugar: sets alpha to 0,q,...,(n-1)q",
    )
    sub.add_argument(
        "--lengths",
        type=_rational_list,
        default=None,
        help="comma list of k nonzero box lengths (default: all 1)",
    )
    sub.add_argument(
        "--mode",
        choices=("corrected", "verbatim"),
        default="corrected",
        help="summation convention for Bernoulli-type families",
    )


def _add_output_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--format", choices=("json", "csv"), default="json", help="output format"
    )
    sub.add_argument(
        "--decimals",
        type=int,
        default=None,
        metavar="D",
        help="also print a rounded decimal approximation with D places",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyfam",
        description=(
            "Exact computation of multiparameter Cauchy- and Bernoulli-type "
            "families and mechanical verification of their identity catalog."
        ),
    )
    commands = parser.add_subparsers(dest="command", required=True)

    number = commands.add_parser(
        "number", help="compute one family value exactly"
    )
    number.add_argument("family", choices=NUMBER_FAMILIES)
    _add_family_flags(number)
    _add_output_flags(number)
    number.set_defaults(handler=_cmd_number)

    poly = commands.add_parser(
        "poly", help="compute one polynomial family member (coefficients)"
    )
    poly.add_argument("family", choices=NUMBER_FAMILIES)
    _add_family_flags(poly)
    poly.add_argument(
        "--z", type=_rational, default=None, help="evaluate at z instead"
    )
    _add_output_flags(poly)
    poly.set_defaults(handler=_cmd_poly)

    table = commands.add_parser(
        "table", help="emit the rows of a connection-coefficient triangle"
    )
    table.add_argument("family", choices=sorted(TABLE_FAMILIES))
    table.add_argument("--n-max", type=int, default=5, help="last row to emit")
    group = table.add_mutually_exclusive_group()
    group.add_argument("--alpha", type=_rational_list, default=None)
    group.add_argument("--q", type=_rational, default=None)
    _add_output_flags(table)
    table.set_defaults(handler=_cmd_table)

    verify = commands.add_parser(
        "verify", help="verify the identity catalog over a parameter sweep"
    )
    verify.add_argument(
        "--ids",
        type=_ids_list,
        default=IDENTITY_IDS,
        help="comma list of identity ids, or 'all'",
    )
    verify.add_argument("--n-max", type=int, default=5)
    verify.add_argument("--k-max", type=int, default=2)
    verify.add_argument(
        "--points", type=int, default=10, help="random points per identity"
    )
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument(
        "--order", type=int, default=6, help="series truncation order"
    )
    verify.add_argument(
        "--mode",
        choices=("corrected", "verbatim"),
        default="corrected",
        help="which verdict column drives the exit status",
    )
    verify.add_argument(
        "--errata",
        action="store_true",
        help="emit the errata ledger instead of the report stream",
    )
    verify.add_argument("--format", choices=("json", "csv"), default="json")
    verify.set_defaults(handler=_cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
