"""
Command-line front end.

Exit codes: 0 success (or every verification cell passed), 1 verification
mismatch, 2 usage or precondition error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from math import isqrt
from typing import Optional, Sequence

from .errors import FrobeniusError, NotCoprimeError
from .genfrob import beck_kifer_g, g_search, g_two_var, Method
from .repcount import IntTuple, count_representations
from .tables import TABLE_NAMES, build_table
from .triangular import (
    Parity,
    check_bound,
    closed_params,
    difference_case,
    g_difference_closed,
    g_reduced_closed,
    g_triangular_closed,
    n_bound,
    triangular_triple,
    xy_pair,
)
from .verify import GridSpec, Suite, run_grid

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

SUITE_CHOICES = {
    "main": {Suite.MAIN},
    "reduced": {Suite.REDUCED, Suite.EXACT_COUNT},
    "diff": {Suite.DIFFERENCES},
    "tables": {Suite.TABLES},
    "corollary": {Suite.COROLLARY},
    "remark": {Suite.REMARK},
    "twovar": {Suite.TWO_VAR},
    "beckkifer": {Suite.BECK_KIFER},
}
SUITE_CHOICES["all"] = set().union(*SUITE_CHOICES.values())


def parse_tuple(text: str) -> IntTuple:
    try:
        elems = [int(part) for part in text.split(",") if part.strip()]
        return IntTuple(elems)
    except NotCoprimeError as exc:
        raise argparse.ArgumentTypeError(f"tuple must have gcd 1: {exc}")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated positive integers (at least two), got {text!r}: {exc}"
        )


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trifrob",
        description="Representation counts and generalized Frobenius numbers.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def fmt(p, choices=("text", "json", "csv"), default="text"):
        p.add_argument("--format", choices=choices, default=default)

    p = sub.add_parser("count", help="d(N; A)")
    p.add_argument("--n", type=nonneg_int, required=True)
    p.add_argument("--tuple", type=parse_tuple, required=True)
    p.add_argument("--cap", type=positive_int)
    fmt(p)

    p = sub.add_parser("g", help="g(A; S)")
    p.add_argument("--tuple", type=parse_tuple, required=True)
    p.add_argument("--s", type=nonneg_int, required=True)
    p.add_argument("--method", choices=("auto", "oracle", "closed"), default="auto")
    p.add_argument("--cap", type=positive_int)
    fmt(p)

    p = sub.add_parser("tri", help="closed form for g(t_N, t_N+1, t_N+2; S)")
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--s", type=nonneg_int, required=True)
    p.add_argument("--bound-mode", choices=("strict", "relaxed"), default="strict")
    fmt(p)

    p = sub.add_parser("diff", help="g(...; S+1) - g(...; S) for triangular triples")
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--s", type=nonneg_int, required=True)
    fmt(p)

    p = sub.add_parser("tables", help="emit the parameter tables")
    p.add_argument("--which", choices=TABLE_NAMES, required=True)
    p.add_argument("--s-max", type=nonneg_int)
    fmt(p, default="csv")

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=sorted(SUITE_CHOICES), default="all")
    p.add_argument("--s-max", type=nonneg_int, default=5)
    p.add_argument("--n-max", type=positive_int, default=15)
    p.add_argument("--bound-mode", choices=("strict", "relaxed"), default="strict")
    p.add_argument("--jobs", type=positive_int, default=1)
    p.add_argument("--cap", type=positive_int)
    p.add_argument("--probe", action="store_true", help="also probe the main formula below its bound")
    p.add_argument("--show", choices=("failures", "all", "none"), default="failures")
    fmt(p, choices=("text", "json"))
    return parser


def _emit(record: dict, fmt: str, out) -> None:
    """Write a flat result record; in text mode the first field goes on its own line."""
    if fmt == "json":
        out.write(json.dumps(record, indent=2, sort_keys=True) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        flat = {k: v for k, v in record.items() if not isinstance(v, (list, dict))}
        writer.writerow(flat.keys())
        writer.writerow(flat.values())
        out.write(buf.getvalue())
    else:
        items = iter(record.items())
        _, first = next(items)
        out.write(f"{first}\n")
        for key, value in items:
            if not isinstance(value, (list, dict)):
                out.write(f"{key}: {value}\n")


def _triangular_index(A: IntTuple) -> Optional[int]:
    if len(A) != 3:
        return None
    n = (isqrt(8 * A[0] + 1) - 1) // 2
    if n >= 1 and triangular_triple(n) == A.elements:
        return n
    return None


def _closed_g(A: IntTuple, s: int) -> Optional[tuple[int, Method]]:
    if len(A) == 2:
        return g_two_var(A[0], A[1], s), Method.CLOSED_TWO_VAR
    n = _triangular_index(A)
    if n is not None:
        try:
            check_bound(n, s, strict=True)
        except FrobeniusError:
            return None
        return beck_kifer_g(A, s, lambda _reduced, s_: g_reduced_closed(n, s_)), Method.BECK_KIFER
    return None


def _cmd_count(args, out) -> int:
    value = count_representations(args.n, args.tuple, args.cap)
    _emit({"count": value, "n": args.n, "tuple": ",".join(map(str, args.tuple))}, args.format, out)
    return EXIT_OK


def _cmd_g(args, out) -> int:
    A, s = args.tuple, args.s
    record = {"g": None, "s": s, "tuple": ",".join(map(str, A))}
    closed = None if args.method == "oracle" else _closed_g(A, s)
    if closed is not None:
        record["g"], method = closed
        record["method"] = method.value
    elif args.method == "closed":
        raise FrobeniusError(f"no closed form applies to {A.elements} with s = {s}")
    else:
        res = g_search(A, s, args.cap)
        record["g"] = res.value
        record["method"] = res.method.value
        record["witness_window"] = [list(p) for p in res.witness_window]
    _emit(record, args.format, out)
    return EXIT_OK


def _cmd_tri(args, out) -> int:
    n, s = args.n, args.s
    parity = Parity.of(n)
    value = g_triangular_closed(n, s, strict=args.bound_mode == "strict")
    p = closed_params(s)
    xy = xy_pair(s, parity)
    record = {
        "g": value,
        "n": n,
        "s": s,
        "triple": ",".join(map(str, triangular_triple(n))),
        "parity": parity.value,
        "q": p.q,
        "c": p.c,
        "delta": p.delta,
        "x": xy.x,
        "y": xy.y,
        "N": n_bound(s, parity),
        "bound_mode": args.bound_mode,
    }
    _emit(record, args.format, out)
    return EXIT_OK


def _cmd_diff(args, out) -> int:
    n, s = args.n, args.s
    value = g_difference_closed(n, s)
    record = {"difference": value, "n": n, "s": s, "case": difference_case(n, s)}
    _emit(record, args.format, out)
    return EXIT_OK


def _cmd_tables(args, out) -> int:
    table = build_table(args.which, args.s_max)
    out.write({"csv": table.to_csv, "json": table.to_json, "text": table.to_text}[args.format]())
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    spec = GridSpec(
        s_min=0,
        s_max=args.s_max,
        n_min=2,
        n_max=max(args.n_max, 2),
        bound_mode=args.bound_mode,
        suites=frozenset(SUITE_CHOICES[args.suite]),
        probe=args.probe,
    )
    report = run_grid(spec, jobs=args.jobs, cap=args.cap)
    out.write(report.to_json() if args.format == "json" else report.to_text(args.show))
    return EXIT_OK if report.ok else EXIT_MISMATCH


COMMANDS = {
    "count": _cmd_count,
    "g": _cmd_g,
    "tri": _cmd_tri,
    "diff": _cmd_diff,
    "tables": _cmd_tables,
    "verify": _cmd_verify,
}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.subcommand](args, out)
    except (FrobeniusError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
