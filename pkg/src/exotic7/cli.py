"""Command-line interface: ``exotic7 {invariants,dedekind,search}``.

stdout carries a JSON output document (or CSV for search tables), stderr
carries diagnostics.  Exit codes: 0 success, 2 invalid input, 3 undefined
invariant requested, 4 internal consistency failure.
"""

from __future__ import annotations

import argparse
import re
import sys
from typing import Optional, Sequence

import mpmath

from .cyclotomic import format_rational
from .dedekind import DedekindArgs, dedekind_sum_exact, dedekind_sum_numeric
from .errors import ConsistencyError, InvalidInput, InvalidParams, UndefinedInvariant
from .invariants import invariant_report, validate
from .search import PARAM_NAMES, SearchSpec, corollary_table, default_jobs, run_search
from . import serialize

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_UNDEFINED = 3
EXIT_INTERNAL = 4

_VALUE_FLAGS = frozenset(
    {"--a", "--b", "-q", "-p", "--mode", "--precision", "--format", "--jobs",
     "--filter", "--target-classes", "--limit", "--corollary-table"}
    | {f"--{name}" for name in PARAM_NAMES}
)
_NEGATIVE_VALUE = re.compile(r"^-\d")


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    """Attach values like ``-3,-3,1`` to their flag so argparse does not
    mistake them for options."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in _VALUE_FLAGS and i + 1 < len(argv) and _NEGATIVE_VALUE.match(argv[i + 1]):
            sep = "=" if token.startswith("--") else ""
            out.append(f"{token}{sep}{argv[i + 1]}")
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def _int_list(text: str, length: Optional[int] = None) -> list[int]:
    try:
        values = [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if length is not None and len(values) != length:
        raise argparse.ArgumentTypeError(f"expected {length} comma-separated integers, got {text!r}")
    return values


def _triple(text: str) -> list[int]:
    return _int_list(text, 3)


def _class_list(text: str) -> list[int]:
    return _int_list(text)


def _int_range(text: str) -> tuple[int, int]:
    match = re.fullmatch(r"\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?", text)
    if match is None:
        raise argparse.ArgumentTypeError(f"expected LO..HI or a single integer, got {text!r}")
    lo = int(match.group(1))
    hi = int(match.group(2)) if match.group(2) is not None else lo
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exotic7",
        description="Exact invariants of the 2-connected 7-manifolds M_{a,b}.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=_positive_int, default=None,
                        help="worker processes (default: $EXOTIC7_JOBS or 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    inv = sub.add_parser("invariants", parents=[common],
                         help="n, m, cohomology, orbifold data, mu and sphere class")
    inv.add_argument("--a", type=_triple, required=True, metavar="A1,A2,A3")
    inv.add_argument("--b", type=_triple, required=True, metavar="B1,B2,B3")
    inv.add_argument("--format", choices=["json"], default="json")
    inv.add_argument("--require-mu", action="store_true",
                     help="exit 3 when n = 0 and mu is undefined")

    ded = sub.add_parser("dedekind", parents=[common], help="generalized Dedekind sum D(q; p1, p2, p3)")
    ded.add_argument("-q", type=int, required=True)
    ded.add_argument("-p", type=_triple, required=True, metavar="P1,P2,P3")
    ded.add_argument("--mode", choices=["exact", "numeric", "both"], default="exact")
    ded.add_argument("--precision", type=int, default=80, help="bits for the numeric evaluation")
    ded.add_argument("--format", choices=["json"], default="json")

    srch = sub.add_parser("search", parents=[common], help="scan a parameter box for homotopy spheres")
    for name in PARAM_NAMES:
        srch.add_argument(f"--{name}", type=_int_range, default=None, metavar="LO..HI")
    srch.add_argument("--filter", choices=["sphere", "nonzero"], action="append", default=[])
    srch.add_argument("--target-classes", type=_class_list, default=None, metavar="K,K,...")
    srch.add_argument("--limit", type=_positive_int, default=None)
    srch.add_argument("--corollary-table", type=_int_range, default=None, metavar="RMIN..RMAX",
                      help="tabulate 28 mu along a = (-3,-3,1), b = (1,4r+1,4r+1)")
    srch.add_argument("--format", choices=["json", "csv"], default="json")
    return parser


def _echo(args: argparse.Namespace) -> dict:
    echo = {"name": args.command}
    for key, value in sorted(vars(args).items()):
        # worker count never changes the output, so it is not echoed
        if key in ("command", "jobs"):
            continue
        if isinstance(value, tuple):
            value = list(value)
        echo[key] = value
    return echo


def _cmd_invariants(args) -> tuple[dict, list, int]:
    params = validate(args.a, args.b)
    report = invariant_report(params)
    warnings = []
    code = EXIT_OK
    if report.n == 0:
        warnings.append("n = 0: H^3 = H^4 = Z and the Eells-Kuiper invariant is not defined")
        if args.require_mu:
            code = EXIT_UNDEFINED
    elif not report.classification.is_homotopy_sphere:
        warnings.append(
            f"|n| = {abs(report.n)} > 1: not a homotopy sphere; no diffeomorphism class is claimed"
        )
    return serialize.invariants_payload(report), warnings, code


def _cmd_dedekind(args) -> tuple[dict, list, int]:
    dargs = DedekindArgs(args.q, *args.p)
    payload = {"kind": "dedekind", "q": args.q, "p": list(args.p), "mode": args.mode,
               "exact": None, "numeric": None, "abs_diff": None}
    exact = numeric = None
    if args.mode in ("exact", "both"):
        exact = dedekind_sum_exact(dargs)
        payload["exact"] = format_rational(exact)
    if args.mode in ("numeric", "both"):
        numeric = dedekind_sum_numeric(dargs, precision=max(args.precision, 64))
        payload["numeric"] = mpmath.nstr(numeric, 25)
    if exact is not None and numeric is not None:
        with mpmath.workprec(max(args.precision, 64)):
            diff = abs(numeric - mpmath.mpf(exact.numerator) / exact.denominator)
        payload["abs_diff"] = float(diff)
    return payload, [], EXIT_OK


def _cmd_search(args, out_format: str) -> tuple[object, list, int]:
    targets = None if args.target_classes is None else {k % 28 for k in args.target_classes}
    if args.corollary_table is not None:
        lo, hi = args.corollary_table
        rows = corollary_table(range(lo, hi + 1))
        shown = rows if targets is None else [row for row in rows if row[1] in targets]
        if out_format == "csv":
            return serialize.table_csv(shown), [], EXIT_OK
        return serialize.table_payload(shown, targets), [], EXIT_OK

    spec = SearchSpec(
        ranges={name: getattr(args, name) for name in PARAM_NAMES if getattr(args, name) is not None},
        require_sphere="sphere" in args.filter,
        require_nonzero="nonzero" in args.filter,
        target_classes=targets,
        limit=args.limit,
    )
    result = run_search(spec, jobs=args.jobs if args.jobs is not None else default_jobs())
    warnings = []
    code = EXIT_OK
    if result.stats.errors:
        warnings.append(f"{result.stats.errors} entries failed internal consistency checks")
        code = EXIT_INTERNAL
    if out_format == "csv":
        return serialize.search_csv(result), warnings, code
    return serialize.search_payload(spec, result), warnings, code


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(_glue_negative_values(argv))
    command = _echo(args)
    out_format = getattr(args, "format", "json")
    try:
        if args.command == "invariants":
            payload, warnings, code = _cmd_invariants(args)
        elif args.command == "dedekind":
            payload, warnings, code = _cmd_dedekind(args)
        else:
            payload, warnings, code = _cmd_search(args, out_format)
    except InvalidInput as exc:
        return _fail(command, exc, EXIT_INVALID)
    except UndefinedInvariant as exc:
        return _fail(command, exc, EXIT_UNDEFINED)
    except ConsistencyError as exc:
        return _fail(command, exc, EXIT_INTERNAL)

    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    if isinstance(payload, str):
        sys.stdout.write(payload)
    else:
        print(serialize.dumps(serialize.document(command, payload, warnings)))
    return code


def _fail(command: dict, exc: Exception, code: int) -> int:
    print(f"error: {exc}", file=sys.stderr)
    error = {"kind": "error", "exit_code": code, "type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, InvalidParams):
        error["violations"] = [
            {"triple": v.triple, "condition": v.condition, "message": v.message} for v in exc.violations
        ]
    print(serialize.dumps(serialize.document(command, error, [str(exc)])))
    return code


if __name__ == "__main__":
    sys.exit(main())
