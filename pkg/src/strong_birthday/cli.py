"""Command-line interface.

Usage:
    strong-birthday prob --m 3 --n 2 --k 0 --method all
    strong-birthday prob --m 365 --n 3064 --r 2 --method stirling --mode scaled
    strong-birthday min-n --m 365 --p 0.5
    strong-birthday table --preset dasgupta2005 --check
    strong-birthday stirling --n 7 --k 2 --r 3 --labeled
    strong-birthday verify --max-m 3 --max-n 4

Exit codes: 0 success, 1 mismatch or failed verification, 2 usage error,
3 resource abort (scan cap or enumeration budget).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from collections.abc import Sequence
from fractions import Fraction

from . import table1
from .assoc import prob_shared_at_least
from .combinatorics import assoc_stirling2
from .dp import iter_dp_layers, layer_total, prob_exact_singletons_dp
from .exact import ScaledFloat, format_decimal, format_rational, parse_rational
from .formula import prob_exact_singletons
from .oracle import BudgetExceeded, EnumerationBudget
from .solver import ScanCapExceeded, SolverResult, min_people, table_reproduce
from .verify import run_all

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_ABORT = 3

# exact rationals longer than this are shown only in json output
_TEXT_RATIONAL_LIMIT = 60
_SCALED_MATCH_RTOL = 1e-10
# --method all leaves the O(n^3)-state DP out above this n
DP_ALL_MAX_N = 200


def _count(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {text!r}")
    return value


def _threshold(text: str) -> Fraction:
    try:
        p = parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a decimal or fraction: {text!r}") from None
    if not 0 < p < 1:
        raise argparse.ArgumentTypeError(f"threshold must satisfy 0 < p < 1, got {text}")
    return p


def _list_of(kind):
    def parse(text: str) -> list:
        return [kind(part) for part in text.split(",") if part.strip()]
    return parse


def _flatten(groups: list[list] | None) -> list:
    return [x for group in groups or [] for x in group]


# ----------------------------------------------------------------------------
# prob


def _prob_entry(method: str, value: Fraction | ScaledFloat, digits: int) -> dict:
    if isinstance(value, ScaledFloat):
        return {
            "method": method,
            "mode": "scaled",
            "exact": None,
            "decimal": f"{value.to_float():.17g}",
            "mantissa": value.mantissa,
            "exponent": value.exponent,
            "rel_error_bound": value.rel_error_bound,
        }
    return {
        "method": method,
        "mode": "exact",
        "exact": format_rational(value),
        "decimal": format_decimal(value, digits),
    }


def cmd_prob(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.k is not None and args.r is not None:
        parser.error("--k and --r are mutually exclusive")
    if args.k is not None and args.method == "stirling":
        parser.error("--k selects singleton counts; --method stirling needs --r")
    r = args.r if args.r is not None else 2
    k = args.k if args.k is not None else 0
    if args.r is not None and r < 2:
        parser.error("--r must be >= 2")
    if args.r is not None and r != 2 and args.method in ("formula", "dp"):
        parser.error(f"--method {args.method} only covers r = 2")
    if args.mode == "scaled" and args.method in ("formula", "dp"):
        parser.error("scaled mode exists only for --method stirling")
    if args.m == 0 and args.n > 0:
        parser.error("m = 0 with n > 0 has no sample space")

    if args.method == "all":
        if args.r is not None:
            methods = ["formula", "dp", "stirling"] if r == 2 else ["stirling"]
        else:
            methods = ["formula", "dp", "stirling"] if k == 0 else ["formula", "dp"]
    else:
        methods = [args.method]
    if args.method == "all" and args.n > DP_ALL_MAX_N and "dp" in methods:
        methods.remove("dp")
        print(f"note: dp skipped for n > {DP_ALL_MAX_N}; request it with --method dp",
              file=sys.stderr)
    if "stirling" in methods and args.m == 0:
        parser.error("--method stirling needs m >= 1")

    if args.emit_layers and "dp" in methods:
        out = csv.writer(sys.stderr, lineterminator="\n")
        out.writerow(["n", "total"])
        for n, layer in iter_dp_layers(args.m, args.n):
            out.writerow([n, layer_total(layer)])

    results = []
    values = []
    for method in methods:
        if method == "formula":
            value = prob_exact_singletons(args.m, args.n, k)
        elif method == "dp":
            value = prob_exact_singletons_dp(args.m, args.n, k)
        else:
            value = prob_shared_at_least(args.m, args.n, r, args.mode)
        values.append(value)
        results.append(_prob_entry(method, value, args.digits))

    verdict = None
    if len(values) > 1:
        if any(isinstance(v, ScaledFloat) for v in values):
            floats = [v.to_float() if isinstance(v, ScaledFloat) else float(v) for v in values]
            same = all(math.isclose(f, floats[0], rel_tol=_SCALED_MATCH_RTOL, abs_tol=0.0)
                       for f in floats)
        else:
            same = len(set(values)) == 1
        verdict = "MATCH" if same else "MISMATCH"

    query = {"m": args.m, "n": args.n}
    query.update({"r": r} if args.k is None and args.r is not None else {"k": k})
    if args.format == "json":
        print(json.dumps({**query, "results": results, "verdict": verdict}))
    else:
        label = " ".join(f"{key}={val}" for key, val in query.items())
        print(label)
        for e in results:
            exact = e["exact"]
            shown = exact if exact and len(exact) <= _TEXT_RATIONAL_LIMIT else ""
            print(f"{e['method']:<9} {e['decimal']}  {shown}".rstrip())
        if verdict:
            print(verdict)
    return EXIT_MISMATCH if verdict == "MISMATCH" else EXIT_OK


# ----------------------------------------------------------------------------
# min-n / table


def _result_record(res: SolverResult, digits: int, exact: bool) -> dict:
    rec = {
        "m": res.m,
        "p": format_rational(res.p),
        "r": res.r,
        "n_min": res.n_min,
        "prob_at": format_decimal(res.prob_at, digits),
        "prob_below": format_decimal(res.prob_below, digits),
        "certification": res.certification,
        "rows_scanned": res.rows_scanned,
        "exact_recomputes": res.exact_recomputes,
    }
    if exact:
        rec["prob_at_exact"] = format_rational(res.prob_at)
        rec["prob_below_exact"] = format_rational(res.prob_below)
    return rec


def cmd_min_n(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.m < 1:
        parser.error("--m must be >= 1")
    if args.r < 2:
        parser.error("--r must be >= 2")
    res = min_people(args.m, args.p, args.r, args.scan_cap, args.mode)
    rec = _result_record(res, args.digits, exact=args.format == "json")
    if args.format == "json":
        print(json.dumps(rec))
    else:
        print(res.n_min)
        for key in ("prob_below", "prob_at", "certification", "rows_scanned",
                    "exact_recomputes"):
            print(f"  {key}: {rec[key]}")
    return EXIT_OK


_TABLE_COLUMNS = ["m", "p", "r", "n_min", "prob_at", "certification"]


def _render_table(records: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(records, indent=1)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=_TABLE_COLUMNS, extrasaction="ignore",
                                lineterminator="\n")
        writer.writeheader()
        writer.writerows(records)
        return buf.getvalue().rstrip("\n")
    lines = ["| " + " | ".join(_TABLE_COLUMNS) + " |",
             "|" + "|".join("---" for _ in _TABLE_COLUMNS) + "|"]
    for rec in records:
        lines.append("| " + " | ".join(str(rec[c]) for c in _TABLE_COLUMNS) + " |")
    return "\n".join(lines)


def cmd_table(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.preset:
        m_list, p_list = list(table1.DAYS), list(table1.THRESHOLDS)
    else:
        m_list, p_list = _flatten(args.m_list), _flatten(args.p_list)
        if not m_list or not p_list:
            parser.error("give --preset or both --m-list and --p-list")
    if any(m < 1 for m in m_list):
        parser.error("every m must be >= 1")
    if args.r < 2:
        parser.error("--r must be >= 2")

    grid = table_reproduce(m_list, p_list, args.r, jobs=args.jobs, mode=args.mode)
    records = [_result_record(res, args.digits, exact=args.format == "json")
               for row in grid for res in row]
    text = _render_table(records, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)

    if not args.check:
        return EXIT_OK
    mismatches = checked = 0
    for res in (res for row in grid for res in row):
        expected = table1.EXPECTED.get((res.m, res.p)) if res.r == 2 else None
        if expected is None:
            continue
        checked += 1
        if expected != res.n_min:
            mismatches += 1
            print(f"MISMATCH m={res.m} p={format_rational(res.p)}: "
                  f"computed {res.n_min}, published {expected}", file=sys.stderr)
    print(f"check: {checked - mismatches}/{checked} cells match", file=sys.stderr)
    if checked == 0:
        print("check: no cell has a published value", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_MISMATCH if mismatches else EXIT_OK


# ----------------------------------------------------------------------------
# stirling / verify


def cmd_stirling(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.r <= 0:
        parser.error("--r must be >= 1")
    value = assoc_stirling2(args.n, args.k, args.r)
    if args.labeled:
        value *= math.factorial(args.k)
    print(value)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.mc_trials < 1:
        parser.error("--mc-trials must be >= 1")
    reports = run_all(args.max_m, args.max_n, args.mc_trials, args.seed,
                      EnumerationBudget(args.budget), workers=args.jobs or 1)
    for rep in reports:
        for line in rep.lines:
            print(f"{rep.name}: {line}")
    for rep in reports:
        print(rep.summary())
    ok = all(rep.ok for rep in reports)
    print("ALL SUITES PASS" if ok else "VERIFICATION FAILED")
    return EXIT_OK if ok else EXIT_MISMATCH


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strong-birthday",
        description="Exact strong birthday problem probabilities and thresholds.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prob", help="probability for given m and n")
    p.add_argument("--m", type=_count, required=True, help="days in the year")
    p.add_argument("--n", type=_count, required=True, help="people")
    p.add_argument("--k", type=_count, help="exact number of singleton days")
    p.add_argument("--r", type=int, help="minimum people on every occupied day (>= 2)")
    p.add_argument("--method", choices=["formula", "dp", "stirling", "all"], default="all")
    p.add_argument("--mode", choices=["exact", "scaled"], default="exact")
    p.add_argument("--digits", type=_count, default=20)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--emit-layers", action="store_true",
                   help="stream DP layer totals as CSV on stderr")
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("min-n", help="least n with P(m, n, r) >= p")
    p.add_argument("--m", type=_count, required=True)
    p.add_argument("--p", type=_threshold, required=True, help="e.g. 0.5 or 999/1000")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--scan-cap", type=_count, default=None)
    p.add_argument("--mode", choices=["auto", "exact", "scaled"], default="auto")
    p.add_argument("--digits", type=_count, default=20)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_min_n)

    p = sub.add_parser("table", help="minimum-n table over several m and p")
    p.add_argument("--preset", choices=[table1.PRESET_NAME])
    p.add_argument("--m-list", type=_list_of(_count), nargs="+", action="extend")
    p.add_argument("--p-list", type=_list_of(_threshold), nargs="+", action="extend")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--mode", choices=["auto", "exact", "scaled"], default="auto")
    p.add_argument("--format", choices=["markdown", "csv", "json"], default="markdown")
    p.add_argument("--digits", type=_count, default=20)
    p.add_argument("--output", help="write the table here instead of stdout")
    p.add_argument("--check", action="store_true",
                   help="compare against the published values; exit 1 on mismatch")
    p.add_argument("--jobs", type=_count, default=None,
                   help="worker processes (default: available processors)")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("stirling", help="(r-associated) Stirling number of the second kind")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--labeled", action="store_true", help="multiply by k!")
    p.set_defaults(func=cmd_stirling)

    p = sub.add_parser("verify", help="run the oracle-vs-engine suites")
    p.add_argument("--max-m", type=_count, default=8)
    p.add_argument("--max-n", type=_count, default=12)
    p.add_argument("--mc-trials", type=int, default=20_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=_count, default=10**6,
                   help="largest m**n enumerated exhaustively")
    p.add_argument("--jobs", type=_count, default=1, help="Monte Carlo worker threads")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "jobs", 0) is None:
        args.jobs = os.cpu_count() or 1
    try:
        return args.func(args, parser)
    except (ScanCapExceeded, BudgetExceeded) as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return EXIT_ABORT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
