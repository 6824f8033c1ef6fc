"""Command line front end.

Subcommands:

bounds      closed-form bounds and the best known upper bound for one d
check       certify H(d) >= h by exhausting the profile stream
table       compute and certify H(d) over a range of d
construct   build a deletion arrangement in PG(2,q) and print it
emit-lp     write the integer incidence system of a profile in LP format
selftest    run the embedded worked examples and reference values

Exit codes: 0 success (all excluded / certified), 1 survivors or failed
selftest, 2 usage errors, 3 interrupted (checkpoint written when asked).

Exact rationals on the command line are written p/q or p; decimals are
rejected.  A leading minus is fine: tokens like -29/12 are recognized
as values, not options.
"""

from __future__ import annotations

import argparse
import json
import re
import signal
import sys
from fractions import Fraction

from . import bounds as bounds_mod
from . import figures
from .feasibility import build_system, emit_lp, enumerate_line_types, solve
from .geometry import full_plane_arrangement, removal_construction
from .pipeline import (
    CheckInterrupted,
    SUCCESS_LINE,
    check,
    compute_H,
    exclude,
    format_record_line,
)
from .profiles import (
    Profile,
    ProfileError,
    combinatorial_quotient,
    format_rational,
    parse_profile,
    parse_rational,
)

_NEGATIVE_VALUE = re.compile(r"-\d+(/\d+)?")


def _shield_negative_values(argv: list[str]) -> list[str]:
    # argparse reads "-29/12" as an option; a leading space hides the dash
    # and every numeric parser here strips whitespace first
    return [" " + tok if _NEGATIVE_VALUE.fullmatch(tok) else tok for tok in argv]


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def _decimal(x: Fraction) -> str:
    return f"{float(x):.4f}"


def cmd_bounds(args: argparse.Namespace) -> int:
    d = args.d
    print(f"d = {d}")
    print(f"q(d) = {bounds_mod.q_of(d)}")
    if d >= 7:
        print(f"r(d) = {bounds_mod.r_of(d)}")
    else:
        print("r(d) = undefined (needs d >= 7)")
    try:
        data = bounds_mod.conjecture_data(d)
    except bounds_mod.ConjectureOutOfDomain as exc:
        print(f"conjectured h(d) = out of domain ({exc})")
        data = None
    if data is not None:
        note = ""
        if data.flagged:
            quotient = combinatorial_quotient(data.profile)
            note = (
                f"  [flagged: profile quotient {format_rational(quotient)}"
                " differs from the formula]"
            )
        print(
            f"conjectured h(d) = {format_rational(data.h)} (~ {_decimal(data.h)})"
            f"  [deletion q={data.q} i={data.i}; profile {data.profile.canonical()}]"
            f"{note}"
        )
    if d >= 6:
        radicand = 4 * d - 3
        approx = (1 - radicand**0.5) / 2
        print(f"analytic lower bound = (1-sqrt({radicand}))/2 (~ {approx:.4f})")
    else:
        print("analytic lower bound = undefined (needs d >= 6)")
    if d >= 7:
        value, witness = bounds_mod.naive_upper_bound(d)
        print(
            f"subplane upper bound = {format_rational(value)} (~ {_decimal(value)})"
            f"  [profile {witness.profile.canonical()}]"
        )
    else:
        print("subplane upper bound = undefined (needs d >= 7)")
    value, witness = bounds_mod.generic_profile(d)
    print(
        f"generic arrangement = {format_rational(value)} (~ {_decimal(value)})"
        f"  [profile {witness.profile.canonical()}]"
    )
    best, witness = bounds_mod.best_known_upper(d)
    print(
        f"best known upper = {format_rational(best)} via {witness.provenance}"
        f"  [profile {witness.profile.canonical()}]"
    )
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    stop = {"flag": False}

    def _handler(signum, frame):  # noqa: ARG001
        stop["flag"] = True

    old_term = signal.signal(signal.SIGTERM, _handler)
    old_int = signal.signal(signal.SIGINT, _handler)
    try:
        verdict = check(
            args.d,
            args.h,
            extra_pruning=not args.no_extra_pruning,
            jobs=args.jobs,
            report=args.report,
            report_format=args.format,
            checkpoint=args.checkpoint,
            cadence=args.cadence,
            resume=args.resume,
            should_stop=lambda: stop["flag"],
        )
    except CheckInterrupted:
        where = (
            f"checkpoint written to {args.checkpoint}"
            if args.checkpoint
            else "no checkpoint path was given, progress is lost"
        )
        print(f"interrupted; {where}", file=sys.stderr)
        return 3
    finally:
        signal.signal(signal.SIGTERM, old_term)
        signal.signal(signal.SIGINT, old_int)

    print(
        f"check d={verdict.d} bound={format_rational(verdict.bound)} "
        f"extra-pruning={'off' if args.no_extra_pruning else 'on'} jobs={args.jobs}"
    )
    print(verdict.counters.summary_text())
    if args.figure:
        figures.render_check_figure(verdict, args.figure)
        print(f"figure written to {args.figure}")
    if verdict.all_excluded:
        print(SUCCESS_LINE)
        return 0
    for rec in verdict.survivors[:20]:
        print(format_record_line(rec, "text"))
    if len(verdict.survivors) > 20:
        print(f"... and {len(verdict.survivors) - 20} more")
    print(
        f"Survivors remain: {verdict.counters.reasons['survivor']} "
        "configuration(s) not excluded."
    )
    return 1


def cmd_table(args: argparse.Namespace) -> int:
    dmin, dmax = args.dmin, args.dmax
    if not 2 <= dmin <= dmax:
        raise ValueError("need 2 <= dmin <= dmax")
    if dmax > 31:
        raise ValueError(
            "certified range ends at d=31; use `check` with an explicit bound beyond"
        )
    if dmax > 21 and not args.long:
        raise ValueError(
            f"d={dmax} runs well beyond the quick band; pass --long to confirm"
        )
    results = []
    if args.format == "text":
        print("# d | H(d) exact | decimal")
    all_certified = True
    for d in range(dmin, dmax + 1):
        result = compute_H(d, jobs=args.jobs)
        results.append(result)
        all_certified = all_certified and result.certified
        if args.format == "text":
            mark = "" if result.certified else "   [NOT certified]"
            print(f"{d} | {format_rational(result.value)} | {_decimal(result.value)}{mark}")
        else:
            print(
                json.dumps(
                    {
                        "type": "row",
                        "d": d,
                        "H": format_rational(result.value),
                        "decimal": float(result.value),
                        "certified": result.certified,
                        "witness": result.witness.profile.canonical(),
                    }
                )
            )
    if args.figure:
        figures.render_table_figure(results, args.figure)
        print(f"figure written to {args.figure}")
    return 0 if all_certified else 1


def cmd_construct(args: argparse.Namespace) -> int:
    arr = removal_construction(args.q, args.i)
    print(
        f"construction: PG(2,{args.q}) minus {args.i} line(s), d={arr.d}"
    )
    for line in arr.lines:
        print(f"line {line}")
    print(f"profile: {arr.profile.canonical()}")
    value = arr.harbourne_constant()
    print(f"H = {format_rational(value)} (~ {_decimal(value)})")
    return 0


def cmd_emit_lp(args: argparse.Namespace) -> int:
    profile = parse_profile(args.profile)
    text = emit_lp(build_system(profile))
    if args.output:
        with open(args.output, "w") as handle:
            handle.write(text)
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(text)
    return 0


def _selftest_checks():
    from dataclasses import replace

    def two_pencil_example():
        p = Profile.from_counts(10, {3: 7, 4: 4})
        rec = exclude(p)
        assert rec.reason == "two-pencil-refined", rec.reason
        assert "a=3" in rec.detail and "9+3 > 11" in rec.detail, rec.detail
        assert rec.quotient == Fraction(-27, 11), rec.quotient

    def incidence_example():
        p = Profile.from_counts(14, {3: 7, 4: 10, 5: 1})
        types = enumerate_line_types(p)
        got = [(t.count(3), t.count(4), t.count(5)) for t in types]
        assert got == [(5, 1, 0), (2, 3, 0), (3, 1, 1), (0, 3, 1)], got
        system = build_system(p)
        eq_only = replace(system, ineq_rows=())
        sols = solve(eq_only, "all")
        assert sols == [(0, 9, 1, 4), (1, 8, 0, 5)], sols
        assert solve(system, "first") == []

    def lp_grammar():
        p = Profile.from_counts(14, {3: 7, 4: 10, 5: 1})
        expected = (
            "minimize value: a1\n"
            "subject to\n"
            "e1: 1 a1 + 1 a2 + 1 a3 + 1 a4 = 14\n"
            "e2: 5 a1 + 2 a2 + 3 a3 + 0 a4 = 21\n"
            "e3: 1 a1 + 3 a2 + 1 a3 + 3 a4 = 40\n"
            "e4: 0 a1 + 0 a2 + 1 a3 + 1 a4 = 5\n"
            "b5k3: 3 a3 + 0 a4 <= 7\n"
            "b5k4: 1 a3 + 3 a4 <= 10\n"
            "integer\n"
            " a1\n"
            " a2\n"
            " a3\n"
            " a4\n"
            "end\n"
        )
        got = emit_lp(build_system(p))
        assert got == expected, f"LP text differs:\n{got}"

    def reference_values():
        for d in (2, 3, 4, 5, 7, 8, 10, 13):
            result = compute_H(d)
            assert result.certified, f"d={d} not certified"
            assert result.value == bounds_mod.KNOWN_H[d], (
                f"d={d}: got {result.value}, expected {bounds_mod.KNOWN_H[d]}"
            )

    def conjecture_audit():
        rows = bounds_mod.audit_conjecture(2, 31)
        for row in rows:
            if row.d in (2, 3):
                assert row.status == bounds_mod.AUDIT_OUT_OF_DOMAIN, row
            elif row.d == 4:
                assert row.status == bounds_mod.AUDIT_KNOWN_DISCREPANCY, row
            else:
                assert row.status == bounds_mod.AUDIT_MATCH, row

    def full_planes():
        for q in (2, 3, 4, 5):
            arr = full_plane_arrangement(q)
            assert arr.harbourne_constant() == Fraction(-q)

    def boundary_survivor():
        p = Profile.from_counts(43, {7: 43})
        assert combinatorial_quotient(p) == Fraction(-6)
        rec = exclude(p)
        assert rec.reason == "survivor", rec.reason
        assert "order-6" in rec.detail, rec.detail

    yield "two-pencil worked example", two_pencil_example
    yield "incidence-system worked example", incidence_example
    yield "lp emission grammar", lp_grammar
    yield "reference values", reference_values
    yield "conjecture audit", conjecture_audit
    yield "full-plane constructions", full_planes
    yield "order-6 boundary survivor", boundary_survivor


def cmd_selftest(args: argparse.Namespace) -> int:  # noqa: ARG001
    failures = 0
    for name, fn in _selftest_checks():
        try:
            fn()
        except Exception as exc:  # noqa: BLE001
            failures += 1
            print(f"FAIL {name}: {exc}")
        else:
            print(f"ok   {name}")
    if failures:
        print(f"{failures} selftest check(s) failed")
        return 1
    print("all selftest checks passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harbourne",
        description="Exact Harbourne constants of line arrangements: "
        "certified lower bounds and explicit constructions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="closed-form bounds for one d")
    p.add_argument("d", type=_positive_int)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("check", help="certify H(d) >= h exhaustively")
    p.add_argument("d", type=_positive_int)
    p.add_argument("h", type=_rational, help="exact rational bound, e.g. -29/12")
    p.add_argument("--report", metavar="FILE", help="write one record per tested profile")
    p.add_argument(
        "--format", choices=("text", "structured"), default="text",
        help="report file format (default text)",
    )
    p.add_argument("--checkpoint", metavar="FILE", help="cursor file for resumable runs")
    p.add_argument(
        "--cadence", type=_positive_int, default=1_000_000,
        help="profiles between checkpoint writes (default 1000000)",
    )
    p.add_argument("--resume", metavar="FILE", help="continue from a checkpoint file")
    p.add_argument("--jobs", type=_positive_int, default=1, help="parallel worker processes")
    p.add_argument(
        "--no-extra-pruning", action="store_true",
        help="drop the equal-multiplicity rule from enumeration (larger stream, same verdict)",
    )
    p.add_argument("--figure", metavar="FILE", help="render exclusion counts to an image")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("table", help="compute H(d) over a range")
    p.add_argument("dmin", type=_positive_int)
    p.add_argument("dmax", type=_positive_int)
    p.add_argument("--long", action="store_true", help="allow the slow band d > 21")
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--figure", metavar="FILE", help="render the values to an image")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("construct", help="deletion construction in PG(2,q)")
    p.add_argument("--q", type=_positive_int, required=True, help="plane order (prime power)")
    p.add_argument("--i", type=int, required=True, help="number of lines to delete")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("emit-lp", help="LP text of a profile's incidence system")
    p.add_argument("profile", help="canonical profile text, e.g. 'd=14; t3=7,t4=10,t5=1'")
    p.add_argument("-o", "--output", metavar="FILE")
    p.set_defaults(func=cmd_emit_lp)

    p = sub.add_parser("selftest", help="run embedded worked examples")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(_shield_negative_values(list(argv)))
    try:
        return args.func(args)
    except (ValueError, ProfileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
