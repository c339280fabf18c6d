"""Command-line interface.

Subcommands: validate, lct, candidates, jumping-numbers, contributes,
criteria, report.  Exit codes are part of the contract: 0 success (for
``contributes``: the divisor contributes), 1 does-not-contribute,
2 undecidable, 64 usage error, 65 data error, 70 internal error.
Results go to standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .candidates import candidate_jumping_numbers, lct
from .contribution import decide_contribution, derive_criterion_input
from .errors import DataError, InternalError
from .io import parse_fixture, resolution_to_json, validate_fixture
from .model import ContributionVerdict, ResolutionData
from .rationals import format_rational, parse_rational
from .surface import exceptional_profiles, surface_contributes, surface_criterion_report, surface_jumping_numbers

EXIT_OK = 0
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_INTERNAL = 70

_VERDICT_EXIT = {
    ContributionVerdict.CONTRIBUTES: 0,
    ContributionVerdict.DOES_NOT: 1,
    ContributionVerdict.UNDECIDABLE: 2,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 64, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="jumpnum",
        description=(
            "Exact computations with log-resolution data: candidate jumping "
            "numbers, log canonical thresholds, surface jumping numbers, and "
            "per-divisor contribution verdicts."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("fixture", help="fixture file (JSON)")
        p.add_argument(
            "--force", action="store_true", help="load even if validation fails"
        )
        return p

    add("validate", "check a fixture; exit 0 iff no diagnostics")
    add("lct", "log canonical threshold and its achievers")

    p = add("candidates", "candidate jumping numbers in (0, upper]")
    p.add_argument("--upper", type=_rational, required=True, metavar="p/q")
    p.add_argument("--divisor", metavar="ID", help="only candidates generated by ID")

    p = add("jumping-numbers", "complete jumping numbers of a surface fixture")
    p.add_argument("--upper", type=_rational, required=True, metavar="p/q")

    p = add("contributes", "does a divisor contribute lambda as a jumping number?")
    p.add_argument("--divisor", required=True, metavar="ID")
    p.add_argument("--lambda", dest="lam", type=_rational, required=True, metavar="p/q")
    p.add_argument(
        "--method",
        choices=("auto", "effectivity", "criterion"),
        default="auto",
    )

    p = add("criteria", "which closed-form criterion applies, and its verdict")
    p.add_argument("--divisor", required=True, metavar="ID")

    p = add("report", "full per-divisor report")
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    return parser


def _cmd_validate(args) -> int:
    data, diagnostics = validate_fixture(args.fixture)
    for d in diagnostics:
        print(d, file=sys.stderr)
    return EXIT_OK if not diagnostics else EXIT_DATA


def _cmd_lct(args) -> int:
    data = parse_fixture(args.fixture, force=args.force)
    value, achievers = lct(data)
    print(f"{format_rational(value)} ({', '.join(sorted(achievers))})")
    return EXIT_OK


def _cmd_candidates(args) -> int:
    data = parse_fixture(args.fixture, force=args.force)
    cands = candidate_jumping_numbers(data, args.upper)
    for entry in cands.entries:
        if args.divisor is not None and args.divisor not in entry.supporters:
            continue
        supporters = ", ".join(sorted(entry.supporters))
        print(f"{format_rational(entry.value)}\t[{supporters}]")
    return EXIT_OK


def _cmd_jumping_numbers(args) -> int:
    data = parse_fixture(args.fixture, force=args.force)
    if data.ambient_dim != 2:
        raise DataError(
            "the complete jumping-number computation is only available for "
            f"surfaces (ambient_dim = {data.ambient_dim})"
        )
    numbers = surface_jumping_numbers(data, args.upper)
    print(", ".join(format_rational(x) for x in numbers))
    return EXIT_OK


def _print_verdict(verdict: ContributionVerdict) -> None:
    print(f"divisor(s): {', '.join(verdict.divisors)}")
    print(f"lambda:     {format_rational(verdict.lam)}")
    print(f"verdict:    {verdict.verdict}")
    print(f"method:     {verdict.method}")
    for key, value in verdict.evidence.items():
        if key == "class":
            continue
        if key == "certificate" and value is not None:
            value = "(" + ", ".join(format_rational(x) for x in value) + ")"
        print(f"  {key}: {value}")


def _cmd_contributes(args) -> int:
    data = parse_fixture(args.fixture, force=args.force)
    if not data.has_divisor(args.divisor):
        raise DataError(f"fixture declares no divisor {args.divisor!r}")
    if data.ambient_dim == 2:
        if args.method != "auto":
            raise DataError("surface fixtures only support --method auto")
        verdict = surface_contributes(data, args.divisor, args.lam)
    else:
        verdict = decide_contribution(data, args.divisor, args.lam, args.method)
    _print_verdict(verdict)
    return _VERDICT_EXIT[verdict.verdict]


def _cmd_criteria(args) -> int:
    data = parse_fixture(args.fixture, force=args.force)
    if not data.has_divisor(args.divisor):
        raise DataError(f"fixture declares no divisor {args.divisor!r}")
    if data.ambient_dim == 2:
        rows = [r for r in surface_criterion_report(data) if r.id == args.divisor]
        if not rows:
            raise DataError(f"{args.divisor} is not an exceptional divisor")
        row = rows[0]
        print(f"divisor {row.id}: valency criterion on a minimal surface resolution")
        print(f"  d = {row.d}, a = {row.a}")
        print(f"  contributes: {row.contributes}")
        print(f"  contributed number: {format_rational(row.contributed_number)}")
        print(f"  survives log canonical model: {row.survives_lc_model}")
        return EXIT_OK
    criterion = derive_criterion_input(data, args.divisor)
    print(f"divisor {args.divisor}: configuration kind = {criterion.kind}")
    print(f"  n = {criterion.n}, d = {criterion.d}, a = {criterion.a}")
    if criterion.centers:
        centers = ", ".join(f"(k={k}, mu={mu})" for k, mu in criterion.centers)
        print(f"  centers: {centers}")
    result = criterion.evaluate()
    if result is None:
        print("  no closed-form criterion applies; use the effectivity test")
    else:
        print(f"  zone: {result.verdict}")
        for line in result.inequalities:
            print(f"    {line}")
    return EXIT_OK


def _report_text(data: ResolutionData) -> str:
    from .model import validate

    lines: list[str] = []
    lines.append(f"ambient dimension: {data.ambient_dim}")
    if data.provenance:
        lines.append(f"provenance: {data.provenance}")
    diags = validate(data)
    lines.append(f"validation: {'ok' if not diags else f'{len(diags)} diagnostic(s)'}")
    value, achievers = lct(data)
    lines.append(f"log canonical threshold: {format_rational(value)} "
                 f"({', '.join(sorted(achievers))})")
    lines.append("divisors:")
    for d in data.divisors:
        lines.append(f"  {d.id}  a={d.mult} k={d.discrepancy} kind={d.kind}")
    cands = candidate_jumping_numbers(data, Fraction(1))
    listed = ", ".join(format_rational(e.value) for e in cands.entries)
    lines.append(f"candidates in (0, 1]: {listed}")
    if data.ambient_dim == 2 and data.dual_graph is not None and not diags:
        lines.append("surface data:")
        for prof in exceptional_profiles(data):
            lines.append(
                f"  {prof.id}  E^2={prof.self_int} d={prof.d}"
            )
        jumps = surface_jumping_numbers(data, Fraction(1))
        lines.append(
            "jumping numbers in (0, 1]: "
            + ", ".join(format_rational(x) for x in jumps)
        )
        if data.minimal_resolution:
            lines.append("valency criterion (minimal resolution):")
            for row in surface_criterion_report(data):
                lines.append(
                    f"  {row.id}  d={row.d} contributes={row.contributes} "
                    f"number={format_rational(row.contributed_number)}"
                )
    for div_id in data.lattices:
        criterion = derive_criterion_input(data, div_id)
        lines.append(
            f"lattice {div_id}: kind={criterion.kind} n={criterion.n} "
            f"d={criterion.d} centers={criterion.centers}"
        )
    return "\n".join(lines)


def _report_dot(data: ResolutionData) -> str:
    lines = ["graph resolution {"]
    if data.ambient_dim == 2 and data.dual_graph is not None:
        for d in data.divisors:
            lines.append(f'  "{d.id}" [label="{d.id} (a={d.mult})"];')
        for e in data.dual_graph:
            lines.append(f'  "{e.a}" -- "{e.b}" [label="{e.intersection}"];')
    else:
        for div_id, lat in data.lattices.items():
            lines.append(f'  "{div_id}" [shape=box];')
            for other, cls in lat.restrictions.items():
                if other == div_id or cls.is_zero:
                    continue
                lines.append(f'  "{other}" -- "{div_id}" [label="{cls.pretty()}"];')
    lines.append("}")
    return "\n".join(lines)


def _cmd_report(args) -> int:
    data = parse_fixture(args.fixture, force=args.force)
    if args.format == "json":
        print(resolution_to_json(data))
    elif args.format == "dot":
        print(_report_dot(data))
    else:
        print(_report_text(data))
    return EXIT_OK


_COMMANDS = {
    "validate": _cmd_validate,
    "lct": _cmd_lct,
    "candidates": _cmd_candidates,
    "jumping-numbers": _cmd_jumping_numbers,
    "contributes": _cmd_contributes,
    "criteria": _cmd_criteria,
    "report": _cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except DataError as exc:
        print(f"jumpnum: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except InternalError as exc:
        print(f"jumpnum: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
