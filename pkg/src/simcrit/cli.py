"""Command-line interface.

Exit codes:

    0  success
    1  bad arguments or out-of-domain numeric input
    2  malformed problem, case or unit text
    3  dependent basis (zero determinant)
    4  inconsistent system, unsolvable group or missing parameter
    5  cases are not similar
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .dims import fraction_text
from .pi import (
    DerivationError,
    InconsistentSystemError,
    ShapeError,
    SingularBasisError,
    check_basis,
    derive_pi_groups,
    format_pi_group,
)
from .problem import (
    ProblemError,
    case_from_dict,
    dumps,
    load_json,
    load_problem,
    preset_problem_dict,
)
from .report import build_report, render_text
from .similarity import (
    DEFAULT_TOLERANCE,
    CaseAssignment,
    SimilarityError,
    check_similarity,
    eval_pi,
    solve_unknown,
)
from .slm import (
    audit_preset,
    compare_materials,
    estimate_print_time,
    implied_rate,
    laser_melting_preset,
    print_time_table_data,
)
from .units import UnitError, parse_unit

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MALFORMED = 2
EXIT_DEPENDENT = 3
EXIT_INCONSISTENT = 4
EXIT_NOT_SIMILAR = 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        self.code = code
        super().__init__(message)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def number(text: str) -> float:
    """Parse a float, accepting a decimal comma ("2,9")."""
    try:
        return float(text.strip().replace(",", "."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _color(text: str, code: str) -> str:
    if os.environ.get("NO_COLOR") or not sys.stdout.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _write_json(dest: str, text: str) -> None:
    if dest == "-":
        sys.stdout.write(text)
    else:
        Path(dest).write_text(text, encoding="utf-8")


# --- pi -------------------------------------------------------------------

def cmd_pi_derive(args) -> int:
    problem = load_problem(args.problem, audit=not args.no_audit)
    report = build_report(problem)
    if args.json == "-":
        _write_json("-", dumps(report.to_dict()))
        return EXIT_OK
    sys.stdout.write(render_text(report))
    if args.json:
        _write_json(args.json, dumps(report.to_dict()))
    return EXIT_OK


def cmd_pi_check_basis(args) -> int:
    problem = load_problem(args.problem, audit=not args.no_audit)
    check = check_basis(problem.matrix, problem.basis)
    det = fraction_text(check.determinant)
    state = "independent" if check.independent else "dependent"
    print(f"basis: {', '.join(problem.basis_symbols)}")
    print(f"determinant: {det} ({state})")
    return EXIT_OK if check.independent else EXIT_DEPENDENT


# --- unit -----------------------------------------------------------------

def cmd_unit_parse(args) -> int:
    parsed = parse_unit(args.expr)
    print(f"dims: {parsed.dims} ({' '.join(parsed.dims.as_text())})")
    print(f"si_scale: {fraction_text(parsed.si_scale)}")
    return EXIT_OK


# --- similarity -----------------------------------------------------------

def _case(path: str, problem, label: str) -> CaseAssignment:
    try:
        return CaseAssignment(case_from_dict(load_json(path), problem), label)
    except ProblemError as exc:
        raise ProblemError(str(exc), path) from None


def cmd_similarity_check(args) -> int:
    problem = load_problem(args.problem, audit=not args.no_audit)
    m = problem.matrix
    groups = derive_pi_groups(m, problem.basis)
    a = _case(args.case_a, problem, "a")
    b = _case(args.case_b, problem, "b")
    if not args.tol > 0:
        raise CliError("--tol must be positive", EXIT_USAGE)
    report = check_similarity(groups, m, a, b, args.tol)
    for r in report.records:
        print(f"{r.group}: a={_fmt(r.value_a)} b={_fmt(r.value_b)} deviation={r.relative_deviation:.3g}")
    if report.similar:
        print(_color(f"similar (tolerance {args.tol:g})", "32"))
        return EXIT_OK
    print(_color(f"not similar (tolerance {args.tol:g})", "31"))
    return EXIT_NOT_SIMILAR


def cmd_similarity_solve(args) -> int:
    problem = load_problem(args.problem, audit=not args.no_audit)
    m = problem.matrix
    groups = derive_pi_groups(m, problem.basis)
    try:
        group = next(g for g in groups if m.quantities[g.target_index].symbol == args.group)
    except StopIteration:
        raise CliError(f"no group has target {args.group!r}", EXIT_INCONSISTENT) from None
    partial = _case(args.case, problem, "partial")
    if not args.target_pi > 0:
        raise CliError("--target-pi must be positive", EXIT_USAGE)
    missing = [s for s in group.exponents_by_symbol(m) if s not in partial.values]
    value = solve_unknown(group, m, partial, args.target_pi)
    symbol = missing[0]
    q = m.quantities[m.index(symbol)]
    declared = value / float(q.si_scale if q.si_scale is not None else 1)
    unit = f" {q.unit_text}" if q.unit_text else ""
    print(f"{symbol} = {_fmt(declared)}{unit}")
    check = eval_pi(group, m, CaseAssignment({**partial.values, symbol: value}))
    print(f"check: {format_pi_group(group, m)} = {_fmt(check)}")
    return EXIT_OK


# --- slm ------------------------------------------------------------------

def cmd_slm_preset(args) -> int:
    preset = laser_melting_preset()
    m, b = preset.matrix, preset.basis
    for q in m.quantities:
        role = "basis" if m.index(q.symbol) in b else ""
        unit = f"[{q.unit_text}]"
        print(f"{q.symbol:4} {unit:16} {' '.join(q.dims.as_text()):14} {q.name:24} {role}".rstrip())
    print(f"basis determinant: {fraction_text(check_basis(m, b).determinant)}")
    for n, g in enumerate(derive_pi_groups(m, b), start=len(b) + 1):
        print(f"  π{n} = {format_pi_group(g, m)}")
    if args.emit:
        _write_json(args.emit, dumps(preset_problem_dict()))
    return EXIT_OK


def cmd_slm_audit(args) -> int:
    for r in audit_preset():
        declared = " ".join(r.declared.as_text())
        if r.parsed is None:
            parsed = r.error or "-"
        else:
            parsed = " ".join(r.parsed.as_text())
        mark = _color("ok", "32") if r.match else _color("MISMATCH", "31")
        print(f"{r.symbol:4} {r.unit_text!s:14} declared ({declared}) parsed ({parsed}) {mark}")
    return EXIT_OK


def _hours_text(hours: float) -> str:
    return f"{hours:.1f}" if hours >= 1 else f"{hours:.3g}"


def cmd_slm_estimate_time(args) -> int:
    try:
        est = estimate_print_time(args.volume, args.rate)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from None
    print(f"{_hours_text(est.hours)} h")
    if est.rate_warning:
        print(f"warning: {est.rate_warning}", file=sys.stderr)
    return EXIT_OK


def cmd_slm_implied_rate(args) -> int:
    try:
        rate = implied_rate(args.volume, args.hours)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from None
    print(f"{rate:.6g} cm³/h")
    return EXIT_OK


def cmd_slm_compare(args) -> int:
    try:
        res = compare_materials(
            args.a, args.b, (args.label_a, args.label_b),
            higher_is_better=args.higher_better, sig_figs=args.sig_figs, metric_name=args.metric,
        )
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from None
    loser = args.label_b if res.better == args.label_a else args.label_a
    print(f"×{res.display}")
    print(f"{res.better} over {loser}; raw ratio {res.ratio:.6g}")
    return EXIT_OK


def cmd_slm_table(args) -> int:
    data = print_time_table_data()
    if args.emit:
        _write_json(args.emit, dumps(data))
        return EXIT_OK
    classes = list(data["class_tolerances_mm"])
    print(f"{'part':24} {'cm³':>6} " + " ".join(f"{c} ({data['class_tolerances_mm'][c]} mm)".rjust(12) for c in classes))
    for row in data["rows"]:
        hours = " ".join(f"{row['hours'][c]:>12g}" for c in classes)
        print(f"{row['part_name']:24} {row['volume_cm3']:>6g} {hours}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="simcrit", description="Exact dimensional analysis and similarity criteria.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="area", required=True, parser_class=_Parser)

    pi = sub.add_parser("pi", help="basis checks and group derivation").add_subparsers(dest="cmd", required=True)
    p = pi.add_parser("derive", help="derive dimensionless groups for a problem file")
    p.add_argument("problem")
    p.add_argument("--json", metavar="PATH", help="also write the report as JSON ('-' for stdout only)")
    p.add_argument("--no-audit", action="store_true", help="accept unit texts that disagree with declared dims")
    p.set_defaults(func=cmd_pi_derive)
    p = pi.add_parser("check-basis", help="determinant of the basis rows")
    p.add_argument("problem")
    p.add_argument("--no-audit", action="store_true")
    p.set_defaults(func=cmd_pi_check_basis)

    unit = sub.add_parser("unit", help="unit expressions").add_subparsers(dest="cmd", required=True)
    p = unit.add_parser("parse", help="dimensions and SI scale of a unit expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_unit_parse)

    sim = sub.add_parser("similarity", help="evaluate groups on concrete cases").add_subparsers(dest="cmd", required=True)
    p = sim.add_parser("check", help="compare every group between two cases")
    p.add_argument("problem")
    p.add_argument("case_a")
    p.add_argument("case_b")
    p.add_argument("--tol", type=number, default=DEFAULT_TOLERANCE)
    p.add_argument("--no-audit", action="store_true")
    p.set_defaults(func=cmd_similarity_check)
    p = sim.add_parser("solve", help="solve one group for its single unknown quantity")
    p.add_argument("problem")
    p.add_argument("case")
    p.add_argument("--group", required=True, metavar="SYMBOL", help="target symbol of the group")
    p.add_argument("--target-pi", type=number, required=True)
    p.add_argument("--no-audit", action="store_true")
    p.set_defaults(func=cmd_similarity_solve)

    slm = sub.add_parser("slm", help="laser-melting preset and build planning").add_subparsers(dest="cmd", required=True)
    p = slm.add_parser("preset", help="show the preset problem")
    p.add_argument("--emit", metavar="PATH", help="write the preset as a problem file ('-' for stdout)")
    p.set_defaults(func=cmd_slm_preset)
    p = slm.add_parser("audit", help="compare preset dimension rows with their unit texts")
    p.set_defaults(func=cmd_slm_audit)
    p = slm.add_parser("estimate-time", help="build hours for a volume at a deposition rate")
    p.add_argument("--volume", type=number, required=True, help="cm³")
    p.add_argument("--rate", type=number, required=True, help="cm³/h")
    p.set_defaults(func=cmd_slm_estimate_time)
    p = slm.add_parser("implied-rate", help="deposition rate implied by a volume and build time")
    p.add_argument("--volume", type=number, required=True, help="cm³")
    p.add_argument("--hours", type=number, required=True)
    p.set_defaults(func=cmd_slm_implied_rate)
    p = slm.add_parser("compare", help="ratio of two material metrics")
    p.add_argument("--a", type=number, required=True)
    p.add_argument("--b", type=number, required=True)
    better = p.add_mutually_exclusive_group()
    better.add_argument("--higher-better", dest="higher_better", action="store_true", default=True)
    better.add_argument("--lower-better", dest="higher_better", action="store_false")
    p.add_argument("--sig-figs", type=int, default=2)
    p.add_argument("--label-a", default="a")
    p.add_argument("--label-b", default="b")
    p.add_argument("--metric", default="")
    p.set_defaults(func=cmd_slm_compare)
    p = slm.add_parser("table", help="build-time reference table")
    p.add_argument("--emit", metavar="PATH", help="write the table as JSON ('-' for stdout)")
    p.set_defaults(func=cmd_slm_table)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ProblemError, UnitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except SingularBasisError as exc:
        det = "" if exc.determinant is None else f" (determinant {fraction_text(exc.determinant)})"
        print(f"error: {exc}{det}", file=sys.stderr)
        return EXIT_DEPENDENT
    except ShapeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InconsistentSystemError, SimilarityError, DerivationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
