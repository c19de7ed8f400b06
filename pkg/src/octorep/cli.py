"""Command-line entry point: ``octorep <command> [flags]``.

Exit codes: 0 success, 1 verification failures, 2 bad arguments or
unreadable input, 3 shape/degenerate/non-Hermitian input, 4 unsolvable
matrix equation.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from . import olinsolve
from .errors import DegenerateInputError, DimensionError, NotHermitianError, UnsupportedSizeError
from .octonion import Octonion, format_real
from .oeigen import format_groups, hermitian_eigen, multiplicity_census
from .olinsolve import ASSOC_FORMS
from .omatrix import MatrixEquation, OctonionMatrix, solve_matrix_equation
from .orep import RepKind, rep
from .realmat import SolutionSet
from .verify import SUITES, format_result, run_suite

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_BAD_INPUT = 3
EXIT_UNSOLVABLE = 4


class UsageError(Exception):
    pass


def default_seed() -> int:
    raw = os.environ.get("OCTO_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"OCTO_SEED must be an integer, got {raw!r}") from None


def _octonion(text: str) -> Octonion:
    try:
        return Octonion.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read_matrix(path: str) -> OctonionMatrix:
    try:
        return OctonionMatrix.from_json(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except (ValueError, TypeError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _matrix_rows(m) -> list[str]:
    return [" ".join(format_real(x) for x in row) for row in m]


def _print_solution(sol: SolutionSet, out) -> None:
    print(f"solvable: {'true' if sol.solvable else 'false'}", file=out)
    if sol.solvable:
        print(f"particular: {sol.particular.literal()}", file=out)
        print(f"null_basis: {sol.nullity}", file=out)
        for h in sol.null_basis:
            print(f"  {h.literal()}", file=out)
    print(f"residual: {format_real(sol.residual)}", file=out)
    for note in sol.diagnostics:
        print(f"diagnostic: {note}", file=sys.stderr)


def cmd_mul(args, out) -> int:
    print((_octonion(args.a) * _octonion(args.b)).literal(), file=out)
    return EXIT_OK


def cmd_rep(args, out) -> int:
    kind = RepKind.LEFT if args.kind == "left" else RepKind.RIGHT
    for line in _matrix_rows(rep(kind, _octonion(args.a))):
        print(line, file=out)
    return EXIT_OK


def _need(args, *names: str) -> list[Octonion]:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"solve {args.equation} requires {', '.join(missing)}")
    return [_octonion(getattr(args, n)) for n in names]


def cmd_solve(args, out) -> int:
    eq = args.equation
    if eq == "sim":
        a, b = _need(args, "a", "b")
        sol = olinsolve.solve_sim(a, b)
    elif eq == "commutator":
        a, b = _need(args, "a", "b")
        sol = olinsolve.solve_commutator(a, b)
    elif eq == "conj":
        a, b = _need(args, "a", "b")
        sol = olinsolve.solve_conj(a, b)
    elif eq == "sylvester":
        a, b, c = _need(args, "a", "b", "c")
        sol = olinsolve.solve_sylvester(a, b, c)
    else:
        a, b, c = _need(args, "a", "b", "c")
        sol = olinsolve.solve_assoc(a, b, c, args.form)
    _print_solution(sol, out)
    return EXIT_OK


def cmd_matsolve(args, out) -> int:
    form = MatrixEquation(args.eq)
    a = _read_matrix(args.a)
    b = _read_matrix(args.b) if args.b else None
    rhs = _read_matrix(args.rhs)
    sol = solve_matrix_equation(form, a, rhs, b)
    if not sol.solvable:
        print("solvable: false", file=out)
        print(f"defect: {format_real(sol.residual)}", file=out)
        return EXIT_UNSOLVABLE
    text = sol.particular.to_json()
    if args.out:
        Path(args.out).write_text(text + "\n")
    print("solvable: true", file=out)
    print(f"residual: {format_real(sol.residual)}", file=out)
    print(f"null_space_dim: {sol.nullity}", file=out)
    if not args.out:
        print(text, file=out)
    return EXIT_OK


def cmd_eig(args, out) -> int:
    if args.census is not None:
        if args.input:
            raise UsageError("--census and --input are mutually exclusive")
        try:
            census = multiplicity_census(args.census, args.trials, args.seed)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        print("m,trial,groups,multiplicity_pattern,max_residual", file=out)
        for line in census.csv_lines():
            print(line, file=out)
        return EXIT_OK
    if not args.input:
        raise UsageError("eig requires --input FILE (or --census M)")
    report = hermitian_eigen(_read_matrix(args.input), args.group_tol)
    if args.json:
        print(report.to_json(), file=out)
    elif args.csv:
        print("value,multiplicity", file=out)
        for v, k in report.groups:
            print(f"{format_real(v)},{k}", file=out)
    else:
        print(format_groups(report), file=out)
        print(f"max residual: {format_real(report.max_residual)}", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    names = SUITES if args.suite == "all" else (args.suite,)
    failures = 0
    for i, name in enumerate(names):
        result = run_suite(name, args.trials, args.seed, args.tol)
        if i:
            print(file=out)
        print(format_result(result), file=out)
        failures += result.failures
    return EXIT_OK if failures == 0 else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="octorep",
        description="Octonion arithmetic, real matrix representations, linear solvers and identity checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mul", help="multiply two octonion literals")
    p.add_argument("--a", required=True, help="8 comma-separated reals")
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("rep", help="print the left or right 8x8 representation")
    p.add_argument("--kind", choices=("left", "right"), required=True)
    p.add_argument("--a", required=True)
    p.set_defaults(func=cmd_rep)

    p = sub.add_parser("solve", help="solve a scalar octonion equation")
    p.add_argument("equation", choices=("sim", "commutator", "conj", "sylvester", "assoc"))
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--c")
    p.add_argument("--form", choices=ASSOC_FORMS, default=ASSOC_FORMS[0],
                   help="left-hand side of the associator equation")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("matsolve", help="solve a linear octonion matrix equation")
    p.add_argument("--eq", required=True, choices=[f.value for f in MatrixEquation])
    p.add_argument("--a", required=True, help="JSON matrix file")
    p.add_argument("--b", help="JSON matrix file (second coefficient)")
    p.add_argument("--rhs", required=True, help="JSON matrix file")
    p.add_argument("--out", help="where to write the solution (stdout when omitted)")
    p.set_defaults(func=cmd_matsolve)

    p = sub.add_parser("eig", help="real eigenvalues of a Hermitian octonion matrix")
    p.add_argument("--input", help="JSON matrix file")
    p.add_argument("--group-tol", type=float, default=None)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    p.add_argument("--census", type=int, metavar="M", help="emit a multiplicity census CSV for random m x m input")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_eig)

    p = sub.add_parser("verify", help="run a seeded identity suite")
    p.add_argument("--suite", required=True, choices=SUITES + ("all",))
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=None, help="replace every identity tolerance")
    p.set_defaults(func=cmd_verify)
    return parser


_LITERAL_FLAGS = ("--a", "--b", "--c")
_NEGATIVE_LITERAL = re.compile(r"^-[\d.]")


def attach_negative_literals(argv: list[str]) -> list[str]:
    """Rewrite ``--a -1,0,...`` as ``--a=-1,0,...`` so argparse does not read a flag."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _LITERAL_FLAGS and i + 1 < len(argv) and _NEGATIVE_LITERAL.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    argv = attach_negative_literals(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = default_seed()
        return args.func(args, out)
    except UsageError as exc:
        print(f"octorep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DimensionError, DegenerateInputError, NotHermitianError, UnsupportedSizeError) as exc:
        print(f"octorep: error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
