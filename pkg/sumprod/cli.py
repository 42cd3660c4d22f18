"""
Command-line front end.

Usage:
    sumprod classify 35
    sumprod theorem 1 1 4 --json
    sumprod corollary 1 7
    sumprod search-cubic 27 --bound 10
    sumprod search-system 1 1 5 --height 4
    sumprod search-guy 36 --bound 5
    sumprod sylvester 1 2 3 6 1 1 1
    sumprod reduce-system 1/2 1/2 4 1 1 5
    sumprod reduce-guy 1 2 3
    sumprod ratio 1 2 4
    sumprod table --max 100 --csv
    sumprod selftest --level quick
    sumprod --batch queries.txt

Exit codes: 0 success, 1 internal error (or failed selftest),
2 malformed arguments, 3 domain or precondition error.
"""

import argparse
import contextlib
import csv
import io
import json
import re
import sys
from fractions import Fraction
from typing import Any, Optional, TextIO

from pydantic import BaseModel

from sumprod import classify, search, sylvester
from sumprod.config import DEFAULT_FACTOR_LIMIT, configure
from sumprod.exceptions import ApplicationError, QuerySyntaxError
from sumprod.logging_config import configure_logging, get_child_logger, tracer
from sumprod.models.algebra import RatioSolution
from sumprod.models.query import QueryRecord, SelftestLevel
from sumprod.models.search import SearchReport
from sumprod.models.types import format_rational, parse_rational
from sumprod.models.verdict import NForm, Verdict, VerdictStatus
from sumprod.selftest import CHECKS, run_selftest

# Create a child logger for this module
logger = get_child_logger("cli")

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

TABLE_HEADER = ["n", "covered", "form", "k", "m"]

_GLOBAL_KEYS = {
    "command", "json", "batch", "workers", "factor_limit", "log_level",
    "monitor_connection_string", "csv",
}


class _QueryParser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so batch lines can fail alone."""

    commands: tuple[str, ...] = ()

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # -1/2 is a positional rational, not an option
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")

    def error(self, message):
        raise QuerySyntaxError(f"{self.prog}: {message}")


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _level_arg(text: str) -> SelftestLevel:
    try:
        return SelftestLevel(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"level must be quick or full, got {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    p = _QueryParser(
        prog="sumprod",
        description="Non-existence certificates and exact searches for xyz = ab^2, x + y + z = abc",
    )
    p.add_argument("--batch", metavar="FILE", help="Run one query per line of FILE ('-' for stdin), JSON out")
    p.add_argument("--workers", type=int, default=1, help="Threads used by the searches (default: 1)")
    p.add_argument(
        "--factor-limit", type=int, default=DEFAULT_FACTOR_LIMIT,
        help="Largest trial divisor before giving up (default: 2^32)",
    )
    p.add_argument(
        "--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Log level for the stderr log (default: WARNING)",
    )
    p.add_argument("--monitor-connection-string", help="Export telemetry to Azure Monitor")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit a JSON query record")

    sub = p.add_subparsers(dest="command")

    s = sub.add_parser("classify", parents=[common], help="Which covered family n belongs to")
    s.add_argument("n", type=int)

    s = sub.add_parser("theorem", parents=[common], help="Check the theorem conditions for (a, b, c)")
    s.add_argument("a", type=int)
    s.add_argument("b", type=int)
    s.add_argument("c", type=int)

    s = sub.add_parser("corollary", parents=[common], help="Check the corollary conditions for (a, n)")
    s.add_argument("a", type=int)
    s.add_argument("n", type=int)

    s = sub.add_parser("search-cubic", parents=[common], help="Search x^3 + y^3 + n^2 z^3 = nxyz")
    s.add_argument("n", type=int)
    s.add_argument("--bound", type=int, required=True)

    s = sub.add_parser("search-system", parents=[common], help="Search xyz = ab^2, x + y + z = abc")
    s.add_argument("a", type=int)
    s.add_argument("b", type=int)
    s.add_argument("c", type=int)
    s.add_argument("--height", type=int, required=True)

    s = sub.add_parser("search-guy", parents=[common], help="Search (x + y + z)^3 = n xyz")
    s.add_argument("n", type=int)
    s.add_argument("--bound", type=int, required=True)

    s = sub.add_parser("sylvester", parents=[common], help="Apply the Sylvester transformation")
    for name in ("A", "B", "C", "D", "alpha", "beta", "gamma"):
        s.add_argument(name, type=_rational_arg)

    s = sub.add_parser("reduce-system", parents=[common], help="Map a system solution to the cubic")
    for name in ("x", "y", "z"):
        s.add_argument(name, type=_rational_arg)
    for name in ("a", "b", "c"):
        s.add_argument(name, type=int)

    s = sub.add_parser("reduce-guy", parents=[common], help="Map a Guy representation to the cubic")
    for name in ("x", "y", "z"):
        s.add_argument(name, type=int)

    s = sub.add_parser("ratio", parents=[common], help="Turn x/y + y/z + z/x = n into a system solution")
    for name in ("x", "y", "z"):
        s.add_argument(name, type=int)

    s = sub.add_parser("table", parents=[common], help="Emit the covered-class table for n <= N")
    s.add_argument("--max", dest="max_n", type=int, required=True)
    s.add_argument("--csv", action="store_true", help="CSV output (the default text format)")

    s = sub.add_parser("selftest", parents=[common], help="Run the verification suites")
    s.add_argument("--level", type=_level_arg, default=SelftestLevel.QUICK)
    s.add_argument("--only", nargs="+", choices=sorted(CHECKS), help="Run only these checks")

    p.commands = tuple(sub.choices)
    return p


def _fmt(value) -> str:
    return str(format_rational(value)) if isinstance(value, Fraction) else str(value)


def _fmt_triple(triple) -> str:
    return "(" + ", ".join(_fmt(v) for v in triple) + ")"


def _form_text(form: NForm) -> str:
    if not form.covered:
        return "not covered"
    witnesses = f"m={form.m} k={form.k}" if form.m is not None else f"k={form.k}"
    return f"covered, form {form.form.value}, {witnesses}"


def _verdict_text(verdict: Verdict) -> str:
    query = " ".join(f"{key}={value}" for key, value in verdict.query.items())
    head = f"{query}: n={verdict.n}, {_form_text(verdict.n_form)}"
    if verdict.status is VerdictStatus.PROVED_NO_SOLUTIONS:
        return f"{head}; matched {', '.join(verdict.matched)}; proved: no positive rational solutions"
    return f"{head}; no condition matched; status unknown"


def _report_text(report: SearchReport) -> str:
    params = " ".join(f"{key}={value}" for key, value in {**report.parameters, **report.bounds}.items())
    lines = [
        f"search-{report.equation.value} {params}: {len(report.solutions)} solution(s), "
        f"{report.triples_examined} candidates, {report.elapsed_seconds:.3f}s"
    ]
    primitive = set(report.primitive_solutions)
    for solution in report.solutions:
        tag = " primitive" if solution in primitive else ""
        lines.append(f"  {_fmt_triple(solution)}{tag}")
    return "\n".join(lines)


def _table_csv(rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(TABLE_HEADER)
    for row in rows:
        writer.writerow(
            [
                row.n,
                "true" if row.covered else "false",
                row.form.value if row.form else "",
                "" if row.k is None else row.k,
                "" if row.m is None else row.m,
            ]
        )
    return buffer.getvalue().rstrip("\n")


def execute(args: argparse.Namespace) -> tuple[Any, str, int]:
    """
    Run the library call for one parsed query.

    Returns:
        (payload, human-readable text, exit code)
    """
    command = args.command
    if command == "classify":
        form = classify.classify_n(args.n)
        return form, f"n={args.n}: {_form_text(form)}", EXIT_OK
    if command == "theorem":
        verdict = classify.check_theorem(args.a, args.b, args.c)
        return verdict, _verdict_text(verdict), EXIT_OK
    if command == "corollary":
        verdict = classify.check_corollary(args.a, args.n)
        return verdict, _verdict_text(verdict), EXIT_OK
    if command == "search-cubic":
        report = search.search_cubic(args.n, args.bound)
        return report, _report_text(report), EXIT_OK
    if command == "search-system":
        report = search.search_system(args.a, args.b, args.c, args.height)
        return report, _report_text(report), EXIT_OK
    if command == "search-guy":
        report = search.search_guy(args.n, args.bound)
        return report, _report_text(report), EXIT_OK
    if command == "sylvester":
        triple = sylvester.sylvester_transform(
            args.A, args.B, args.C, args.D, args.alpha, args.beta, args.gamma
        )
        return triple, f"f={_fmt(triple.f)} g={_fmt(triple.g)} h={_fmt(triple.h)}", EXIT_OK
    if command in ("reduce-system", "reduce-guy"):
        if command == "reduce-system":
            solution = sylvester.reduce_system_to_cubic(args.x, args.y, args.z, args.a, args.b, args.c)
        else:
            solution = sylvester.reduce_guy_to_cubic(args.x, args.y, args.z)
        text = (
            f"n={solution.n}: {_fmt_triple((solution.x, solution.y, solution.z))} primitive; "
            f"raw {_fmt_triple(solution.raw)}"
        )
        return solution, text, EXIT_OK
    if command == "ratio":
        (x, y, z), n = sylvester.ratio_triple(args.x, args.y, args.z)
        return RatioSolution(x=x, y=y, z=z, n=n), f"x/y, y/z, z/x = {_fmt_triple((x, y, z))}; n={n}", EXIT_OK
    if command == "table":
        rows = classify.table_rows(args.max_n)
        return rows, _table_csv(rows), EXIT_OK
    if command == "selftest":
        report = run_selftest(args.level, only=args.only)
        lines = [
            f"{'PASS' if c.passed else 'FAIL'} {c.name} ({c.cases} cases)"
            + (f": {c.detail}" if c.detail else "")
            for c in report.checks
        ]
        lines.append(f"selftest {report.level.value}: {'passed' if report.passed else 'FAILED'}")
        return report, "\n".join(lines), EXIT_OK if report.passed else EXIT_INTERNAL
    raise QuerySyntaxError("a subcommand is required")


def _params(args: argparse.Namespace) -> dict[str, Any]:
    params = {}
    for key, value in vars(args).items():
        if key in _GLOBAL_KEYS or value is None:
            continue
        if isinstance(value, Fraction):
            value = format_rational(value)
        elif isinstance(value, SelftestLevel):
            value = value.value
        params[key] = value
    return params


def _dump(payload: Any) -> Any:
    if isinstance(payload, BaseModel):
        return payload.model_dump(mode="json")
    if isinstance(payload, list):
        return [_dump(item) for item in payload]
    return payload


def _command_of(parser: argparse.ArgumentParser, argv: list[str]) -> str:
    """Subcommand named in argv, for records of queries that do not parse."""
    known = getattr(parser, "commands", ())
    return next((token for token in argv if token in known), "")


def run_query(parser: argparse.ArgumentParser, argv: list[str]) -> tuple[QueryRecord, str]:
    """Parse and execute one query, turning failures into a record with a status code."""
    command = _command_of(parser, argv)
    with tracer.start_as_current_span("cli_query") as span:
        span.set_attribute("command", command)
        try:
            try:
                # --help inside a batch line must not print or exit
                with contextlib.redirect_stdout(io.StringIO()):
                    args = parser.parse_args(argv)
            except SystemExit as e:
                raise QuerySyntaxError("--help is not available inside a batch query") from e
            command = args.command or command
            if args.batch:
                raise QuerySyntaxError("--batch cannot be nested inside a batch query")
            if args.command is None:
                raise QuerySyntaxError("a subcommand is required")
            payload, text, status = execute(args)
            record = QueryRecord(command=args.command, params=_params(args), result=_dump(payload), status=status)
            return record, text
        except QuerySyntaxError as e:
            span.set_attribute("error", True)
            span.set_attribute("error.type", "query_syntax")
            return QueryRecord(command=command, params={}, status=EXIT_USAGE, error=str(e)), ""
        except ApplicationError as e:
            span.set_attribute("error", True)
            span.set_attribute("error.type", type(e).__name__)
            logger.warning("Query rejected", extra={"command": command, "error": str(e)})
            return QueryRecord(command=command, params={}, status=EXIT_DOMAIN, error=str(e)), ""
        except Exception as e:
            span.set_attribute("error", True)
            span.set_attribute("error.type", type(e).__name__)
            logger.error(
                "Unexpected error while running query",
                extra={"command": command, "error_type": type(e).__name__},
                exc_info=True,
            )
            return QueryRecord(command=command, params={}, status=EXIT_INTERNAL, error=f"internal error: {e}"), ""


def _run_batch(parser: argparse.ArgumentParser, source: TextIO, stdout: TextIO) -> int:
    worst = EXIT_OK
    for line in source:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        record, _ = run_query(parser, line.split())
        stdout.write(record.model_dump_json() + "\n")
        worst = max(worst, record.status)
    return worst


def run(argv: Optional[list[str]] = None, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """
    Entry point: parse global flags, then run a single query or a batch.

    Returns:
        The process exit code
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()

    try:
        args = parser.parse_args(argv)
    except QuerySyntaxError as e:
        stderr.write(parser.format_usage())
        stderr.write(f"{e}\n")
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return e.code if isinstance(e.code, int) else EXIT_OK

    try:
        configure(
            factor_limit=args.factor_limit,
            workers=args.workers,
            log_level=args.log_level,
            monitor_connection_string=args.monitor_connection_string,
        )
    except ValueError as e:
        stderr.write(f"sumprod: invalid settings: {e}\n")
        return EXIT_USAGE
    configure_logging(args.log_level, args.monitor_connection_string)

    if args.batch:
        if args.command is not None:
            stderr.write("sumprod: --batch cannot be combined with a subcommand\n")
            return EXIT_USAGE
        try:
            if args.batch == "-":
                return _run_batch(parser, sys.stdin, stdout)
            with open(args.batch, encoding="utf-8") as source:
                return _run_batch(parser, source, stdout)
        except OSError as e:
            stderr.write(f"sumprod: cannot read batch file: {e}\n")
            return EXIT_USAGE

    if args.command is None:
        stderr.write(parser.format_usage())
        stderr.write("sumprod: a subcommand or --batch is required\n")
        return EXIT_USAGE

    record, text = run_query(parser, argv)
    if record.error:
        stderr.write(f"sumprod: {record.error}\n")
        return record.status

    if getattr(args, "json", False):
        if args.command == "table":
            stdout.write(json.dumps(record.result) + "\n")
        else:
            stdout.write(record.model_dump_json() + "\n")
    else:
        stdout.write(text + "\n")
    return record.status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
