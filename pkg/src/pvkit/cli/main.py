"""Command-line entry point: ``pvkit run <file|-> [--json] [--trace] [--seed N] [--degree-cap N]``."""

from __future__ import annotations

import argparse
import sys

from ..errors import PvkitError
from ..rsolve import DEFAULT_DEGREE_CAP
from .parser import parse_program
from .session import Session, canonical_json


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def build_parser():
    p = _Parser(prog="pvkit", description="Picard-Vessiot rings and Galois groups of difference systems.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    run = sub.add_parser("run", help="run a DSL script")
    run.add_argument("file", help="script path, or - for stdin")
    run.add_argument("--json", action="store_true", help="one canonical JSON report per line")
    run.add_argument("--trace", action="store_true", help="include certificate traces in text output")
    run.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")
    run.add_argument("--degree-cap", type=int, default=DEFAULT_DEGREE_CAP, help="numerator degree cap for the solver")
    return p


def emit(report, as_json=False, trace=False, out=sys.stdout):
    if as_json:
        print(canonical_json(report.to_json()), file=out)
        return
    print(f"> {report.command}", file=out)
    for line in report.lines:
        print(f"  {line}", file=out)
    if trace:
        for line in report.trace:
            print(f"    | {line}", file=out)
        print(f"    | {report.timing * 1000:.1f} ms", file=out)


def run_text(text, as_json=False, trace=False, seed=0, degree_cap=DEFAULT_DEGREE_CAP, out=None, err=None):
    """Run a script; returns the exit code (0 ok, 1 usage, 2 domain error)."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        commands = parse_program(text)
    except PvkitError as exc:
        print(f"error: {exc}", file=err)
        return exc.exit_code
    session = Session(seed=seed, degree_cap=degree_cap)
    for cmd in commands:
        try:
            report = session.run(cmd)
        except PvkitError as exc:
            msg = str(exc)
            if not msg.startswith("line "):
                msg = f"line {cmd.line}: {msg}"
            print(f"error: {msg}", file=err)
            return exc.exit_code
        emit(report, as_json, trace, out)
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.file == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    return run_text(text, args.json, args.trace, args.seed, args.degree_cap)


if __name__ == "__main__":
    sys.exit(main())
