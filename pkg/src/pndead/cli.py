"""Command-line entry point.

Exit status: 0 when every requested result is fully known, 2 when some
cell is unknown ('.'), 1 on usage, input or internal errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import codec
from .analysis import ENGINES, AnalysisReport, analyze
from .bdd import NodeLimitExceeded, NotApplicable
from .explicit import Budget
from .net import DEFAULT_TOKEN_CAP, NetError
from .netio import parse
from .tristate import SoundnessError

TIMEOUT_ENV = "PNDEAD_TIMEOUT"

ANALYSES = (
    ("dead_places", "dead-places", ".dp"),
    ("dead_transitions", "dead-transitions", ".dt"),
    ("concurrent_places", "concurrent-places", ".cp"),
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="pndead",
        description="Dead places, dead transitions and concurrent places of a P/T net.",
        epilog=f"The {TIMEOUT_ENV} environment variable sets the default for --timeout (seconds).",
    )
    p.add_argument("input", nargs="?", default="-", help="net file (PNML or text format); '-' reads stdin")
    p.add_argument("--dead-places", action="store_true", help="write the dead-places vector (.dp)")
    p.add_argument("--dead-transitions", action="store_true", help="write the dead-transitions vector (.dt)")
    p.add_argument("--concurrent-places", action="store_true", help="write the concurrent-places half-matrix (.cp)")
    p.add_argument("--format", choices=("pnml", "text"), help="input format (default: guessed from content)")
    p.add_argument("--engine", choices=ENGINES, default="auto")
    p.add_argument("--timeout", type=_positive_float, metavar="SECONDS", help="wall-clock budget")
    p.add_argument("--max-states", type=_positive_int, metavar="N", help="stop after N explored markings")
    p.add_argument("--max-bdd-nodes", type=_positive_int, metavar="N", help="BDD node table limit")
    p.add_argument("--token-cap", type=_positive_int, default=DEFAULT_TOKEN_CAP, metavar="N",
                   help="largest token count per place before exploration is declared incomplete")
    p.add_argument("--reverse-order", action="store_true", help="reverse the BDD variable order")
    out = p.add_mutually_exclusive_group()
    out.add_argument("-o", "--output-dir", metavar="DIR", help="directory for the result files (default: .)")
    out.add_argument("--stdout", action="store_true", help="print labelled results on standard output")
    return p


def _env_timeout() -> float | None:
    raw = os.environ.get(TIMEOUT_ENV)
    if not raw:
        return None
    try:
        return _positive_float(raw)
    except (ValueError, argparse.ArgumentTypeError):
        raise UsageError(f"{TIMEOUT_ENV}={raw!r} is not a positive number") from None


def render(report: AnalysisReport, which: str) -> str:
    if which == "dead-places":
        return codec.vector_text(report.dead_places)
    if which == "dead-transitions":
        return codec.vector_text(report.dead_transitions)
    if report.n_places == 0:
        return ""
    return codec.matrix_text(report.concurrent)


def summary(report: AnalysisReport, which: str) -> str:
    c = report.counts(which)
    state = "complete" if c["."] == 0 else "partial"
    return (f"{which}: 1={c['1']} 0={c['0']} .={c['.']} "
            f"states={report.states_visited} engine={report.engine} {state}")


def run(argv: list[str] | None = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        requested = [(label, ext) for attr, label, ext in ANALYSES if getattr(args, attr)]
        if not requested:
            raise UsageError("request at least one of --dead-places, --dead-transitions, --concurrent-places")
        timeout = args.timeout if args.timeout is not None else _env_timeout()
    except UsageError as exc:
        print(f"pndead: {exc}", file=stderr)
        return 1

    try:
        if args.input == "-":
            data = stdin.buffer.read() if hasattr(stdin, "buffer") else stdin.read()
            stem = "stdin"
        else:
            data = Path(args.input).read_bytes()
            stem = Path(args.input).stem
        net = parse(data, args.format, args.token_cap)
    except (OSError, NetError, UnicodeDecodeError) as exc:
        print(f"pndead: cannot read net: {exc}", file=stderr)
        return 1

    budget = Budget(max_states=args.max_states, wall_clock=timeout, max_bdd_nodes=args.max_bdd_nodes)
    try:
        report = analyze(net, args.engine, budget, reverse_order=args.reverse_order)
    except (NotApplicable, NodeLimitExceeded) as exc:
        print(f"pndead: bdd engine cannot handle this net: {exc}", file=stderr)
        return 1
    except SoundnessError as exc:
        print(f"pndead: internal error: {exc}", file=stderr)
        return 1

    for note in report.notes:
        print(f"pndead: {note}", file=stderr)

    to_stdout = args.stdout or (args.input == "-" and args.output_dir is None)
    try:
        for label, ext in requested:
            text = render(report, label)
            if to_stdout:
                stdout.write(f"# {label}\n{text}")
            else:
                target = Path(args.output_dir or ".") / (stem + ext)
                with open(target, "w", encoding="ascii", newline="\n") as fh:
                    fh.write(text)
            print(summary(report, label), file=stderr)
    except OSError as exc:
        print(f"pndead: cannot write results: {exc}", file=stderr)
        return 1

    unknown = any(report.counts(label)["."] for label, _ in requested)
    return 2 if unknown else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
