"""``corotype`` command line.

Exit codes: 0 composed or residual, 1 input or composition error,
2 step limit reached, 3 strict audit failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import corpus
from .audit import OK, OUT_OF_BOUNDS, SKIPPED, out_of_bounds
from .core import CoroTypeError
from .engine import DEFAULT_STEP_LIMIT, compose
from .report import event_json, event_line, result_lines, result_record
from .syntax import parse_program

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_STEP_LIMIT = 2
EXIT_AUDIT = 3


@dataclass(frozen=True)
class RunConfig:
    input_path: Path
    step_limit: int = DEFAULT_STEP_LIMIT
    trace_mode: str = "none"
    audit_mode: str = "off"


def _read_program(path: Path):
    return parse_program(path.read_text(encoding="utf-8"))


def cmd_compose(config: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        program = _read_program(config.input_path)
        result = compose(program.types, config.step_limit, program.labels)
    except OSError as e:
        print(f"error: {e}", file=err)
        return EXIT_ERROR
    except CoroTypeError as e:
        print(f"error: {config.input_path}:{e}", file=err)
        return EXIT_ERROR

    if config.trace_mode == "text":
        for event in result.trace:
            print(event_line(event), file=out)
    elif config.trace_mode == "json":
        for event in result.trace:
            print(event_json(event), file=out)

    if config.trace_mode == "json":
        print(json.dumps(result_record(result), ensure_ascii=False), file=out)
    else:
        for line in result_lines(result):
            print(line, file=out)

    bad = out_of_bounds(result.audit)
    if config.audit_mode != "off":
        counts = {s: sum(v.status == s for v in result.audit) for s in (OK, SKIPPED, OUT_OF_BOUNDS)}
        for v in bad:
            print(f"audit: {v.describe()}", file=err)
        print("audit: " + ", ".join(f"{n} {s}" for s, n in counts.items()), file=err)
    if bad and config.audit_mode == "strict":
        return EXIT_AUDIT
    if result.kind == "step-limit":
        return EXIT_STEP_LIMIT
    return EXIT_OK


def cmd_check(path: Path, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        program = _read_program(path)
    except (OSError, CoroTypeError) as e:
        print(f"error: {path}:{e}", file=err)
        return EXIT_ERROR
    print(f"ok: {len(program.decls)} declarations, {len(program.labels)} labels", file=out)
    return EXIT_OK


def cmd_corpus(out=None, verbose: bool = False) -> int:
    out = out or sys.stdout
    failures = 0
    width = max(len(e.name) for e in corpus.ENTRIES)
    for entry in corpus.ENTRIES:
        try:
            result = entry.run()
            passed = entry.check(result)
            got = " / ".join(result_lines(result)[:1])
        except (OSError, CoroTypeError) as e:
            passed, got = False, f"error: {e}"
        failures += not passed
        print(f"{'PASS' if passed else 'FAIL'}  {entry.name:<{width}}  {got}", file=out)
        if verbose or not passed:
            print(f"      expected: {entry.expected}", file=out)
    print(f"{len(corpus.ENTRIES) - failures}/{len(corpus.ENTRIES)} corpus entries passed", file=out)
    return EXIT_OK if failures == 0 else EXIT_ERROR


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="corotype", description="Compose coroutine types.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compose", help="compose the coroutines declared in a .cot file")
    p.add_argument("file", type=Path)
    p.add_argument("--step-limit", type=_positive, default=DEFAULT_STEP_LIMIT)
    p.add_argument("--trace", choices=["text", "json"], default=None)
    p.add_argument("--audit", choices=["off", "warn", "strict"], default="off")

    p = sub.add_parser("check", help="parse and validate a .cot file")
    p.add_argument("file", type=Path)

    p = sub.add_parser("corpus", help="run the bundled example corpus")
    p.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "compose":
        config = RunConfig(args.file, args.step_limit, args.trace or "none", args.audit)
        return cmd_compose(config)
    if args.command == "check":
        return cmd_check(args.file)
    return cmd_corpus(verbose=args.verbose)


if __name__ == "__main__":
    sys.exit(main())
