"""Command-line interface.

    lingconsensus validate <problem>
    lingconsensus run <problem> [--alpha R] [--max-rounds N] [--out DIR] [--format json|csv]
    lingconsensus rank <problem> [--alpha R] [--max-rounds N]

Exit codes: 0 success, 1 validation error, 2 no consensus within the round
limit, 3 degenerate cell, 64 usage error.

A problem path that does not exist but names a bundled fixture
(``supply-chain.json``) resolves to the bundled copy.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .consensus import rank_alternatives, run_consensus
from .errors import DegenerateCellError, PanelTooSmallError, TraceWriteError, ValidationError
from .io import emit_trace, fixture_path, parse_problem, summary_document

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NOT_CONVERGED = 2
EXIT_DEGENERATE = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lingconsensus", description="Consensus reaching over 2-D uncertain linguistic evaluations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="parse and validate a problem file")
    p.add_argument("problem")

    for name, help_text in (("run", "run the consensus process"), ("rank", "run and print the final ranking")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("problem")
        p.add_argument("--alpha", type=float, help="aggregation exponent (overrides the file)")
        p.add_argument("--max-rounds", type=int, help="round limit (overrides the file)")
        if name == "run":
            p.add_argument("--out", help="directory for round documents and summary.json")
            p.add_argument("--format", choices=("json", "csv"), default="json")
    return parser


def _resolve(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    try:
        return fixture_path(p.name)
    except FileNotFoundError:
        return p


def _load(args):
    problem = parse_problem(_resolve(args.problem))
    overrides = {}
    if getattr(args, "alpha", None) is not None:
        overrides["alpha"] = args.alpha
    if getattr(args, "max_rounds", None) is not None:
        overrides["max_rounds"] = args.max_rounds
    return problem.replace(**overrides) if overrides else problem


def _cmd_validate(args, out) -> int:
    problem = _load(args)
    p, m, n = problem.shape
    print(f"ok: {m} alternatives x {n} attributes, {p} experts, scale l={problem.scale.l} z={problem.scale.z}", file=out)
    return EXIT_OK


def _cmd_run(args, out) -> int:
    problem = _load(args)
    result = run_consensus(problem)
    if args.out:
        written = emit_trace(result.reports, args.out, args.format, problem=problem, converged=result.converged)
        print(f"wrote {len(written)} files to {args.out}", file=out)
    summary = summary_document(result.reports, problem, result.converged)
    for report in result.reports:
        etas = ", ".join(f"{e}={v:.4f}" for e, v in zip(problem.experts, report.eta))
        print(f"round {report.round}: eta {etas}", file=out)
    status = "converged" if result.converged else "not converged"
    print(f"{status} after {summary['rounds']} rounds (alpha={problem.alpha:g}, max rounds={problem.max_rounds})", file=out)
    if not args.out:
        print(json.dumps(summary, indent=2), file=out)
    return EXIT_OK if result.converged else EXIT_NOT_CONVERGED


def _cmd_rank(args, out) -> int:
    problem = _load(args)
    result = run_consensus(problem)
    last = result.reports[-1]
    ranking = rank_alternatives(last.group_matrix, last.attribute_weights, problem.scale, problem.alternatives)
    width = max(len(str(a)) for a in problem.alternatives)
    print(f"{'rank':>4}  {'alternative':<{width}}  score", file=out)
    for pos, row in enumerate(ranking, start=1):
        print(f"{pos:>4}  {str(row.alternative):<{width}}  {row.score:.6f}", file=out)
    if not result.converged:
        print(f"warning: no consensus within {problem.max_rounds} rounds", file=out)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


COMMANDS = {"validate": _cmd_validate, "run": _cmd_run, "rank": _cmd_rank}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = _build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except DegenerateCellError as exc:
        print(f"degenerate cell: {exc}", file=err)
        return EXIT_DEGENERATE
    except (ValidationError, PanelTooSmallError) as exc:
        print(f"invalid problem: {exc}", file=err)
        return EXIT_VALIDATION
    except TraceWriteError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
