"""
Command line front end.

Exit codes: 0 success, 1 unreadable or ill-formed input and bad usage,
2 internal invariant violation, 3 the oracle saw a change in satisfiability.
"""

import argparse
import logging
import os
import sys
from typing import Optional, Tuple

from .choldownload import ProblemDownload
from .cholparser import ParseError, parse_problem, print_problem
from .core import ClauseSet, HolTypeError, InvariantViolation, UsageError
from .hlbe import DEFAULT_DEPTH
from .hoprep import DEFAULT_MAX_ROUNDS, TECHNIQUES, PipelineConfig, run_techniques
from .modelcheck import FragmentUnsupported, check_equisatisfiable
from .pe import DEFAULT_KTOL
from .report import Report, emit_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INVARIANT = 2
EXIT_MISMATCH = 3


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, "%s: error: %s\n" % (self.prog, message))


def _ktol(value: str) -> float:
    if value.lower() in ("inf", "infinity"):
        return float("inf")
    try:
        ktol = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a natural number or inf, got %s" % value)
    if ktol < 0:
        raise argparse.ArgumentTypeError("expected a natural number or inf, got %s" % value)
    return ktol


def _techniques(value: str) -> Tuple[str, ...]:
    names = tuple(name.strip() for name in value.split(",") if name.strip())
    for name in names:
        if name != "all" and name not in TECHNIQUES:
            raise argparse.ArgumentTypeError(
                "unknown technique %s, expected one of %s or all" % (name, ", ".join(TECHNIQUES))
            )
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="hoprep",
        description="Preprocess a higher-order clause set by eliminating literals, "
        "clauses and predicate symbols.",
    )
    parser.add_argument(
        "--techniques",
        type=_techniques,
        default=("all",),
        help="comma separated list of %s, or all (default)" % ", ".join(TECHNIQUES),
    )
    parser.add_argument("--ktol", type=_ktol, default=DEFAULT_KTOL, help="growth tolerance, or inf")
    parser.add_argument("--hlbe-depth", type=int, default=DEFAULT_DEPTH)
    parser.add_argument("--max-rounds", type=int, default=DEFAULT_MAX_ROUNDS)
    parser.add_argument(
        "--check-ground",
        action="store_true",
        help="verify on ground inputs that satisfiability is preserved",
    )
    parser.add_argument("--stats", choices=("text", "json"), default="text")
    parser.add_argument("--output", help="write the problem here instead of stdout")
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("input", metavar="INPUT", help="problem file or URL")
    return parser


def _seed_from_env() -> Optional[int]:
    value = os.environ.get("HOPREP_SEED")
    if not value:
        return None
    try:
        return int(value)
    except ValueError:
        raise UsageError("HOPREP_SEED must be an integer, got %s" % value)


def _oracle(before: ClauseSet, after: ClauseSet, report: Report) -> bool:
    try:
        agree = check_equisatisfiable(before, after)
    except FragmentUnsupported as e:
        logger.warning("ground check skipped: %s", e)
        report.oracle = "skipped"
        return True
    report.oracle = "agree" if agree else "mismatch"
    return agree


def _write(data: bytes, path: Optional[str], stream) -> None:
    if path:
        with open(path, "wb") as f:
            f.write(data)
    else:
        stream.write(data)
        stream.flush()


def run_pipeline(cfg: PipelineConfig, input: str, http=None, stdout=None, stderr=None) -> int:
    """
    Load, preprocess and write one problem.

    :param cfg: pipeline settings
    :param input: problem file path or URL
    :param http: urllib3 pool for URL inputs
    :param stdout: binary stream for the problem when ``cfg.output`` is unset
    :param stderr: binary stream for the report when the problem goes to stdout
    :return: the exit code
    """
    stdout = stdout if stdout is not None else sys.stdout.buffer
    stderr = stderr if stderr is not None else sys.stderr.buffer

    try:
        _, clauses = parse_problem(ProblemDownload(http=http).data_from_source(input))
        result, report = run_techniques(clauses, cfg)
        if cfg.check_ground and not _oracle(clauses, result, report):
            logger.error("satisfiability changed on %s", input)
            return EXIT_MISMATCH
        _write(print_problem(result.signature, result), cfg.output, stdout)
    except InvariantViolation as e:
        logger.error("internal invariant violated: %s", e)
        return EXIT_INVARIANT
    except (ParseError, HolTypeError, UsageError, UnicodeDecodeError, IOError) as e:
        logger.error("%s: %s", input, e)
        return EXIT_ERROR

    if cfg.stats:
        _write(emit_report(report, cfg.stats), None, stdout if cfg.output else stderr)
    return EXIT_OK


def main(argv=None, http=None, stdout=None, stderr=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        cfg = PipelineConfig(
            techniques=args.techniques,
            ktol=args.ktol,
            hlbe_depth=args.hlbe_depth,
            max_rounds=args.max_rounds,
            check_ground=args.check_ground,
            seed=_seed_from_env(),
            output=args.output,
            stats=args.stats,
        )
    except UsageError as e:
        logger.error("%s", e)
        return EXIT_ERROR

    return run_pipeline(cfg, args.input, http=http, stdout=stdout, stderr=stderr)


if __name__ == "__main__":
    sys.exit(main())
