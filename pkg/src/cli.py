import argparse
import sys
from typing import List, Optional, Sequence

import sentry_sdk

from src import cohort, data_io, indices, reports, sequences
from src.utils import constants, custom_logging
from src.utils.errors import EngineError

logger = custom_logging.setup_logging(__name__)

ALL_INDICES = "all"


def _vector(text: str) -> List[int]:
    if not text.strip():
        return []
    counts = []
    for part in text.split(","):
        part = part.strip()
        if not data_io.INTEGER_PATTERN.match(part):
            raise argparse.ArgumentTypeError(f"{part!r} is not an integer citation count")
        counts.append(int(part))
    return counts


def _measure(text: str) -> str:
    if text not in constants.MEASURES:
        raise argparse.ArgumentTypeError(
            f"unknown measure {text!r}; valid measures: {', '.join(constants.MEASURES)}"
        )
    return text


def _measure_list(text: str) -> List[str]:
    measures = [_measure(part.strip()) for part in text.split(",")]
    if len(set(measures)) != len(measures):
        raise argparse.ArgumentTypeError(f"measures repeat in {text!r}")
    return measures


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text} must be >= 0")
    return value


def _positive(text: str) -> int:
    value = _non_negative(text)
    if value == 0:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _output_options() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("output")
    emit = group.add_mutually_exclusive_group()
    emit.add_argument(
        "--emit",
        choices=constants.OUTPUT_FORMATS,
        default=constants.MARKDOWN,
        help="Report format (default: markdown).",
    )
    for fmt in constants.OUTPUT_FORMATS:
        emit.add_argument(f"--{fmt}", dest="emit", action="store_const", const=fmt, help=f"Same as --emit {fmt}.")
    group.add_argument(
        "--precision",
        type=_non_negative,
        default=None,
        help=f"Decimals in markdown reports (default: {constants.DISPLAY_PRECISION}).",
    )
    group.add_argument(
        "-o",
        "--output",
        type=str,
        default=None,
        help="File to write the report to. If not provided, the report goes to stdout.",
    )
    return parser


def _input_options() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("input")
    group.add_argument(
        "--format",
        choices=constants.INPUT_FORMATS,
        default=None,
        help="Input format. Inferred from the file extension when omitted; required for stdin.",
    )
    strictness = group.add_mutually_exclusive_group()
    strictness.add_argument(
        "--strict", dest="strict", action="store_true", default=True, help="Reject unknown fields (default)."
    )
    strictness.add_argument(
        "--lenient", dest="strict", action="store_false", help="Keep unknown fields instead of rejecting them."
    )
    return parser


def _get_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="run.py",
        description="Compute h-index, EM-index and EM′-index sequences and compare scholars by them.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {constants.APP_VERSION}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="Log more (-vv for extraction traces).")
    parser.add_argument("-q", "--quiet", action="store_true", help="Log errors only.")

    inputs, outputs = _input_options(), _output_options()
    commands = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    index = commands.add_parser(
        "index",
        parents=[inputs, outputs],
        help="Indices of one citation vector, or career indices of an author matrix.",
    )
    source = index.add_mutually_exclusive_group(required=True)
    source.add_argument("--vector", type=_vector, help="Comma-separated citation counts, e.g. 9,6,1.")
    source.add_argument("--matrix", type=str, help="Author matrix document; its per-publication totals are used.")
    index.add_argument("--author", type=str, default=None, help="Author name for CSV matrices.")
    index.set_defaults(handler=_cmd_index)

    sequence = commands.add_parser(
        "sequence", parents=[inputs, outputs], help="Per-year indices and sequence values of an author matrix."
    )
    sequence.add_argument("matrix", type=str, help="Author matrix document (json or csv), '-' for stdin.")
    sequence.add_argument(
        "--index", choices=[*constants.INDICES, ALL_INDICES], default=ALL_INDICES, help="Index to report."
    )
    sequence.add_argument("--author", type=str, default=None, help="Author name for CSV matrices.")
    sequence.set_defaults(handler=_cmd_sequence)

    cohort_parser = commands.add_parser("cohort", help="Rank, correlate or build cohorts of authors.")
    cohort_commands = cohort_parser.add_subparsers(dest="cohort_command", metavar="ACTION", required=True)

    rank = cohort_commands.add_parser("rank", parents=[inputs, outputs], help="Rank a cohort by one measure.")
    rank.add_argument("cohort", type=str, help="Cohort document (json or csv), '-' for stdin.")
    rank.add_argument("--by", type=_measure, required=True, help=f"One of: {', '.join(constants.MEASURES)}.")
    rank.set_defaults(handler=_cmd_cohort_rank)

    correlate = cohort_commands.add_parser(
        "correlate", parents=[inputs, outputs], help="Spearman rank correlation between measures."
    )
    correlate.add_argument("cohort", type=str, help="Cohort document (json or csv), '-' for stdin.")
    correlate.add_argument(
        "--measures",
        type=_measure_list,
        default=[constants.H_SEQUENCE, constants.EM_SEQUENCE, constants.EM_PRIME_SEQUENCE],
        help="Comma-separated measures (default: the three sequences).",
    )
    correlate.set_defaults(handler=_cmd_cohort_correlate)

    build = cohort_commands.add_parser(
        "build", parents=[inputs, outputs], help="Compute a cohort document from author matrices."
    )
    build.add_argument("matrices", nargs="+", type=str, help="Author matrix documents.")
    build.add_argument(
        "--first-id", type=_non_negative, default=1, help="author_id of the first document that carries none."
    )
    build.set_defaults(handler=_cmd_cohort_build)

    compare = commands.add_parser(
        "compare", parents=[inputs, outputs], help="Compare authors year by year over their careers."
    )
    compare.add_argument("matrices", nargs="+", type=str, help="Author matrix documents.")
    compare.add_argument("--index", choices=constants.INDICES, default=constants.EM_INDEX, help="Index to compare.")
    compare.add_argument("--years", type=_positive, default=None, help="Only the first N career years.")
    compare.set_defaults(handler=_cmd_compare)

    return parser


def _load_matrix(args: argparse.Namespace, path: str) -> sequences.CitationMatrix:
    return data_io.load_author_matrix(path, args.format, args.strict, author=getattr(args, "author", None))


def _cmd_index(args: argparse.Namespace):
    if args.vector is not None:
        return indices.describe_vector(args.vector)
    return indices.describe_vector(sequences.publication_totals(_load_matrix(args, args.matrix)))


def _cmd_sequence(args: argparse.Namespace):
    selected = constants.INDICES if args.index == ALL_INDICES else [args.index]
    return reports.sequence_report(_load_matrix(args, args.matrix), selected)


def _cmd_cohort_rank(args: argparse.Namespace):
    return cohort.rank_table(data_io.load_cohort(args.cohort, args.format, args.strict), args.by)


def _cmd_cohort_correlate(args: argparse.Namespace):
    return cohort.correlation_matrix(data_io.load_cohort(args.cohort, args.format, args.strict), args.measures)


def _cmd_cohort_build(args: argparse.Namespace):
    return cohort.build_cohort([_load_matrix(args, path) for path in args.matrices], args.first_id)


def _cmd_compare(args: argparse.Namespace):
    profiles = [sequences.sequence_profile(_load_matrix(args, path)) for path in args.matrices]
    return sequences.compare_components(profiles, args.index, args.years)


def _init_sentry() -> None:
    if constants.SENTRY_DSN:
        sentry_sdk.init(
            dsn=constants.SENTRY_DSN,
            environment=constants.SENTRY_ENVIRONMENT,
            release=constants.APP_VERSION,
        )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _get_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # usage errors exit 2, --help and --version exit 0
        return e.code if isinstance(e.code, int) else constants.EXIT_VALIDATION

    custom_logging.set_verbosity(args.verbose, args.quiet)
    _init_sentry()
    logger.debug(f"running {args.command} with {vars(args)}")

    try:
        result = args.handler(args)
        reports.emit(reports.write_report(result, args.emit, args.precision), args.output)
    except EngineError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"error: {e.strerror or e}: {e.filename or ''}".rstrip(": "), file=sys.stderr)
        return constants.EXIT_IO
    except Exception as e:
        sentry_sdk.capture_exception(e)
        raise

    return constants.EXIT_OK
