"""The `wmm` command.

    wmm run SB.litmus --model TSO --engine both
    wmm run "$(wmm corpus)" --all-models --check-expect
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import TYPE_CHECKING

from wmm import __version__
from wmm.axiomatic import (
    ModelSyntaxError,
    UnknownIdentifierError,
    UnknownModelError,
    UnknownRelationError,
)
from wmm.helpers.utilities import APP_NAME, get_logger
from wmm.litmus import CorpusError, LitmusSyntaxError, LitmusValidationError, bundled_corpus_path

from ._exceptions import ConfigurationError, ExpectationError
from .configuration import ENGINES, FORMATS, RunConfig
from .runner import Runner

if TYPE_CHECKING:
    from collections.abc import Sequence

__all__ = ["build_parser", "main"]

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2

_USAGE_ERRORS = (
    ConfigurationError,
    ExpectationError,
    CorpusError,
    LitmusSyntaxError,
    LitmusValidationError,
    ModelSyntaxError,
    UnknownIdentifierError,
    UnknownModelError,
    UnknownRelationError,
    OSError,
    ValueError,
    TypeError,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=APP_NAME,
        description="Check litmus tests against weak memory models.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run litmus tests against models")
    run.add_argument("paths", nargs="*", help="litmus files or directories of litmus files")
    run.add_argument(
        "--model",
        dest="models",
        action="append",
        default=[],
        metavar="NAME|FILE",
        help="SC, TSO, ARM, ARMISH, RISCV, PIPELINE, or a model file (repeatable)",
    )
    run.add_argument("--all-models", action="store_true", help="run SC, TSO, ARM and RISCV")
    run.add_argument("--engine", choices=ENGINES, default="axiomatic")
    run.add_argument("--format", dest="output_format", choices=FORMATS, default="table")
    run.add_argument(
        "--check-expect",
        action="store_true",
        help="compare verdicts with the expect block of each test",
    )
    run.add_argument("--expect", choices=("yes", "no"), help="expected answer for every verdict")
    run.add_argument("--out", metavar="PATH", help="write the report to a file")
    run.add_argument("--config", metavar="PATH", help="load the run configuration from a JSON file")
    run.add_argument(
        "--strong-release-acquire",
        action="store_true",
        help="under PIPELINE, acquire loads also wait for earlier release stores",
    )
    run.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    commands.add_parser("corpus", help="print the directory of the bundled litmus corpus")
    return parser


def _configure_logging(*, verbose: bool) -> logging.Logger:
    logger = get_logger()
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
        logger.addHandler(handler)
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING)
    return logger


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.config:
        return RunConfig.load(Path(args.config))
    return RunConfig(
        tests=list(args.paths),
        models=list(args.models),
        engine=args.engine,
        output_format=args.output_format,
        check_expect=args.check_expect,
        expect=args.expect,
        all_models=args.all_models,
        out=args.out,
        strong_release_acquire=args.strong_release_acquire,
    )


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point of the `wmm` command.

    Args:
        argv: Command-line arguments without the program name. Defaults to `sys.argv[1:]`.

    Returns:
        int: 0 when everything matches, 1 on an expectation or engine mismatch,
            2 on usage, parse and model errors.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    if args.command == "corpus":
        sys.stdout.write(f"{bundled_corpus_path()}\n")
        return EXIT_OK

    logger = _configure_logging(verbose=args.verbose)
    try:
        config = _config_from_args(args)
        report = Runner(config, logger=logger).run()
        text = report.render(config.output_format)
        if config.out:
            Path(config.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    except _USAGE_ERRORS as e:
        sys.stderr.write(f"{APP_NAME}: error: {e}\n")
        return EXIT_USAGE
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
