"""Command-line entry point."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import List, Optional

from backend.app.commands import COMMANDS
from backend.app.commands.common import common_arguments
from backend.app.config import settings
from backend.app.errors import BlindIdError, UsageError

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class CliParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors become UsageError (exit code 1)."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> CliParser:
    parser = CliParser(
        prog="kernel-bsi",
        description="Blind identification of impulse responses with a stable spline prior",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    parent = common_arguments()
    for command in COMMANDS:
        command.add_parser(subparsers, parent)
    return parser


def configure_logging(quiet: bool) -> None:
    level = getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO)
    if quiet:
        level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, force=True)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run one subcommand and map errors to exit codes.

    Returns:
        0 on success, 1 usage, 2 data or validation, 3 numerical failure
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(e.detail, file=sys.stderr)
        return e.exit_code

    configure_logging(args.quiet)
    logger.info(f"Running {args.command}")
    try:
        code = args.handler(args)
    except BlindIdError as e:
        logger.error(f"{args.command} failed ({type(e).__name__}): {e.detail}")
        return e.exit_code
    logger.info(f"{args.command} finished with exit code {code}")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
