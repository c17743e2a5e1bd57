#!/usr/bin/env python3
"""
Hurwitz realizability toolkit - Main Entry Point
"""

import argparse
import logging
import sys
from typing import List, Optional

from hurwitz import __version__
from hurwitz.config import Config
from hurwitz.handlers import setup_handlers

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hurwitz",
        description="Decide, classify and enumerate branched covers of the sphere",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True
    setup_handlers(subparsers)
    return parser


def configure_logging(verbose: bool = False):
    # stdout carries results only
    logging.basicConfig(
        format=Config.LOG_FORMAT,
        level=logging.DEBUG if verbose else getattr(logging, Config.LOG_LEVEL.upper(), logging.INFO),
        stream=sys.stderr,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one command and return its exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return Config.EXIT_OK if e.code in (0, None) else Config.EXIT_USAGE

    configure_logging(args.verbose)
    try:
        logger.debug(f"Running {args.command}")
        return args.handler(args)
    except KeyboardInterrupt:
        logger.error("Interrupted")
        return Config.EXIT_UNDECIDED
    except Exception as e:
        logger.exception(f"Error running {args.command}: {e}")
        return Config.EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
