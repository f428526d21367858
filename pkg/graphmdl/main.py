from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from pydantic import ValidationError

from graphmdl import __version__
from graphmdl.commands import compress, discover, encode, generate, match, sweep
from graphmdl.commands.deps import EXIT_INPUT, EXIT_OK, EXIT_USAGE, CliParser, RunConfig, UsageError, emit
from graphmdl.core.logging import setup_logging

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = CliParser(prog="graphmdl", description="MDL-guided substructure discovery in labeled graphs")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING (default from LOG_LEVEL)")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--out", default=None, metavar="FILE", help="write the report here instead of stdout")

    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for module in (encode, match, discover, compress, generate, sweep):
        module.register(sub)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)

    try:
        config = RunConfig.from_args(args)
        setup_logging(config.log_level)
        report, text = args.handler(args, config)
        emit(config, report, text)
    except (UsageError, ValidationError) as exc:
        print(f"graphmdl {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        logger.debug("input error", exc_info=True)
        print(f"graphmdl {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
