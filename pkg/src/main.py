"""Command-line entry point: python -m src.main <command> ..."""

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from src.commands import check, classify, learn, models, reduce, rna, schema
from src.commands.common import EXIT_INPUT, exit_code
from src.config import get_settings
from src.models.errors import PossibError
from src.models.schemas import ErrorCode, ErrorResponse

COMMANDS = (models, check, learn, classify, reduce, rna, schema)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="possib",
        description="Concept learning from incomplete examples over finite Herbrand bases",
    )
    parser.add_argument(
        "--log-level",
        default=None,
        help="Logging level on stderr (default: POSSIB_LOG_LEVEL or WARNING)",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def configure_logging(level: Optional[str]) -> None:
    """Log to stderr so that stdout stays deterministic."""
    name = (level or get_settings().log_level_name).upper()
    logging.basicConfig(
        level=getattr(logging, name, logging.WARNING),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def report(error: ErrorResponse) -> None:
    print(error.model_dump_json(exclude_none=True), file=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except PossibError as error:
        report(error.to_response())
        return exit_code(error)
    except ValidationError as error:
        report(ErrorResponse(
            error="input file failed validation",
            code=ErrorCode.INVALID_REQUEST,
            details={"errors": json.loads(error.json(include_url=False))},
        ))
        return EXIT_INPUT
    except OSError as error:
        report(ErrorResponse(error=str(error), code=ErrorCode.INVALID_REQUEST))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
