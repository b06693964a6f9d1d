"""Helpers shared by the command modules."""

import argparse
from pathlib import Path

from src.models.errors import InvalidRequest, PossibError
from src.models.schemas import ErrorCode, HypothesisSpace, Route, Setting, Sign, SpaceKind
from src.services.logic_core import Formula
from src.services.parser import parse_formula

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_DEGENERATE = 4

CAP_CODES = {ErrorCode.BASE_TOO_LARGE, ErrorCode.SPACE_TOO_LARGE}
DEGENERATE_CODES = {ErrorCode.DEGENERATE_EXAMPLE, ErrorCode.INCOMPLETE_DEDUCTION}

SIGNS = {"+": Sign.POSITIVE, "-": Sign.NEGATIVE}


def exit_code(error: PossibError) -> int:
    """Process exit code for an engine error."""
    if error.code in CAP_CODES:
        return EXIT_CAP
    if error.code in DEGENERATE_CODES:
        return EXIT_DEGENERATE
    return EXIT_INPUT


def read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def read_hypothesis(path: str, kind: str = "dnf") -> Formula:
    """Hypothesis file in the DNF (default) or theory grammar."""
    return parse_formula(read_text(path), kind)


def parse_space(text: str) -> HypothesisSpace:
    """KIND:ITEMS:LITERALS:VARIABLES, e.g. cnf:2:2:0."""
    parts = text.split(":")
    if len(parts) != 4:
        raise InvalidRequest(f"space must look like KIND:ITEMS:LITERALS:VARIABLES, got {text!r}")
    kind, *bounds = parts
    try:
        items, literals, variables = (int(b) for b in bounds)
        return HypothesisSpace(
            kind=SpaceKind(kind),
            max_items=items,
            max_literals=literals,
            max_variables=variables,
        )
    except ValueError as error:
        raise InvalidRequest(f"invalid space {text!r}: {error}") from None


def add_setting_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--setting",
        type=Setting,
        choices=list(Setting),
        required=True,
        metavar="{" + ",".join(s.value for s in Setting) + "}",
        help="Learning setting of the example",
    )


def add_hypothesis_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--hypothesis", required=True, help="Hypothesis file")
    parser.add_argument(
        "--hypothesis-format",
        choices=["dnf", "cnf"],
        default="dnf",
        help="Grammar of the hypothesis file (default: dnf)",
    )
    parser.add_argument(
        "--route",
        type=Route,
        choices=list(Route),
        default=Route.EXACT,
        metavar="{" + ",".join(r.value for r in Route) + "}",
        help="Evaluation route for assumption-based examples (default: exact)",
    )
