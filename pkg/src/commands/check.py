"""check: decide whether a hypothesis is compatible with one example."""

import argparse

from src.commands.common import (
    EXIT_DEGENERATE,
    EXIT_NEGATIVE,
    EXIT_OK,
    SIGNS,
    add_hypothesis_arguments,
    add_setting_argument,
    read_hypothesis,
)
from src.models.errors import DegenerateExample, IncompleteDeduction
from src.services.compat import compatible
from src.services.tasks import load_instance


def register(subparsers) -> None:
    parser = subparsers.add_parser("check", help="Check compatibility of a hypothesis with an example")
    add_setting_argument(parser)
    add_hypothesis_arguments(parser)
    parser.add_argument("--example", required=True, help="Instance file (JSON)")
    parser.add_argument("--sign", choices=sorted(SIGNS), required=True, help="Label of the example")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    h = read_hypothesis(args.hypothesis, args.hypothesis_format)
    payload = load_instance(args.example, args.setting)
    try:
        verdict = compatible(h, payload, args.setting, SIGNS[args.sign], args.route)
    except (DegenerateExample, IncompleteDeduction):
        print("degenerate")
        return EXIT_DEGENERATE
    print("compatible" if verdict else "incompatible")
    return EXIT_OK if verdict else EXIT_NEGATIVE
