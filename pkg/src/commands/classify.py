"""classify: four-way classification of an instance."""

import argparse

from src.commands.common import EXIT_OK, add_hypothesis_arguments, add_setting_argument, read_hypothesis
from src.services.learner import classify
from src.services.tasks import load_instance


def register(subparsers) -> None:
    parser = subparsers.add_parser("classify", help="Classify an instance as positive, negative, uncertain or contradictory")
    add_setting_argument(parser)
    add_hypothesis_arguments(parser)
    parser.add_argument("--instance", required=True, help="Instance file (JSON)")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    h = read_hypothesis(args.hypothesis, args.hypothesis_format)
    payload = load_instance(args.instance, args.setting)
    print(classify(h, payload, args.setting, args.route).value)
    return EXIT_OK
