"""schema: print the JSON schema of task files."""

import argparse
import json

from src.commands.common import EXIT_OK
from src.models.schemas import InstanceFile, RnaInputFile, TaskFile

DOCUMENTS = {"task": TaskFile, "instance": InstanceFile, "rna": RnaInputFile}


def register(subparsers) -> None:
    parser = subparsers.add_parser("schema", help="Print the JSON schema of an input file")
    parser.add_argument("document", nargs="?", choices=sorted(DOCUMENTS), default="task")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    print(json.dumps(DOCUMENTS[args.document].model_json_schema(), indent=2, sort_keys=True))
    return EXIT_OK
