"""models: list the Herbrand models of a theory."""

import argparse

from src.commands.common import EXIT_OK, read_text
from src.models.errors import InvalidRequest
from src.services.logic_core import HerbrandBase
from src.services.model_engine import enumerate_models
from src.services.parser import parse_theory


def parse_predicates(text: str) -> dict[str, int]:
    """name/arity pairs separated by commas, e.g. bird/0,near/2."""
    signature = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        name, sep, arity = item.partition("/")
        if not sep or not arity.isdigit():
            raise InvalidRequest(f"predicate must look like name/arity, got {item!r}")
        signature[name] = int(arity)
    return signature


def register(subparsers) -> None:
    parser = subparsers.add_parser("models", help="Enumerate the Herbrand models of a theory")
    parser.add_argument("--theory", required=True, help="Theory file")
    parser.add_argument("--constants", default="", help="Comma-separated Herbrand universe")
    parser.add_argument(
        "--predicates",
        default=None,
        help="Comma-separated name/arity list (default: the predicates of the theory)",
    )
    parser.add_argument("--limit", type=int, default=None, help="Print at most this many models")
    parser.add_argument("--max-base", type=int, default=None, help="Override the base-size cap")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    if args.limit is not None and args.limit < 0:
        raise InvalidRequest(f"--limit must be non-negative, got {args.limit}")
    theory = parse_theory(read_text(args.theory))
    if args.predicates is None:
        signature = {a.predicate: a.arity for a in theory.atoms()}
    else:
        signature = parse_predicates(args.predicates)
    constants = [c.strip() for c in args.constants.split(",") if c.strip()]
    base = HerbrandBase.build(signature, constants)
    for model in enumerate_models(theory, base, limit=args.limit, max_atoms=args.max_base):
        print(model)
    return EXIT_OK
