"""learn: greedy DNF⁺ learning from a task file."""

import argparse

from src.commands.common import EXIT_NEGATIVE, EXIT_OK
from src.services.learner import greedy_learn
from src.services.tasks import load_task


def register(subparsers) -> None:
    parser = subparsers.add_parser("learn", help="Learn a DNF+ hypothesis by greedy set covering")
    parser.add_argument("--task", required=True, help="Task file (JSON)")
    parser.add_argument("--emit-trace", action="store_true", help="Print every cube acceptance and rejection")
    parser.add_argument(
        "--no-horn-shortcut",
        action="store_true",
        help="Always recheck the whole disjunction against the negatives",
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    task = load_task(args.task)
    config = task.learner
    if args.no_horn_shortcut:
        config = config.model_copy(update={"horn_shortcut": False})
    result = greedy_learn(task, config)
    if args.emit_trace:
        for line in result.trace:
            print(f"trace: {line}")
    print(f"hypothesis: {result.hypothesis}")
    if result.success:
        print("status: success")
        return EXIT_OK
    print("status: failure")
    if result.uncovered:
        print(f"uncovered: {', '.join(result.uncovered)}")
    return EXIT_NEGATIVE
