"""reduce: transform a task to learning from possibilities and compare solution sets."""

import argparse

from src.commands.common import EXIT_NEGATIVE, EXIT_OK, parse_space
from src.models.errors import InvalidRequest
from src.models.schemas import Setting
from src.services.parser import serialize_theory
from src.services.reductions import (
    ReductionReport,
    abl_to_poss_task,
    check_reduction_equiv,
    sat_to_poss_task,
    search_sat_counterpart,
)
from src.services.tasks import dump_task, load_task

TRANSFORMS = {"sat": sat_to_poss_task, "abl": abl_to_poss_task}
SOURCES = {"sat": Setting.SATISFIABILITY, "abl": Setting.ASSUMPTION_BASED, "poss": Setting.POSSIBILITIES}


def register(subparsers) -> None:
    parser = subparsers.add_parser("reduce", help="Reduce a task to learning from possibilities")
    parser.add_argument("--from", dest="source", choices=sorted(SOURCES), required=True)
    parser.add_argument("--task", required=True, help="Task file (JSON)")
    parser.add_argument("--space", default=None, help="KIND:ITEMS:LITERALS:VARIABLES (default: the task's)")
    parser.add_argument("--verify", action="store_true", help="Compare both solution sets")
    parser.add_argument("--output", default=None, help="Write the transformed task here instead of stdout")
    parser.set_defaults(handler=run)


def print_report(report: ReductionReport) -> None:
    print("EQUAL" if report.equal else "DIFFERENT")
    print(f"solutions: {report.size_a} before, {report.size_b} after")
    for h in report.only_a:
        print(f"only before: {h}")
    for h in report.only_b:
        print(f"only after: {h}")


def run(args: argparse.Namespace) -> int:
    task = load_task(args.task)
    expected = SOURCES[args.source]
    if task.setting is not expected:
        raise InvalidRequest(
            f"--from {args.source} needs a {expected.value} task, got {task.setting.value}"
        )
    space = parse_space(args.space) if args.space else None

    if args.source == "poss":
        matches = search_sat_counterpart(task, space)
        if not matches:
            print("NO SINGLE SAT EXAMPLE MATCHES")
            return EXIT_OK
        for theory, label in matches:
            print(f"MATCH {label.value}: {serialize_theory(theory).replace(chr(10), ' ')}")
        return EXIT_NEGATIVE

    transform = TRANSFORMS[args.source]
    transformed = transform(task)
    text = dump_task(transformed, args.output)
    if args.output is None:
        print(text)
    if not args.verify:
        return EXIT_OK
    report = check_reduction_equiv(task, transform, Setting.POSSIBILITIES, space)
    print_report(report)
    return EXIT_OK if report.equal else EXIT_NEGATIVE
