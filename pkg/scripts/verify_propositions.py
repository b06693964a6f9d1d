"""Randomized checks of the reduction, negation and fast-route properties.

Each check draws seeded random cases and compares two routes that must agree.
Exit status is 1 when any check reports a discrepancy.
"""

import argparse
import logging
import random
import sys
import time
from pathlib import Path

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.models.errors import DegenerateExample
from src.models.schemas import Setting, Sign
from src.services.compat import Possibilities, compat_a, compat_a_fast, compat_p
from src.services.logic_core import HerbrandBase, negate
from src.services.model_engine import track_calls
from src.services.reductions import (
    check_reduction_equiv,
    enumerate_space,
    is_solution,
    not_transform,
    sat_to_poss_task,
    search_sat_counterpart,
)
from src.services.sampling import (
    PROPOSITIONS,
    RELATIONAL,
    random_dnf_plus,
    random_extended_example,
    random_interpretation_task,
    random_possibilities,
    random_possibilities_task,
    random_sat_task,
)
from src.services.tasks import load_task

FIXTURES = Path(__file__).parent.parent / "fixtures"


def check_sat_to_possibilities(rng: random.Random, cases: int) -> int:
    """Solution sets of satisfiability tasks and of their possibilities images."""
    failures = 0
    for _ in range(cases):
        task = random_sat_task(rng)
        report = check_reduction_equiv(task, sat_to_poss_task, Setting.POSSIBILITIES)
        if not report.equal:
            failures += 1
            print(f"  mismatch: only before {list(report.only_a)}, only after {list(report.only_b)}")
    return failures


def check_counterpart(rng: random.Random, cases: int) -> int:
    """No single satisfiability example has the solution set of the two-fact possibilities task."""
    matches = search_sat_counterpart(load_task(FIXTURES / "a3_task.json"))
    for theory, label in matches:
        print(f"  match {label.value}: {theory}")
    return len(matches)


def check_negation(rng: random.Random, cases: int) -> int:
    """h solves a task iff negate(h) solves the flipped task over the negated language."""
    failures = 0
    for k in range(cases):
        task = random_interpretation_task(rng) if k % 2 == 0 else random_possibilities_task(rng)
        flipped = not_transform(task)
        for h in enumerate_space(task.hypothesis_signature, task.space):
            if is_solution(task, h) != is_solution(flipped, negate(h)):
                failures += 1
                print(f"  {task.setting.value}: {h}")
    return failures


def check_fast_route(rng: random.Random, cases: int) -> int:
    """compat_a_fast agrees with compat_a, with fewer model enumerations overall."""
    failures = 0
    exact_enumerations = fast_enumerations = 0
    for k in range(cases):
        x = random_extended_example(rng, horn=k % 2 == 0)
        h = random_dnf_plus(rng, RELATIONAL)
        for sign in Sign:
            with track_calls() as exact_calls:
                try:
                    expected = compat_a(h, x, sign)
                except DegenerateExample:
                    expected = None
            with track_calls() as fast_calls:
                try:
                    actual = compat_a_fast(h, x, sign)
                except DegenerateExample:
                    actual = None
            exact_enumerations += exact_calls.enumerations
            fast_enumerations += fast_calls.enumerations
            if expected != actual:
                failures += 1
                print(f"  {sign.value} {h}: exact {expected}, fast {actual}\n{x.theory}")
    print(f"  model enumerations: exact {exact_enumerations}, fast {fast_enumerations}")
    if fast_enumerations >= exact_enumerations:
        failures += 1
    return failures


def check_elimination(rng: random.Random, cases: int) -> int:
    """Dropping a possibility never makes an incompatible hypothesis compatible."""
    base = HerbrandBase.build(PROPOSITIONS, ())
    failures = 0
    for _ in range(cases):
        e = random_possibilities(rng, base)
        if len(e.items) < 2:
            continue
        h = random_dnf_plus(rng, PROPOSITIONS)
        sign = rng.choice(list(Sign))
        if compat_p(h, e, sign):
            continue
        shrunk = Possibilities(e.items[:-1])
        if compat_p(h, shrunk, sign):
            failures += 1
            print(f"  {h} re-entered after dropping {e.items[-1].theory}")
    return failures


CHECKS = {
    "sat-to-poss": check_sat_to_possibilities,
    "counterpart": check_counterpart,
    "negation": check_negation,
    "fast-route": check_fast_route,
    "elimination": check_elimination,
}


def main():
    parser = argparse.ArgumentParser(description="Run randomized property checks")
    parser.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    parser.add_argument("--cases", type=int, default=50, help="Random cases per check (default: 50)")
    parser.add_argument(
        "--only",
        choices=sorted(CHECKS),
        action="append",
        help="Run only this check (repeatable)",
    )
    parser.add_argument("--verbose", action="store_true", help="Log engine activity on stderr")
    args = parser.parse_args()

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)

    total = 0
    for name in args.only or CHECKS:
        rng = random.Random(f"{args.seed}:{name}")
        print(f"\n{name}: {CHECKS[name].__doc__}")
        start = time.perf_counter()
        failures = CHECKS[name](rng, args.cases)
        elapsed = time.perf_counter() - start
        print(f"  {args.cases} cases, {failures} discrepancies, {elapsed:.2f}s")
        total += failures

    print(f"\n{'OK' if total == 0 else 'FAILED'}: {total} discrepancies")
    sys.exit(0 if total == 0 else 1)


if __name__ == "__main__":
    main()
