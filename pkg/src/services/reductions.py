"""Learning tasks, solution sets and the transformations between settings."""

import itertools
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping, Optional, Sequence

from src.config import get_settings, resolve_cap
from src.models.errors import DegenerateExample, SpaceTooLarge, Unsatisfiable
from src.models.schemas import (
    HypothesisSpace,
    LearnerConfig,
    Route,
    Setting,
    Sign,
    SpaceKind,
)
from src.services.compat import (
    Payload,
    Possibilities,
    Possibility,
    TheoryExample,
    compatible,
    payload_bases,
)
from src.services.logic_core import (
    ClausalTheory,
    DnfFormula,
    Formula,
    cube_language,
    cube_language_size,
    negate,
)
from src.services.model_engine import ExtendedExample, ct, enumerate_models, partial_models

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LabeledExample:
    payload: Payload
    label: Sign
    name: Optional[str] = None


@dataclass(frozen=True)
class LearningTask:
    """Setting, signature, labeled examples and the hypothesis language."""
    setting: Setting
    signature: tuple[tuple[str, int], ...]
    examples: tuple[LabeledExample, ...] = ()
    space: HypothesisSpace = field(default_factory=HypothesisSpace)
    learner: LearnerConfig = field(default_factory=LearnerConfig)

    @classmethod
    def of(cls, setting: Setting, signature: Mapping[str, int], examples: Sequence[LabeledExample] = (), **kwargs):
        return cls(setting, tuple(sorted(signature.items())), tuple(examples), **kwargs)

    @property
    def arities(self) -> dict[str, int]:
        return dict(self.signature)

    @property
    def hypothesis_signature(self) -> dict[str, int]:
        """Predicates, with arities, present in every base hypotheses are evaluated on."""
        signature = self.arities
        for example in self.examples:
            for base in payload_bases(example.payload):
                signature = {p: a for p, a in signature.items() if base.arities.get(p) == a}
        return signature

    @property
    def positives(self) -> list[LabeledExample]:
        return [e for e in self.examples if e.label is Sign.POSITIVE]

    @property
    def negatives(self) -> list[LabeledExample]:
        return [e for e in self.examples if e.label is Sign.NEGATIVE]


@dataclass(frozen=True)
class ReductionReport:
    """Outcome of comparing two solution sets over one enumerated space."""
    equal: bool
    size_a: int
    size_b: int
    only_a: tuple[str, ...] = ()
    only_b: tuple[str, ...] = ()


def check_space_size(count: int, max_space: Optional[int] = None) -> None:
    cap = resolve_cap(max_space, get_settings().max_space)
    if count > cap:
        raise SpaceTooLarge(
            f"hypothesis space of {count} candidates exceeds the limit of {cap}",
            size=count,
            limit=cap,
        )


def enumerate_space(
    signature: Mapping[str, int],
    space: HypothesisSpace,
    max_space: Optional[int] = None,
) -> list[Formula]:
    """Every formula of the space, in canonical order.

    DNF spaces are the disjunctions of up to `max_items` distinct cubes, the
    empty disjunction (False) included. A CNF space is the elementwise
    negation of the signed DNF space with the same bounds, so the two are in
    bijection position by position.
    """
    signed = space.kind is not SpaceKind.DNF_PLUS
    check_space_size(
        cube_language_size(signature, space.max_literals, space.max_variables, signed, min_literals=0),
        max_space,
    )
    cubes = cube_language(signature, space.max_literals, space.max_variables, signed, min_literals=0)
    check_space_size(sum(math.comb(len(cubes), k) for k in range(space.max_items + 1)), max_space)
    formulas: list[Formula] = [
        DnfFormula(combo)
        for k in range(space.max_items + 1)
        for combo in itertools.combinations(cubes, k)
    ]
    if space.kind is SpaceKind.CNF:
        formulas = [negate(f) for f in formulas]
    if space.negated:
        formulas = [negate(f) for f in formulas]
    logger.debug("enumerated %d hypotheses of kind %s", len(formulas), space.kind.value)
    return formulas


def is_solution(task: LearningTask, h: Formula, route: Route = Route.EXACT) -> bool:
    """h is compatible with every example under its label."""
    return all(
        compatible(h, example.payload, task.setting, example.label, route)
        for example in task.examples
    )


def solution_set(
    task: LearningTask,
    space: Optional[HypothesisSpace] = None,
    max_space: Optional[int] = None,
) -> list[Formula]:
    """All hypotheses of the space compatible with every example, canonical order."""
    formulas = enumerate_space(task.hypothesis_signature, space or task.space, max_space)
    return [h for h in formulas if is_solution(task, h)]


# Transformations

def rho_sat_to_poss(example: LabeledExample) -> LabeledExample:
    """Satisfiability example to possibilities example.

    A positive example becomes the set of ct(m) over its models m; a negative
    one keeps its theory as a single possibility.
    """
    e = example.payload
    found = enumerate_models(e.theory, e.base)
    if not found:
        raise Unsatisfiable("satisfiability example has no model on its base", example=example.name)
    if example.label is Sign.POSITIVE:
        items = tuple(Possibility(ct(m), e.base) for m in found)
    else:
        items = (Possibility(e.theory, e.base),)
    return replace(example, payload=Possibilities(items))


def abl_to_poss(x: ExtendedExample, label: Sign, name: Optional[str] = None) -> LabeledExample:
    """Extended example to the possibilities ct(j) of its partial models j."""
    partials = partial_models(x)
    if not partials:
        raise DegenerateExample("extended example has no partial model")
    items = tuple(Possibility(ct(j), x.learning_base) for j in partials)
    return LabeledExample(Possibilities(items), label, name)


def sat_to_poss_task(task: LearningTask) -> LearningTask:
    return replace(
        task,
        setting=Setting.POSSIBILITIES,
        examples=tuple(rho_sat_to_poss(e) for e in task.examples),
    )


def abl_to_poss_task(task: LearningTask) -> LearningTask:
    return replace(
        task,
        setting=Setting.POSSIBILITIES,
        examples=tuple(abl_to_poss(e.payload, e.label, e.name) for e in task.examples),
    )


def not_space(space: HypothesisSpace) -> HypothesisSpace:
    """Space of the negations: DNF and CNF swap, DNF⁺ toggles `negated`."""
    if space.kind is SpaceKind.DNF:
        return space.model_copy(update={"kind": SpaceKind.CNF})
    if space.kind is SpaceKind.CNF:
        return space.model_copy(update={"kind": SpaceKind.DNF})
    return space.model_copy(update={"negated": not space.negated})


def not_transform(task: LearningTask) -> LearningTask:
    """Flip every label and negate the hypothesis language."""
    return replace(
        task,
        examples=tuple(replace(e, label=e.label.flipped) for e in task.examples),
        space=not_space(task.space),
    )


def check_reduction_equiv(
    task_a: LearningTask,
    transform: Callable[[LearningTask], LearningTask],
    setting_b: Setting,
    space: Optional[HypothesisSpace] = None,
    max_space: Optional[int] = None,
) -> ReductionReport:
    """Compare the solution set of task_a with that of its transform over one space."""
    task_b = replace(transform(task_a), setting=setting_b)
    formulas = enumerate_space(task_a.hypothesis_signature, space or task_a.space, max_space)
    only_a, only_b = [], []
    size_a = size_b = 0
    for h in formulas:
        in_a = is_solution(task_a, h)
        in_b = is_solution(task_b, h)
        size_a += in_a
        size_b += in_b
        if in_a and not in_b:
            only_a.append(str(h))
        elif in_b and not in_a:
            only_b.append(str(h))
    return ReductionReport(
        equal=not only_a and not only_b,
        size_a=size_a,
        size_b=size_b,
        only_a=tuple(only_a),
        only_b=tuple(only_b),
    )


def counterpart_candidates(signature: Mapping[str, int], max_clauses: int = 3) -> list[ClausalTheory]:
    """Every ground clausal theory of up to max_clauses clauses over the 0-ary predicates."""
    space = HypothesisSpace(kind=SpaceKind.CNF, max_items=max_clauses, max_literals=2, max_variables=0)
    propositional = {p: a for p, a in signature.items() if a == 0}
    return enumerate_space(propositional, space)


def search_sat_counterpart(
    task_p: LearningTask,
    space: Optional[HypothesisSpace] = None,
    candidates: Optional[Sequence[ClausalTheory]] = None,
    max_space: Optional[int] = None,
) -> list[tuple[ClausalTheory, Sign]]:
    """Single satisfiability examples (C, label) with the same solution set as task_p.

    C ranges over `candidates` (default: counterpart_candidates) on the base
    of the first possibility of task_p.
    """
    formulas = enumerate_space(task_p.hypothesis_signature, space or task_p.space, max_space)
    target = [is_solution(task_p, h) for h in formulas]
    base = task_p.examples[0].payload.items[0].base
    if candidates is None:
        candidates = counterpart_candidates(task_p.hypothesis_signature)
    matches = []
    for c in candidates:
        for label in Sign:
            sat_task = replace(
                task_p,
                setting=Setting.SATISFIABILITY,
                examples=(LabeledExample(TheoryExample(c, base), label),),
            )
            if all(is_solution(sat_task, h) == wanted for h, wanted in zip(formulas, target)):
                matches.append((c, label))
    logger.info("%d of %d candidate examples match", len(matches), 2 * len(candidates))
    return matches
