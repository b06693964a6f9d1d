"""Greedy set-covering learner for DNF⁺ hypotheses, and classification."""

import logging
from dataclasses import dataclass, field
from typing import Mapping, Optional

from src.models.errors import MissingWeights, NotSingleModel
from src.models.schemas import ClassOutcome, LearnerConfig, Route, Setting, Sign
from src.services.compat import Payload, Possibilities, compatible, covers
from src.services.logic_core import Cube, DnfFormula, Formula, cube_language, cube_language_size, is_horn
from src.services.model_engine import enumerate_models
from src.services.reductions import LabeledExample, LearningTask, check_space_size

logger = logging.getLogger(__name__)

# Settings whose negative side holds for H ∨ h as soon as it holds for H and for h.
DECOMPOSABLE_SETTINGS = {Setting.INTERPRETATIONS, Setting.GENERALIZED, Setting.SATISFIABILITY}


@dataclass
class LearnResult:
    """Learned disjunction, or the partial one with the positives it leaves uncovered."""
    hypothesis: DnfFormula
    success: bool
    uncovered: list[str] = field(default_factory=list)
    trace: list[str] = field(default_factory=list)
    shortcut_used: bool = False


def enumerate_cubes(
    signature: Mapping[str, int],
    config: LearnerConfig,
    max_space: Optional[int] = None,
) -> list[Cube]:
    """Candidate DNF⁺ cubes, shortest first, then by text."""
    check_space_size(
        cube_language_size(signature, config.max_literals_per_cube, config.max_variables),
        max_space,
    )
    return cube_language(signature, config.max_literals_per_cube, config.max_variables)


def shortcut_applies(task: LearningTask) -> bool:
    """Whether checking each cube alone against the negatives is exact.

    Always for interpretations, generalized and satisfiability examples; for
    uncertain and assumption-based ones only when every negative is Horn.
    """
    if task.setting in DECOMPOSABLE_SETTINGS:
        return True
    if task.setting in (Setting.UNCERTAIN, Setting.ASSUMPTION_BASED):
        return all(is_horn(e.payload.theory) for e in task.negatives)
    return False


def _name(example: LabeledExample, index: int) -> str:
    return example.name or f"{example.label.value}[{index}]"


def greedy_learn(task: LearningTask, config: Optional[LearnerConfig] = None) -> LearnResult:
    """Cover the positives cube by cube, keeping the whole disjunction compatible with the negatives.

    At each step the cube adding the most newly covered positives wins, ties
    going to fewer literals, then to the smaller text. A cube rejected by a
    negative stays rejected: a larger disjunction is never easier to keep
    compatible with a negative.

    Args:
        task: Learning task; its own learner config is used unless overridden
        config: Optional learner config override

    Returns:
        LearnResult, with success False when some positive cannot be covered
    """
    config = config or task.learner
    setting = task.setting
    route = Route.FAST if setting is Setting.ASSUMPTION_BASED and config.fast_route else Route.EXACT
    positives = [(_name(e, k), e) for k, e in enumerate(task.examples) if e.label is Sign.POSITIVE]
    negatives = [(_name(e, k), e) for k, e in enumerate(task.examples) if e.label is Sign.NEGATIVE]
    if not positives:
        return LearnResult(DnfFormula.false(), False, trace=["no positive examples to cover"])

    candidates = enumerate_cubes(task.hypothesis_signature, config)
    shortcut = config.horn_shortcut and shortcut_applies(task)
    trace = ["shortcut: negatives checked cube by cube"] if shortcut else []

    def veto(h: Formula) -> Optional[str]:
        for name, example in negatives:
            if not compatible(h, example.payload, setting, Sign.NEGATIVE, route):
                return name
        return None

    hypothesis = DnfFormula.false()
    covered: set[str] = set()
    rejected: set[Cube] = set()
    while len(covered) < len(positives) and len(hypothesis) < config.max_cubes:
        best = None
        for cube in candidates:
            if cube in rejected or cube in hypothesis.cubes:
                continue
            trial = hypothesis.disjoin(cube)
            gained = [
                name for name, example in positives
                if name not in covered and compatible(trial, example.payload, setting, Sign.POSITIVE, route)
            ]
            if not gained:
                continue
            key = (-len(gained), len(cube), str(cube))
            if best is not None and key >= best[0]:
                continue
            vetoed_by = veto(DnfFormula((cube,)) if shortcut else trial)
            if vetoed_by is not None:
                rejected.add(cube)
                trace.append(f"reject {cube}: vetoed by {vetoed_by}")
                logger.info("rejected %s, vetoed by %s", cube, vetoed_by)
                continue
            best = (key, cube, gained)
        if best is None:
            break
        _, cube, gained = best
        hypothesis = hypothesis.disjoin(cube)
        covered.update(gained)
        trace.append(f"accept {cube}: covers {', '.join(gained)}")
        logger.info("accepted %s covering %s", cube, gained)

    uncovered = [name for name, _ in positives if name not in covered]
    return LearnResult(
        hypothesis=hypothesis,
        success=not uncovered,
        uncovered=uncovered,
        trace=trace,
        shortcut_used=shortcut,
    )


def classify(h: Formula, payload: Payload, setting: Setting, route: Route = Route.EXACT) -> ClassOutcome:
    """Four-way classification from the two compatibility checks."""
    positive = compatible(h, payload, setting, Sign.POSITIVE, route)
    negative = compatible(h, payload, setting, Sign.NEGATIVE, route)
    if positive and negative:
        return ClassOutcome.UNCERTAIN
    if positive:
        return ClassOutcome.POSITIVE
    if negative:
        return ClassOutcome.NEGATIVE
    return ClassOutcome.CONTRADICTORY


def weighted_model_probability(h: Formula, e: Possibilities) -> float:
    """Total weight of the single-model possibilities whose model satisfies h."""
    if not e.weighted:
        raise MissingWeights("possibilities carry no weights")
    total = 0.0
    for p in e.items:
        found = enumerate_models(p.theory, p.base, limit=2)
        if len(found) != 1:
            raise NotSingleModel(
                f"possibility has {'no' if not found else 'several'} models",
                theory=str(p.theory),
            )
        if covers(h, found[0]):
            total += p.weight
    return total
