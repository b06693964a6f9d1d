"""Seeded random generators of theories, hypotheses, examples and tasks.

Every generator draws from the `random.Random` it is given, so a seed (or a
Hypothesis-controlled `Random`) reproduces the same case.
"""

import random
from typing import Mapping, Optional, Sequence

from src.models.schemas import HypothesisSpace, Setting, Sign, SpaceKind
from src.services.compat import Possibilities, Possibility, TheoryExample
from src.services.logic_core import (
    Atom,
    ClausalTheory,
    Clause,
    DnfFormula,
    HerbrandBase,
    Interpretation,
    atom,
    cube_language,
)
from src.services.model_engine import ExtendedExample, is_satisfiable
from src.services.reductions import LabeledExample, LearningTask

PROPOSITIONS = {"p": 0, "q": 0, "r": 0}
RELATIONAL = {"p": 1, "q": 1, "r": 2}
HIDDEN = {"s": 1}
CONSTANTS = ("a", "b")

# Non-ground atoms mixed into the clauses of extended examples.
TEMPLATE_ATOMS = (
    atom("p", "X"),
    atom("q", "X"),
    atom("s", "X"),
    atom("r", "X", "Y"),
    atom("r", "X", "X"),
)


def random_clause(
    rng: random.Random,
    atoms: Sequence[Atom],
    max_literals: int = 3,
    horn: bool = False,
) -> Clause:
    """A clause over 1..max_literals distinct atoms, each put in the head or the body."""
    chosen = rng.sample(list(atoms), rng.randint(1, min(max_literals, len(atoms))))
    heads = [a for a in chosen if rng.random() < 0.5]
    if horn:
        heads = heads[:1]
    return Clause(tuple(heads), tuple(a for a in chosen if a not in heads))


def random_theory(
    rng: random.Random,
    atoms: Sequence[Atom],
    max_clauses: int = 3,
    max_literals: int = 3,
    horn: bool = False,
) -> ClausalTheory:
    return ClausalTheory.of(
        random_clause(rng, atoms, max_literals, horn)
        for _ in range(rng.randint(0, max_clauses))
    )


def random_satisfiable_theory(
    rng: random.Random,
    base: HerbrandBase,
    atoms: Optional[Sequence[Atom]] = None,
    horn: bool = False,
    attempts: int = 20,
    **kwargs,
) -> ClausalTheory:
    """A random theory with a model on base; the empty theory if none turns up."""
    for _ in range(attempts):
        theory = random_theory(rng, atoms or base.atoms, horn=horn, **kwargs)
        if is_satisfiable(theory, base):
            return theory
    return ClausalTheory()


def random_interpretation(rng: random.Random, base: HerbrandBase) -> Interpretation:
    return Interpretation(base, frozenset(a for a in base.atoms if rng.random() < 0.5))


def random_sub_interpretation(rng: random.Random, i: Interpretation) -> Interpretation:
    """An interpretation on the same base whose true atoms are a subset of i's."""
    return Interpretation(i.base, frozenset(a for a in i.true_atoms if rng.random() < 0.5))


def random_dnf_plus(
    rng: random.Random,
    signature: Mapping[str, int],
    max_cubes: int = 2,
    max_literals: int = 2,
    max_variables: int = 1,
) -> DnfFormula:
    cubes = cube_language(signature, max_literals, max_variables)
    return DnfFormula(tuple(rng.sample(cubes, rng.randint(1, min(max_cubes, len(cubes))))))


def random_label(rng: random.Random) -> Sign:
    return rng.choice([Sign.POSITIVE, Sign.NEGATIVE])


# Tasks

def random_sat_task(
    rng: random.Random,
    space: Optional[HypothesisSpace] = None,
    max_examples: int = 3,
) -> LearningTask:
    """Propositional satisfiability task whose examples all have a model."""
    base = HerbrandBase.build(PROPOSITIONS, ())
    examples = [
        LabeledExample(TheoryExample(random_satisfiable_theory(rng, base), base), random_label(rng), f"e{k}")
        for k in range(rng.randint(1, max_examples))
    ]
    space = space or HypothesisSpace(kind=SpaceKind.DNF, max_items=2, max_literals=2, max_variables=0)
    return LearningTask.of(Setting.SATISFIABILITY, PROPOSITIONS, examples, space=space)


def random_interpretation_task(
    rng: random.Random,
    space: Optional[HypothesisSpace] = None,
    max_examples: int = 3,
) -> LearningTask:
    base = HerbrandBase.build(RELATIONAL, CONSTANTS)
    examples = [
        LabeledExample(random_interpretation(rng, base), random_label(rng), f"i{k}")
        for k in range(rng.randint(1, max_examples))
    ]
    space = space or HypothesisSpace(kind=SpaceKind.DNF, max_items=2, max_literals=2, max_variables=1)
    return LearningTask.of(Setting.INTERPRETATIONS, RELATIONAL, examples, space=space)


def random_possibilities(rng: random.Random, base: HerbrandBase, max_items: int = 3) -> Possibilities:
    return Possibilities(tuple(
        Possibility(random_satisfiable_theory(rng, base), base)
        for _ in range(rng.randint(1, max_items))
    ))


def random_possibilities_task(
    rng: random.Random,
    space: Optional[HypothesisSpace] = None,
    max_examples: int = 2,
) -> LearningTask:
    base = HerbrandBase.build(PROPOSITIONS, ())
    examples = [
        LabeledExample(random_possibilities(rng, base), random_label(rng), f"e{k}")
        for k in range(rng.randint(1, max_examples))
    ]
    space = space or HypothesisSpace(kind=SpaceKind.DNF, max_items=1, max_literals=2, max_variables=0)
    return LearningTask.of(Setting.POSSIBILITIES, PROPOSITIONS, examples, space=space)


def random_uncertain_task(
    rng: random.Random,
    max_positives: int = 3,
    max_negatives: int = 2,
) -> LearningTask:
    """Pure uncertain task whose negatives are all Horn."""
    base = HerbrandBase.build(PROPOSITIONS, ())
    examples = [
        LabeledExample(TheoryExample(random_theory(rng, base.atoms), base), Sign.POSITIVE, f"p{k}")
        for k in range(rng.randint(1, max_positives))
    ]
    examples += [
        LabeledExample(TheoryExample(random_theory(rng, base.atoms, horn=True), base), Sign.NEGATIVE, f"n{k}")
        for k in range(rng.randint(0, max_negatives))
    ]
    return LearningTask.of(Setting.UNCERTAIN, PROPOSITIONS, examples)


def random_extended_example(rng: random.Random, horn: bool = False) -> ExtendedExample:
    """Satisfiable theory on p, q, r and a hidden s over {a, b}, learnt about on p, q, r."""
    learning = HerbrandBase.build(RELATIONAL, CONSTANTS)
    extended = HerbrandBase.build({**RELATIONAL, **HIDDEN}, CONSTANTS)
    pool = list(extended.atoms) + list(TEMPLATE_ATOMS)
    theory = random_satisfiable_theory(rng, extended, atoms=pool, horn=horn, max_clauses=4)
    return ExtendedExample(theory, extended, learning)
