"""Exact Herbrand model enumeration and the partial-model toolbox.

Ground clauses are lists of signed atom numbers (k + 1 for the k-th atom of
the base, negative for a body atom), solved by a small DPLL with unit
propagation. Branching always takes the highest unassigned atom, False
first, so models come out in ascending order of their bit mask.
"""

import itertools
import logging
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from src.config import get_settings, resolve_cap
from src.models.errors import BaseTooLarge, Inconsistent, NotHorn, SubbaseMismatch
from src.services.logic_core import (
    ClausalTheory,
    Clause,
    Cube,
    Formula,
    HerbrandBase,
    Interpretation,
    check_symbols,
    ground_instances,
    is_horn,
    negate,
)

logger = logging.getLogger(__name__)

GroundClause = tuple[int, ...]


# Call accounting

@dataclass
class CallCounts:
    """Number of expensive engine calls made inside a track_calls() block."""
    enumerations: int = 0
    sat_checks: int = 0
    fixpoints: int = 0


_calls: ContextVar[Optional[CallCounts]] = ContextVar("model_engine_calls", default=None)


@contextmanager
def track_calls() -> Iterator[CallCounts]:
    """Count enumerations, satisfiability checks and fixpoints in the block."""
    counts = CallCounts()
    token = _calls.set(counts)
    try:
        yield counts
    finally:
        _calls.reset(token)


def _count(kind: str) -> None:
    counts = _calls.get()
    if counts is not None:
        setattr(counts, kind, getattr(counts, kind) + 1)


def check_base_size(size: int, max_atoms: Optional[int] = None) -> None:
    """Raise BaseTooLarge when an exponential search would range over too many atoms."""
    cap = resolve_cap(max_atoms, get_settings().max_base_atoms)
    if size > cap:
        raise BaseTooLarge(
            f"search over {size} atoms exceeds the limit of {cap}",
            atoms=size,
            limit=cap,
        )


# Grounding and search

@lru_cache(maxsize=512)
def _ground_clauses(theory: ClausalTheory, base: HerbrandBase) -> tuple[GroundClause, ...]:
    """Ground every clause over the base universe.

    A head atom outside the base is false and is dropped from its clause; a
    body atom outside the base is false, so the clause holds and is dropped.
    Tautologies are dropped as well.
    """
    position = base.position
    ground: dict[GroundClause, None] = {}
    for clause in theory.clauses:
        for instance in ground_instances(clause, base.constants):
            body = [position.get(a) for a in instance.body]
            if None in body:
                continue
            heads = {position[a] + 1 for a in instance.head if a in position}
            negatives = {k + 1 for k in body}
            if heads & negatives:
                continue
            literals = tuple(sorted(heads)) + tuple(-k for k in sorted(negatives))
            ground.setdefault(literals, None)
    logger.debug("grounded %d clauses into %d over %d atoms", len(theory), len(ground), len(base))
    return tuple(ground)


def _force(clauses: list[GroundClause], literal: int) -> list[GroundClause]:
    forced = []
    for clause in clauses:
        if literal in clause:
            continue
        if -literal in clause:
            clause = tuple(lit for lit in clause if lit != -literal)
        forced.append(clause)
    return forced


def _propagate(clauses: list[GroundClause], assignment: dict[int, bool]) -> Optional[list[GroundClause]]:
    while True:
        unit = next((c for c in clauses if len(c) <= 1), None)
        if unit is None:
            return clauses
        if not unit:
            return None
        literal = unit[0]
        assignment[abs(literal)] = literal > 0
        clauses = _force(clauses, literal)


def _solve(clauses: Sequence[GroundClause], size: int, limit: Optional[int] = None) -> list[int]:
    """Masks of all models of the ground clauses, ascending, at most limit of them."""
    found: list[int] = []
    if limit is not None and limit <= 0:
        return found

    def search(pending: list[GroundClause], assignment: dict[int, bool]) -> None:
        pending = _propagate(pending, assignment)
        if pending is None:
            return
        free = next((v for v in range(size, 0, -1) if v not in assignment), None)
        if free is None:
            if limit is not None and len(found) >= limit:
                return
            found.append(sum(1 << (v - 1) for v, value in assignment.items() if value))
            return
        for literal in (-free, free):
            if limit is not None and len(found) >= limit:
                return
            search(pending + [(literal,)], dict(assignment))

    search(list(clauses), {})
    return found


def _cube_groundings(cube: Cube, base: HerbrandBase) -> list[tuple[GroundClause, ...]]:
    """Each possible grounding of the cube as unit clauses; impossible ones are skipped."""
    position = base.position
    groundings: dict[tuple[GroundClause, ...], None] = {}
    for instance in ground_instances(cube, base.constants):
        units = []
        for literal in instance.literals:
            k = position.get(literal.atom)
            if k is None:
                if literal.positive:
                    break
                continue
            units.append((k + 1,) if literal.positive else (-(k + 1),))
        else:
            groundings.setdefault(tuple(sorted(set(units))), None)
    return list(groundings)


def _satisfiable(formulas: Sequence[Formula], base: HerbrandBase, max_atoms: Optional[int]) -> bool:
    check_base_size(len(base), max_atoms)
    clauses: list[GroundClause] = []
    choices: list[list[tuple[GroundClause, ...]]] = []
    for f in formulas:
        check_symbols(f, base)
        if isinstance(f, ClausalTheory):
            clauses.extend(_ground_clauses(f, base))
        else:
            choices.append([g for cube in f.cubes for g in _cube_groundings(cube, base)])
    for pick in itertools.product(*choices):
        _count("sat_checks")
        units = [u for grounding in pick for u in grounding]
        if _solve(clauses + units, len(base), limit=1):
            return True
    return False


# Models, entailment, consistency

def enumerate_models(
    t: ClausalTheory,
    hb: HerbrandBase,
    limit: Optional[int] = None,
    max_atoms: Optional[int] = None,
) -> list[Interpretation]:
    """All interpretations on hb satisfying t, in canonical (ascending mask) order.

    Args:
        t: Clausal theory whose symbols lie in hb
        hb: Herbrand base to enumerate on
        limit: Stop after this many models
        max_atoms: Override of the configured base-size cap

    Returns:
        Models of t on hb
    """
    check_base_size(len(hb), max_atoms)
    check_symbols(t, hb)
    _count("enumerations")
    masks = _solve(_ground_clauses(t, hb), len(hb), limit)
    logger.debug("enumerated %d models on %d atoms", len(masks), len(hb))
    return [Interpretation.from_mask(hb, m) for m in masks]


def models(f: Formula, hb: HerbrandBase, max_atoms: Optional[int] = None) -> list[Interpretation]:
    """Models of a clausal theory or a DNF formula, in canonical order."""
    if isinstance(f, ClausalTheory):
        return enumerate_models(f, hb, max_atoms=max_atoms)
    check_base_size(len(hb), max_atoms)
    check_symbols(f, hb)
    _count("enumerations")
    masks: set[int] = set()
    for cube in f.cubes:
        for units in _cube_groundings(cube, hb):
            masks.update(_solve(list(units), len(hb)))
    return [Interpretation.from_mask(hb, m) for m in sorted(masks)]


def is_satisfiable(f: Formula, hb: HerbrandBase, max_atoms: Optional[int] = None) -> bool:
    """True iff f has at least one model on hb."""
    return _satisfiable([f], hb, max_atoms)


def entails(f: Formula, g: Formula, hb: HerbrandBase, max_atoms: Optional[int] = None) -> bool:
    """True iff every model of f on hb is a model of g."""
    return not _satisfiable([f, negate(g)], hb, max_atoms)


def consistent(f: Formula, g: Formula, hb: HerbrandBase, max_atoms: Optional[int] = None) -> bool:
    """True iff some interpretation on hb models both f and g."""
    return _satisfiable([f, g], hb, max_atoms)


# Partial interpretations

@dataclass(frozen=True)
class PartialInterpretation(Interpretation):
    """Interpretation on a subbase HB; atoms of HB_e outside HB get no value."""

    @property
    def subbase(self) -> HerbrandBase:
        return self.base


def ct(j: Interpretation) -> ClausalTheory:
    """The theory whose only model on j's base is j: facts for j_p, negative units for j_n."""
    facts = [Clause(head=(a,)) for a in j.sorted_atoms()]
    negatives = [Clause(body=(a,)) for a in j.false_atoms]
    return ClausalTheory(tuple(facts + negatives))


def ct_pos(j: Interpretation) -> ClausalTheory:
    """Only the positive facts of ct(j)."""
    return ClausalTheory(tuple(Clause(head=(a,)) for a in j.sorted_atoms()))


def extensions(
    j: Interpretation,
    hb_e: HerbrandBase,
    max_atoms: Optional[int] = None,
) -> list[Interpretation]:
    """All interpretations on hb_e agreeing with j on j's base."""
    if not j.base.is_subbase_of(hb_e):
        raise SubbaseMismatch("interpretation base is not a subbase of the extended base")
    known = j.base.atom_set
    free = [k for k, a in enumerate(hb_e.atoms) if a not in known]
    check_base_size(len(free), max_atoms)
    fixed = sum(1 << hb_e.position[a] for a in j.true_atoms)
    result = []
    for m in range(1 << len(free)):
        mask = fixed
        for bit, k in enumerate(free):
            if m >> bit & 1:
                mask |= 1 << k
        result.append(Interpretation.from_mask(hb_e, mask))
    return result


def projection(i: Interpretation, hb: HerbrandBase) -> PartialInterpretation:
    """Restriction of i to the subbase hb."""
    if not hb.is_subbase_of(i.base):
        raise SubbaseMismatch("projection target is not a subbase of the interpretation base")
    return PartialInterpretation(hb, i.true_atoms & hb.atom_set)


@dataclass(frozen=True)
class ExtendedExample:
    """Theory e on an extended base HB_e, learnt about on the subbase HB."""
    theory: ClausalTheory
    extended_base: HerbrandBase
    learning_base: HerbrandBase
    assumption_base: Optional[HerbrandBase] = None

    def __post_init__(self):
        if not self.learning_base.is_subbase_of(self.extended_base):
            raise SubbaseMismatch("learning base is not a subbase of the extended base")
        if self.assumption_base is not None and not self.assumption_base.is_subbase_of(self.extended_base):
            raise SubbaseMismatch("assumption base is not a subbase of the extended base")
        check_symbols(self.theory, self.extended_base)


def _canonical(partials: Sequence[PartialInterpretation]) -> list[PartialInterpretation]:
    unique = {j.true_atoms: j for j in partials}
    return sorted(unique.values(), key=lambda j: j.mask)


def partial_models(x: ExtendedExample, max_atoms: Optional[int] = None) -> list[PartialInterpretation]:
    """Projections on HB of the models of e on HB_e, deduplicated, canonical order."""
    found = [projection(m, x.learning_base) for m in enumerate_models(x.theory, x.extended_base, max_atoms=max_atoms)]
    return _canonical(found)


def partial_models_by_assumption(
    x: ExtendedExample,
    max_atoms: Optional[int] = None,
) -> list[PartialInterpretation]:
    """Every j on HB such that ct(j) ∧ e is satisfiable on HB_e."""
    check_base_size(len(x.learning_base), max_atoms)
    found = []
    for mask in range(1 << len(x.learning_base)):
        j = PartialInterpretation.from_mask(x.learning_base, mask)
        if is_satisfiable(x.theory.conjoin(ct(j)), x.extended_base, max_atoms):
            found.append(j)
    return found


def maximal_partial_models(x: ExtendedExample, max_atoms: Optional[int] = None) -> list[PartialInterpretation]:
    partials = partial_models(x, max_atoms)
    return [
        j for j in partials
        if not any(j.true_atoms < other.true_atoms for other in partials)
    ]


def minimal_partial_models(x: ExtendedExample, max_atoms: Optional[int] = None) -> list[PartialInterpretation]:
    partials = partial_models(x, max_atoms)
    return [
        j for j in partials
        if not any(other.true_atoms < j.true_atoms for other in partials)
    ]


# Horn theories

def least_herbrand_model(t: ClausalTheory, hb: HerbrandBase) -> Interpretation:
    """Forward-chaining fixpoint of a Horn theory.

    Raises:
        NotHorn: Some clause has more than one head atom
        Inconsistent: A negative clause fires at the fixpoint
    """
    if not is_horn(t):
        raise NotHorn("least Herbrand model requires a Horn theory")
    check_symbols(t, hb)
    _count("fixpoints")
    rules = [
        (next((lit for lit in clause if lit > 0), None), [-lit for lit in clause if lit < 0])
        for clause in _ground_clauses(t, hb)
    ]
    derived: set[int] = set()
    rounds = 0
    changed = True
    while changed:
        changed = False
        rounds += 1
        for head, body in rules:
            if head in derived or not all(b in derived for b in body):
                continue
            if head is None:
                violated = Clause(body=tuple(hb.atoms[b - 1] for b in body))
                raise Inconsistent(f"negative clause {violated} is violated", clause=str(violated))
            derived.add(head)
            changed = True
    logger.debug("fixpoint reached after %d rounds with %d atoms", rounds, len(derived))
    return Interpretation(hb, frozenset(hb.atoms[k - 1] for k in derived))

