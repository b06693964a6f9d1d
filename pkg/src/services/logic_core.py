"""First-order syntax without function symbols, grounding and Herbrand evaluation.

Formulas are immutable values. A clausal theory is a conjunction of universally
quantified clauses, a DNF formula a disjunction of existentially quantified
cubes; `negate` maps one onto the other.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from src.models.errors import SignatureMismatch, VariableInGroundContext

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Term:
    """A constant or a variable."""
    name: str
    is_variable: bool = False

    def __post_init__(self):
        if not self.name:
            raise ValueError("term names must be non-empty")

    @classmethod
    def constant(cls, name: str) -> "Term":
        return cls(name, False)

    @classmethod
    def variable(cls, name: str) -> "Term":
        return cls(name, True)

    def __str__(self) -> str:
        return self.name


def term(name: str) -> Term:
    """Build a term from its spelling: uppercase initial means variable."""
    return Term(name, name[:1].isupper())


@dataclass(frozen=True)
class Atom:
    """p(t1, ..., tk); k may be 0."""
    predicate: str
    args: tuple[Term, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def is_ground(self) -> bool:
        return not any(t.is_variable for t in self.args)

    @property
    def sort_key(self) -> tuple[str, tuple[str, ...]]:
        return self.predicate, tuple(t.name for t in self.args)

    def variables(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(t.name for t in self.args if t.is_variable))

    def constants(self) -> frozenset[str]:
        return frozenset(t.name for t in self.args if not t.is_variable)

    def substitute(self, bindings: Mapping[str, str]) -> "Atom":
        if self.is_ground:
            return self
        return Atom(
            self.predicate,
            tuple(
                Term.constant(bindings[t.name]) if t.is_variable and t.name in bindings else t
                for t in self.args
            ),
        )

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(t.name for t in self.args)})"


def atom(predicate: str, *names: str) -> Atom:
    """Shorthand constructor: atom("brighter", "a", "X")."""
    return Atom(predicate, tuple(term(n) for n in names))


@dataclass(frozen=True)
class Literal:
    atom: Atom
    positive: bool = True

    def negated(self) -> "Literal":
        return Literal(self.atom, not self.positive)

    def __str__(self) -> str:
        return str(self.atom) if self.positive else f"~{self.atom}"


def _first_occurrence(atoms: Iterable[Atom]) -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for a in atoms:
        for name in a.variables():
            seen.setdefault(name, None)
    return tuple(seen)


@dataclass(frozen=True)
class Clause:
    """∀(h1 ∨ ... ∨ hm ← b1 ∧ ... ∧ bn)."""
    head: tuple[Atom, ...] = ()
    body: tuple[Atom, ...] = ()

    @property
    def is_horn(self) -> bool:
        return len(self.head) <= 1

    @property
    def is_empty(self) -> bool:
        return not self.head and not self.body

    def atoms(self) -> tuple[Atom, ...]:
        return self.head + self.body

    def variables(self) -> tuple[str, ...]:
        return _first_occurrence(self.atoms())

    def substitute(self, bindings: Mapping[str, str]) -> "Clause":
        return Clause(
            tuple(a.substitute(bindings) for a in self.head),
            tuple(a.substitute(bindings) for a in self.body),
        )

    def __str__(self) -> str:
        if self.is_empty:
            return "false."
        head = " ; ".join(str(a) for a in self.head)
        if not self.body:
            return f"{head}."
        body = ", ".join(str(a) for a in self.body)
        return f"{head} :- {body}." if head else f":- {body}."


@dataclass(frozen=True)
class ClausalTheory:
    """Conjunction of clauses, with duplicates removed."""
    clauses: tuple[Clause, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(dict.fromkeys(self.clauses)))

    @classmethod
    def of(cls, clauses: Iterable[Clause]) -> "ClausalTheory":
        return cls(tuple(clauses))

    def conjoin(self, *others: "ClausalTheory") -> "ClausalTheory":
        clauses = list(self.clauses)
        for other in others:
            clauses.extend(other.clauses)
        return ClausalTheory(tuple(clauses))

    def atoms(self) -> Iterator[Atom]:
        for clause in self.clauses:
            yield from clause.atoms()

    def __len__(self) -> int:
        return len(self.clauses)

    def __str__(self) -> str:
        return "\n".join(str(c) for c in self.clauses)


@dataclass(frozen=True)
class Cube:
    """∃(l1 ∧ ... ∧ lm); the empty cube is True."""
    literals: tuple[Literal, ...] = ()

    @property
    def is_positive(self) -> bool:
        return all(lit.positive for lit in self.literals)

    def atoms(self) -> tuple[Atom, ...]:
        return tuple(lit.atom for lit in self.literals)

    def positive_atoms(self) -> tuple[Atom, ...]:
        return tuple(lit.atom for lit in self.literals if lit.positive)

    def negative_atoms(self) -> tuple[Atom, ...]:
        return tuple(lit.atom for lit in self.literals if not lit.positive)

    def variables(self) -> tuple[str, ...]:
        return _first_occurrence(self.atoms())

    def substitute(self, bindings: Mapping[str, str]) -> "Cube":
        return Cube(tuple(Literal(lit.atom.substitute(bindings), lit.positive) for lit in self.literals))

    def __len__(self) -> int:
        return len(self.literals)

    def __str__(self) -> str:
        if not self.literals:
            return "true"
        return ", ".join(str(lit) for lit in self.literals)


@dataclass(frozen=True)
class DnfFormula:
    """Disjunction of cubes; no cubes is False."""
    cubes: tuple[Cube, ...] = ()

    @classmethod
    def true(cls) -> "DnfFormula":
        return cls((Cube(),))

    @classmethod
    def false(cls) -> "DnfFormula":
        return cls(())

    @property
    def is_dnf_plus(self) -> bool:
        return all(c.is_positive for c in self.cubes)

    def atoms(self) -> Iterator[Atom]:
        for cube in self.cubes:
            yield from cube.atoms()

    def disjoin(self, cube: Cube) -> "DnfFormula":
        return DnfFormula(self.cubes + (cube,))

    def __len__(self) -> int:
        return len(self.cubes)

    def __str__(self) -> str:
        if not self.cubes:
            return "false"
        return " | ".join(str(c) for c in self.cubes)


Formula = Union[ClausalTheory, DnfFormula]


def formula_constants(f: Union[Formula, Clause, Cube]) -> frozenset[str]:
    constants: set[str] = set()
    for a in f.atoms():
        constants |= a.constants()
    return frozenset(constants)


@dataclass(frozen=True)
class HerbrandBase:
    """Finite set of ground atoms in canonical (predicate, args) order."""
    signature: tuple[tuple[str, int], ...]
    universe: frozenset[str]
    atoms: tuple[Atom, ...]

    @classmethod
    def build(cls, signature: Mapping[str, int], universe: Iterable[str]) -> "HerbrandBase":
        """All atoms p(c1..ck) for p in the signature and ci in the universe."""
        constants = sorted(set(universe))
        atoms = [
            Atom(predicate, tuple(Term.constant(c) for c in args))
            for predicate, arity in sorted(signature.items())
            for args in itertools.product(constants, repeat=arity)
        ]
        return cls(tuple(sorted(signature.items())), frozenset(constants), tuple(atoms))

    @classmethod
    def restricted(
        cls,
        signature: Mapping[str, int],
        atoms: Iterable[Atom],
        universe: Optional[Iterable[str]] = None,
    ) -> "HerbrandBase":
        """A base given by an explicit list of ground atoms."""
        atoms = sorted(set(atoms), key=lambda a: a.sort_key)
        constants = set(universe or ())
        for a in atoms:
            if not a.is_ground:
                raise VariableInGroundContext(f"base atom {a} is not ground")
            if signature.get(a.predicate) != a.arity:
                raise SignatureMismatch(f"base atom {a} does not match the signature")
            constants |= a.constants()
        return cls(tuple(sorted(signature.items())), frozenset(constants), tuple(atoms))

    @cached_property
    def arities(self) -> dict[str, int]:
        return dict(self.signature)

    @cached_property
    def position(self) -> dict[Atom, int]:
        return {a: k for k, a in enumerate(self.atoms)}

    @cached_property
    def atom_set(self) -> frozenset[Atom]:
        return frozenset(self.atoms)

    @cached_property
    def constants(self) -> tuple[str, ...]:
        return tuple(sorted(self.universe))

    def is_subbase_of(self, other: "HerbrandBase") -> bool:
        return self.atom_set <= other.atom_set

    def union(self, *others: "HerbrandBase") -> "HerbrandBase":
        signature = dict(self.signature)
        atoms = set(self.atoms)
        universe = set(self.universe)
        for other in others:
            signature.update(other.signature)
            atoms |= other.atom_set
            universe |= other.universe
        return HerbrandBase.restricted(signature, atoms, universe)

    def __contains__(self, item: object) -> bool:
        return item in self.atom_set

    def __len__(self) -> int:
        return len(self.atoms)


@dataclass(frozen=True)
class Interpretation:
    """Truth assignment on a base, stored as its true part i_p."""
    base: HerbrandBase
    true_atoms: frozenset[Atom] = frozenset()

    def __post_init__(self):
        true_atoms = frozenset(self.true_atoms)
        stray = true_atoms - self.base.atom_set
        if stray:
            raise SignatureMismatch(
                "true atoms outside the base",
                atoms=sorted(str(a) for a in stray),
            )
        object.__setattr__(self, "true_atoms", true_atoms)

    @classmethod
    def from_mask(cls, base: HerbrandBase, mask: int) -> "Interpretation":
        return cls(base, frozenset(a for k, a in enumerate(base.atoms) if mask >> k & 1))

    @cached_property
    def mask(self) -> int:
        position = self.base.position
        return sum(1 << position[a] for a in self.true_atoms)

    @cached_property
    def false_atoms(self) -> tuple[Atom, ...]:
        return tuple(a for a in self.base.atoms if a not in self.true_atoms)

    @cached_property
    def by_predicate(self) -> dict[str, tuple[tuple[str, ...], ...]]:
        index: dict[str, list[tuple[str, ...]]] = {}
        for a in sorted(self.true_atoms, key=lambda a: a.sort_key):
            index.setdefault(a.predicate, []).append(tuple(t.name for t in a.args))
        return {p: tuple(rows) for p, rows in index.items()}

    def sorted_atoms(self) -> list[Atom]:
        return sorted(self.true_atoms, key=lambda a: a.sort_key)

    def __str__(self) -> str:
        return "{" + ", ".join(str(a) for a in self.sorted_atoms()) + "}"


@dataclass(frozen=True)
class Substitution:
    """Variable to constant bindings."""
    bindings: tuple[tuple[str, str], ...] = ()

    def as_dict(self) -> dict[str, str]:
        return dict(self.bindings)

    def apply(self, f: Union[Atom, Clause, Cube]) -> Union[Atom, Clause, Cube]:
        return f.substitute(self.as_dict())


def ground_instances(f: Union[Clause, Cube], hu: Iterable[str]) -> list[Union[Clause, Cube]]:
    """fθ for every total substitution θ of f's variables into hu.

    Substitutions are enumerated in lexicographic binding order, variables
    taken in order of first occurrence.
    """
    variables = f.variables()
    constants = sorted(set(hu))
    if variables and not constants:
        raise VariableInGroundContext(f"cannot ground {f} over an empty universe")
    return [
        Substitution(tuple(zip(variables, values))).apply(f)
        for values in itertools.product(constants, repeat=len(variables))
    ]


def check_symbols(f: Union[Formula, Clause, Cube, Atom], base: HerbrandBase) -> None:
    """Raise SignatureMismatch unless f only uses the base's predicates and constants."""
    atoms = (f,) if isinstance(f, Atom) else f.atoms()
    arities = base.arities
    for a in atoms:
        if arities.get(a.predicate) != a.arity:
            raise SignatureMismatch(
                f"predicate {a.predicate}/{a.arity} is not in the signature",
                predicate=a.predicate,
            )
        stray = a.constants() - base.universe
        if stray:
            raise SignatureMismatch(
                f"constants {sorted(stray)} of {a} are not in the universe",
                constants=sorted(stray),
            )


def _match(pattern: Atom, row: tuple[str, ...], binding: dict[str, str]) -> Optional[dict[str, str]]:
    extended = binding
    for t, value in zip(pattern.args, row):
        if t.is_variable:
            bound = extended.get(t.name)
            if bound is None:
                if extended is binding:
                    extended = dict(binding)
                extended[t.name] = value
            elif bound != value:
                return None
        elif t.name != value:
            return None
    return extended


def find_substitution(
    positives: Sequence[Atom],
    negatives: Sequence[Atom],
    i: Interpretation,
) -> Optional[dict[str, str]]:
    """Backtracking search for θ with every positiveθ true and every negativeθ false in i."""
    index = i.by_predicate
    constants = i.base.constants

    def negatives_from(k: int, binding: dict[str, str]) -> Optional[dict[str, str]]:
        if k == len(negatives):
            return binding
        pattern = negatives[k]
        free = [v for v in pattern.variables() if v not in binding]
        for values in itertools.product(constants, repeat=len(free)):
            trial = {**binding, **dict(zip(free, values))} if free else binding
            if pattern.substitute(trial) not in i.true_atoms:
                found = negatives_from(k + 1, trial)
                if found is not None:
                    return found
        return None

    def positives_from(k: int, binding: dict[str, str]) -> Optional[dict[str, str]]:
        if k == len(positives):
            return negatives_from(0, binding)
        pattern = positives[k]
        for row in index.get(pattern.predicate, ()):
            if len(row) != pattern.arity:
                continue
            extended = _match(pattern, row, binding)
            if extended is not None:
                found = positives_from(k + 1, extended)
                if found is not None:
                    return found
        return None

    return positives_from(0, {})


def eval_cnf(t: ClausalTheory, i: Interpretation) -> bool:
    """True iff no grounding of any clause has a true body and a false head."""
    check_symbols(t, i.base)
    return all(find_substitution(c.body, c.head, i) is None for c in t.clauses)


def eval_dnf(d: DnfFormula, i: Interpretation) -> bool:
    """True iff some cube has a grounding true in i."""
    check_symbols(d, i.base)
    return any(
        find_substitution(c.positive_atoms(), c.negative_atoms(), i) is not None
        for c in d.cubes
    )


def evaluate(f: Formula, i: Interpretation) -> bool:
    if isinstance(f, ClausalTheory):
        return eval_cnf(f, i)
    return eval_dnf(f, i)


def negate(f: Formula) -> Formula:
    """De Morgan dual: cube ↔ clause with literal signs flipped."""
    if isinstance(f, DnfFormula):
        return ClausalTheory(tuple(
            Clause(head=c.negative_atoms(), body=c.positive_atoms()) for c in f.cubes
        ))
    return DnfFormula(tuple(
        Cube(
            tuple(Literal(a, True) for a in c.body)
            + tuple(Literal(a, False) for a in c.head)
        )
        for c in f.clauses
    ))


def is_horn(t: ClausalTheory) -> bool:
    return all(c.is_horn for c in t.clauses)


def _renaming(variables: Sequence[str]) -> dict[str, Term]:
    return {v: Term.variable(f"V{k}") for k, v in enumerate(variables, start=1)}


def canonical_cube(cube: Cube) -> Cube:
    """Rename variables to V1, V2, ... in order of first occurrence."""
    renaming = _renaming(cube.variables())
    return Cube(tuple(
        Literal(Atom(lit.atom.predicate, tuple(renaming.get(t.name, t) if t.is_variable else t
                                              for t in lit.atom.args)), lit.positive)
        for lit in cube.literals
    ))


def literal_templates(signature: Mapping[str, int], max_variables: int, signed: bool = False) -> list[Literal]:
    """Every literal over the signature whose arguments are among V1..V{max_variables}."""
    variables = [Term.variable(f"V{k}") for k in range(1, max_variables + 1)]
    templates = []
    for predicate, arity in sorted(signature.items()):
        for args in itertools.product(variables, repeat=arity):
            a = Atom(predicate, tuple(args))
            templates.append(Literal(a, True))
            if signed:
                templates.append(Literal(a, False))
    return templates


def cube_language_size(
    signature: Mapping[str, int],
    max_literals: int,
    max_variables: int,
    signed: bool = False,
    min_literals: int = 1,
) -> int:
    """Number of literal combinations cube_language examines, before deduplication."""
    count = len(literal_templates(signature, max_variables, signed))
    return sum(math.comb(count, k) for k in range(min_literals, max_literals + 1))


def cube_language(
    signature: Mapping[str, int],
    max_literals: int,
    max_variables: int,
    signed: bool = False,
    min_literals: int = 1,
) -> list[Cube]:
    """Canonically renamed cubes of min_literals..max_literals distinct literals.

    Sorted by (number of literals, text).
    """
    templates = literal_templates(signature, max_variables, signed)
    cubes: dict[Cube, None] = {}
    for size in range(min_literals, max_literals + 1):
        for combo in itertools.combinations(templates, size):
            cubes.setdefault(canonical_cube(Cube(combo)), None)
    return sorted(cubes, key=lambda c: (len(c), str(c)))
