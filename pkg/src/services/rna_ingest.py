"""Extended examples built from palindrome annotations of an RNA sequence.

A palindrome may or may not form a helix. The structural relations between
two palindromes are observable only when both are helices, and two
incompatible palindromes are never helices together.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import networkx as nx

from src.models.errors import InvalidRequest, MalformedRelations, MissingWeights
from src.models.schemas import RnaInputFile
from src.services.compat import Possibilities, Possibility
from src.services.logic_core import Atom, ClausalTheory, Clause, HerbrandBase, Interpretation, atom
from src.services.model_engine import ExtendedExample, ct

logger = logging.getLogger(__name__)

RELATION_PREDICATES = {"P": "precedes", "O": "overlaps", "I": "includes"}
HELIX = "hel"
INCOMPATIBLE = "incompatible"

SIGNATURE = {
    **{predicate: 2 for predicate in RELATION_PREDICATES.values()},
    INCOMPATIBLE: 2,
    HELIX: 1,
}

# ← incompatible(X,Y) ∧ hel(X) ∧ hel(Y)
INCOMPATIBILITY_CONSTRAINT = Clause(
    body=(atom(INCOMPATIBLE, "X", "Y"), atom(HELIX, "X"), atom(HELIX, "Y"))
)


@dataclass(frozen=True)
class PalindromeSet:
    """Palindromes with their pairwise relations, incompatibilities and structure weights."""
    names: tuple[str, ...]
    relations: tuple[tuple[str, str, str], ...] = ()
    incompatible: tuple[tuple[str, str], ...] = ()
    weights: Optional[tuple[tuple[int, float], ...]] = None

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise MalformedRelations("palindrome names must be unique")
        known = set(self.names)
        pairs: set[tuple[str, str]] = set()
        for relation, p1, p2 in self.relations:
            if relation not in RELATION_PREDICATES:
                raise MalformedRelations(f"unknown relation {relation!r}", relation=relation)
            if p1 not in known or p2 not in known:
                raise MalformedRelations(f"relation {relation}({p1},{p2}) uses an undeclared palindrome")
            if p1 == p2:
                raise MalformedRelations(f"relation {relation}({p1},{p2}) is reflexive")
            if (p1, p2) in pairs:
                raise MalformedRelations(f"more than one relation declared for ({p1},{p2})")
            pairs.add((p1, p2))
        for p1, p2 in self.incompatible:
            if p1 not in known or p2 not in known:
                raise MalformedRelations(f"incompatibility ({p1},{p2}) uses an undeclared palindrome")
            if p1 == p2:
                raise MalformedRelations(f"palindrome {p1} cannot be incompatible with itself")

    @classmethod
    def from_file(cls, data: RnaInputFile) -> "PalindromeSet":
        weights = None if data.weights is None else tuple(sorted(data.weights.items()))
        return cls(
            names=tuple(data.palindromes),
            relations=tuple(tuple(r) for r in data.relations),
            incompatible=tuple(tuple(p) for p in data.incompatible),
            weights=weights,
        )

    def relation_atoms(self) -> list[Atom]:
        return [atom(RELATION_PREDICATES[r], p1, p2) for r, p1, p2 in self.relations]


@dataclass(frozen=True)
class StructureCandidate:
    """A maximal set of mutually compatible helices and the relations it makes observable."""
    helices: tuple[str, ...]
    ground_relations: frozenset[Atom]

    def sorted_relations(self) -> list[Atom]:
        return sorted(self.ground_relations, key=lambda a: a.sort_key)


def learning_base(ps: PalindromeSet) -> HerbrandBase:
    """HB: the declared structural atoms."""
    return HerbrandBase.restricted(SIGNATURE, ps.relation_atoms(), ps.names)


def build_rna_example(ps: PalindromeSet) -> ExtendedExample:
    """e = F_e ∧ B ∧ L_e on HB_e = HB ∪ HB_a ∪ incompatibility atoms.

    F_e holds the incompatibility facts, B forbids two incompatible helices,
    and L_e has one rule R(p1,p2) ← hel(p1) ∧ hel(p2) per declared relation.
    """
    facts = [Clause(head=(atom(INCOMPATIBLE, p1, p2),)) for p1, p2 in ps.incompatible]
    rules = [
        Clause(head=(atom(RELATION_PREDICATES[r], p1, p2),), body=(atom(HELIX, p1), atom(HELIX, p2)))
        for r, p1, p2 in ps.relations
    ]
    theory = ClausalTheory(tuple(facts + [INCOMPATIBILITY_CONSTRAINT] + rules))
    hb = learning_base(ps)
    hb_a = HerbrandBase.restricted(SIGNATURE, [atom(HELIX, n) for n in ps.names], ps.names)
    hb_incompatible = HerbrandBase.restricted(
        SIGNATURE, [atom(INCOMPATIBLE, p1, p2) for p1, p2 in ps.incompatible], ps.names
    )
    hb_e = hb.union(hb_a, hb_incompatible)
    logger.debug("rna example: %d clauses, |HB|=%d, |HB_e|=%d", len(theory), len(hb), len(hb_e))
    return ExtendedExample(theory, hb_e, hb, hb_a)


def maximal_compatible_subsets(ps: PalindromeSet) -> list[StructureCandidate]:
    """Maximal independent sets of the incompatibility graph, in canonical order."""
    if not ps.names:
        return [StructureCandidate((), frozenset())]
    graph = nx.Graph()
    graph.add_nodes_from(ps.names)
    graph.add_edges_from(ps.incompatible)
    helix_sets = sorted(tuple(sorted(clique)) for clique in nx.find_cliques(nx.complement(graph)))
    candidates = []
    for helices in helix_sets:
        chosen = set(helices)
        relations = frozenset(
            atom(RELATION_PREDICATES[r], p1, p2)
            for r, p1, p2 in ps.relations
            if p1 in chosen and p2 in chosen
        )
        candidates.append(StructureCandidate(helices, relations))
    return candidates


def _weights(ps: PalindromeSet, count: int) -> list[float]:
    if ps.weights is None:
        raise MissingWeights("no structure weights were given")
    given = dict(ps.weights)
    for index in given:
        if not 0 <= index < count:
            raise InvalidRequest(f"weight given for structure {index}, but there are {count}")
    missing = [index for index in range(count) if index not in given]
    if missing:
        raise MissingWeights(f"no weight for structures {missing}", missing=missing)
    return [given[index] for index in range(count)]


def structure_possibilities(ps: PalindromeSet) -> Possibilities:
    """One single-model possibility ct(j) on HB per candidate structure, weighted when weights exist."""
    candidates = maximal_compatible_subsets(ps)
    hb = learning_base(ps)
    weights = _weights(ps, len(candidates)) if ps.weights is not None else [None] * len(candidates)
    return Possibilities(tuple(
        Possibility(ct(Interpretation(hb, c.ground_relations)), hb, w)
        for c, w in zip(candidates, weights)
    ))


@dataclass(frozen=True)
class TopStructures:
    """The k most probable structures with their indices and retained probability mass."""
    indices: tuple[int, ...]
    possibilities: Possibilities

    @property
    def retained_mass(self) -> float:
        return self.possibilities.retained_mass


def top_k_structures(ps: PalindromeSet, k: int) -> TopStructures:
    """Keep the k highest-weight structures, listed in canonical order.

    Weights are reported as given, not renormalized. Ties go to the lower index.
    """
    candidates = maximal_compatible_subsets(ps)
    weights = _weights(ps, len(candidates))
    ranked = sorted(sorted(range(len(candidates)), key=lambda index: (-weights[index], index))[:max(k, 0)])
    if not ranked:
        raise InvalidRequest("top-k needs k >= 1")
    hb = learning_base(ps)
    items = tuple(
        Possibility(ct(Interpretation(hb, candidates[index].ground_relations)), hb, weights[index])
        for index in ranked
    )
    retained = sum(weights[index] for index in ranked)
    logger.info("kept %d of %d structures, retained mass %.6f", len(ranked), len(candidates), retained)
    return TopStructures(tuple(ranked), Possibilities(items, retained_mass=retained))
