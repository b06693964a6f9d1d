"""Tests for palindrome annotations turned into extended examples and structures."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.models.errors import InvalidRequest, MalformedRelations, MissingWeights
from src.services.rna_ingest import (
    PalindromeSet,
    build_rna_example,
    learning_base,
    maximal_compatible_subsets,
    structure_possibilities,
    top_k_structures,
)


class TestPalindromeSet:
    def test_unknown_relation(self):
        with pytest.raises(MalformedRelations):
            PalindromeSet(names=("a", "b"), relations=(("X", "a", "b"),))

    def test_undeclared_palindrome(self):
        with pytest.raises(MalformedRelations):
            PalindromeSet(names=("a",), relations=(("P", "a", "z"),))

    def test_reflexive_relation(self):
        with pytest.raises(MalformedRelations):
            PalindromeSet(names=("a", "b"), relations=(("O", "a", "a"),))

    def test_duplicate_pair(self):
        with pytest.raises(MalformedRelations):
            PalindromeSet(names=("a", "b"), relations=(("P", "a", "b"), ("O", "a", "b")))

    def test_self_incompatibility(self):
        with pytest.raises(MalformedRelations):
            PalindromeSet(names=("a",), incompatible=(("a", "a"),))

    def test_file_weights_are_sorted_by_index(self, e7):
        assert e7.weights == ((0, 0.9), (1, 0.1))


class TestRnaExample:
    def test_theory_and_bases(self, e7):
        x = build_rna_example(e7)
        assert len(x.theory) == 11
        assert len(x.extended_base) == 15
        assert len(x.learning_base) == 9
        assert x.learning_base == learning_base(e7)

    def test_assumption_base_holds_the_helix_atoms(self, e7):
        x = build_rna_example(e7)
        assert sorted(str(a) for a in x.assumption_base.atoms) == [f"hel({n})" for n in "abcde"]


class TestStructures:
    def test_maximal_compatible_helix_sets(self, e7):
        candidates = maximal_compatible_subsets(e7)
        assert [c.helices for c in candidates] == [("a", "b", "d", "e"), ("a", "c", "d", "e")]

    def test_relations_of_the_first_structure(self, e7):
        first = maximal_compatible_subsets(e7)[0]
        assert [str(a) for a in first.sorted_relations()] == [
            "includes(a,b)", "includes(a,d)", "includes(a,e)",
            "overlaps(d,e)", "precedes(b,d)", "precedes(b,e)",
        ]

    def test_without_palindromes(self):
        candidates = maximal_compatible_subsets(PalindromeSet(names=()))
        assert len(candidates) == 1
        assert candidates[0].helices == ()
        assert not candidates[0].ground_relations

    def test_without_incompatibilities_every_palindrome_is_a_helix(self):
        ps = PalindromeSet(names=("b", "a"), relations=(("P", "a", "b"),))
        candidates = maximal_compatible_subsets(ps)
        assert [c.helices for c in candidates] == [("a", "b")]

    def test_weighted_possibilities(self, e7):
        e = structure_possibilities(e7)
        assert [p.weight for p in e.items] == [0.9, 0.1]

    def test_unweighted_possibilities(self):
        ps = PalindromeSet(names=("a", "b"), incompatible=(("a", "b"),))
        e = structure_possibilities(ps)
        assert len(e.items) == 2
        assert all(p.weight is None for p in e.items)


class TestTopK:
    def test_keep_the_most_probable(self, e7):
        top = top_k_structures(e7, 1)
        assert top.indices == (0,)
        assert top.retained_mass == pytest.approx(0.9)

    def test_k_beyond_the_structure_count(self, e7):
        top = top_k_structures(e7, 5)
        assert top.indices == (0, 1)
        assert top.retained_mass == pytest.approx(1.0)

    def test_k_must_be_positive(self, e7):
        with pytest.raises(InvalidRequest):
            top_k_structures(e7, 0)

    def test_weights_required(self):
        with pytest.raises(MissingWeights):
            top_k_structures(PalindromeSet(names=("a",)), 1)

    def test_weight_index_out_of_range(self):
        ps = PalindromeSet(names=("a",), weights=((3, 1.0),))
        with pytest.raises(InvalidRequest):
            top_k_structures(ps, 1)

    def test_structure_without_a_weight(self):
        ps = PalindromeSet(names=("a", "b"), incompatible=(("a", "b"),), weights=((0, 1.0),))
        with pytest.raises(MissingWeights):
            top_k_structures(ps, 1)
        with pytest.raises(MissingWeights):
            structure_possibilities(ps)

    def test_kept_structures_stay_in_canonical_order(self):
        ps = PalindromeSet(names=("a", "b", "c"), incompatible=(("b", "c"),), weights=((0, 0.2), (1, 0.8)))
        everything = top_k_structures(ps, 5)
        assert everything.indices == (0, 1)
        assert [p.weight for p in everything.possibilities.items] == [0.2, 0.8]
        assert top_k_structures(ps, 1).indices == (1,)

    def test_selected_indices_are_resorted(self):
        ps = PalindromeSet(
            names=("a", "b", "c"),
            incompatible=(("a", "b"), ("b", "c"), ("a", "c")),
            weights=((0, 0.1), (1, 0.3), (2, 0.6)),
        )
        top = top_k_structures(ps, 2)
        assert top.indices == (1, 2)
        assert [p.weight for p in top.possibilities.items] == [0.3, 0.6]


def brute_force_helix_sets(ps: PalindromeSet) -> list[tuple[str, ...]]:
    """Inclusion-maximal subsets with no incompatible pair, by filtering all 2^n subsets."""
    clashes = {frozenset(pair) for pair in ps.incompatible}
    independent = [
        set(subset)
        for size in range(len(ps.names) + 1)
        for subset in itertools.combinations(ps.names, size)
        if not any(frozenset(pair) in clashes for pair in itertools.combinations(subset, 2))
    ]
    maximal = [s for s in independent if not any(s < other for other in independent)]
    return sorted(tuple(sorted(s)) for s in maximal)


@pytest.mark.property_based
@given(rng=st.randoms(use_true_random=False), count=st.integers(min_value=0, max_value=12))
@settings(max_examples=60, deadline=None)
def test_maximal_compatible_subsets_match_brute_force(rng, count):
    names = tuple(f"p{k}" for k in range(count))
    pairs = [pair for pair in itertools.combinations(names, 2) if rng.random() < 0.3]
    ps = PalindromeSet(names=names, incompatible=tuple(pairs))
    assert [c.helices for c in maximal_compatible_subsets(ps)] == brute_force_helix_sets(ps)
