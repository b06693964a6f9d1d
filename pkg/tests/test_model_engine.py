"""Tests for model enumeration, entailment and partial models."""

import pytest

from src.models.errors import BaseTooLarge, Inconsistent, NotHorn, SubbaseMismatch
from src.services.logic_core import ClausalTheory, DnfFormula, HerbrandBase, Interpretation, atom
from src.services.model_engine import (
    ExtendedExample,
    PartialInterpretation,
    consistent,
    ct,
    ct_pos,
    entails,
    enumerate_models,
    extensions,
    is_satisfiable,
    least_herbrand_model,
    maximal_partial_models,
    minimal_partial_models,
    models,
    partial_models,
    partial_models_by_assumption,
    projection,
    track_calls,
)
from src.services.parser import parse_atom, parse_dnf, parse_theory
from src.services.rna_ingest import build_rna_example
from tests.helpers import atom_sets


def partial(base: HerbrandBase, *texts: str) -> PartialInterpretation:
    return PartialInterpretation(base, frozenset(parse_atom(t) for t in texts))


class TestEnumerateModels:
    def test_generalized_positive_has_four_models(self, e2):
        found = enumerate_models(e2.positive, e2.base)
        assert [str(m) for m in found] == [
            "{bird, light}",
            "{bird, green, light}",
            "{bird, light, red}",
            "{bird, green, light, red}",
        ]

    def test_models_in_ascending_mask_order(self, e3):
        found = enumerate_models(e3.theory, e3.extended_base)
        assert atom_sets(found) == [
            {"light"},
            {"light", "polygon"},
            {"light", "polygon", "square"},
            {"light", "white"},
        ]
        masks = [m.mask for m in found]
        assert masks == sorted(masks)

    def test_unsatisfiable_theory_has_no_model(self, e2):
        assert enumerate_models(parse_theory("bird.\n:- bird."), e2.base) == []

    def test_limit(self, e2):
        assert [str(m) for m in enumerate_models(e2.positive, e2.base, limit=1)] == ["{bird, light}"]

    def test_zero_limit_yields_nothing(self, e2):
        assert enumerate_models(e2.positive, e2.base, limit=0) == []
        fully_determined = HerbrandBase.build({"a": 0}, ())
        assert enumerate_models(parse_theory("a."), fully_determined, limit=0) == []
        assert enumerate_models(ClausalTheory(), HerbrandBase.build({}, ()), limit=0) == []

    def test_limit_on_a_fully_propagated_search(self):
        base = HerbrandBase.build({"a": 0}, ())
        assert [str(m) for m in enumerate_models(parse_theory("a."), base, limit=1)] == ["{a}"]

    def test_base_size_cap(self):
        base = HerbrandBase.build({"p": 1}, [f"c{k}" for k in range(25)])
        with pytest.raises(BaseTooLarge):
            enumerate_models(ClausalTheory(), base)

    def test_cap_override(self, e2):
        with pytest.raises(BaseTooLarge):
            enumerate_models(e2.positive, e2.base, max_atoms=3)

    def test_first_order_rule_grounded_over_universe(self):
        base = HerbrandBase.build({"p": 1, "q": 1}, ["a", "b"])
        found = enumerate_models(parse_theory("p(a).\nq(X) :- p(X).\n:- q(b)."), base)
        assert atom_sets(found) == [{"p(a)", "q(a)"}]

    def test_dnf_models(self, e2):
        found = models(parse_dnf("bird, light, green, red"), e2.base)
        assert [str(m) for m in found] == ["{bird, green, light, red}"]


class TestEntailment:
    def test_positive_entails_hypothesis(self, e2):
        assert entails(e2.positive, e2.hypothesis, e2.base)

    def test_negative_shares_no_model_with_hypothesis(self, e2):
        assert not entails(e2.negative, e2.hypothesis, e2.base)
        assert not consistent(e2.negative, e2.hypothesis, e2.base)

    def test_conjunction_with_true(self, e2):
        assert consistent(e2.positive, DnfFormula.true(), e2.base)
        assert not consistent(parse_theory("false."), DnfFormula.true(), e2.base)

    def test_single_model_theory_entails_its_cube(self):
        base = HerbrandBase.build({"a": 0, "b": 0}, ())
        assert entails(parse_theory("a.\nb."), parse_dnf("a, b"), base)

    def test_satisfiable(self, e2):
        assert is_satisfiable(e2.negative, e2.base)
        assert not is_satisfiable(parse_dnf("false"), e2.base)


class TestCharacteristicTheory:
    def test_ct_lists_facts_then_negative_units(self, e3):
        j = partial(e3.learning_base, "light", "square")
        assert str(ct(j)) == "light.\nsquare.\n:- white."

    def test_ct_has_its_interpretation_as_only_model(self, e3):
        j = partial(e3.learning_base, "light", "square")
        assert enumerate_models(ct(j), j.base) == [Interpretation(j.base, j.true_atoms)]

    def test_ct_pos_drops_negative_units(self, e3):
        assert str(ct_pos(partial(e3.learning_base, "light"))) == "light."


class TestExtensionsAndProjection:
    def test_extensions_fix_the_known_atoms(self, e3):
        j = partial(e3.learning_base, "light")
        assert atom_sets(extensions(j, e3.extended_base)) == [{"light"}, {"light", "polygon"}]

    def test_extension_on_the_same_base_is_itself(self, e3):
        j = Interpretation(e3.extended_base, frozenset({atom("light")}))
        assert extensions(j, e3.extended_base) == [j]

    def test_extensions_need_a_subbase(self, e3):
        other = HerbrandBase.build({"red": 0}, ())
        with pytest.raises(SubbaseMismatch):
            extensions(Interpretation(other), e3.extended_base)

    def test_projection(self, e3):
        m = Interpretation(e3.extended_base, frozenset(parse_atom(t) for t in ("light", "polygon", "square")))
        assert atom_sets([projection(m, e3.learning_base)]) == [{"light", "square"}]

    def test_extended_example_checks_its_bases(self, e3):
        with pytest.raises(SubbaseMismatch):
            ExtendedExample(e3.theory, e3.learning_base, e3.extended_base)


class TestPartialModels:
    def test_example_with_hidden_polygon(self, e3):
        assert atom_sets(partial_models(e3)) == [{"light"}, {"light", "square"}, {"light", "white"}]

    def test_maximal_and_minimal(self, e3):
        assert atom_sets(maximal_partial_models(e3)) == [{"light", "square"}, {"light", "white"}]
        assert atom_sets(minimal_partial_models(e3)) == [{"light"}]

    def test_hidden_near_fact_excludes_white_square(self, e4):
        found = atom_sets(partial_models(e4))
        assert found == [{"light(a)"}, {"light(a)", "square(a)"}, {"light(a)", "white(a)"}]
        assert {"light(a)", "square(a)", "white(a)"} not in found

    def test_dropping_near_fact_readmits_white_square(self, e4):
        theory = parse_theory(":- near(X,X).\nlight(a).\n:- square(X), white(X), near(X,Y).")
        x = ExtendedExample(theory, e4.extended_base, e4.learning_base)
        assert {"light(a)", "square(a)", "white(a)"} in atom_sets(partial_models(x))

    def test_assumption_route_agrees(self, e3, e4):
        for x in (e3, e4):
            assert atom_sets(partial_models_by_assumption(x)) == atom_sets(partial_models(x))


class TestLeastHerbrandModel:
    def test_definite_theory(self, e3):
        assert atom_sets([least_herbrand_model(e3.theory, e3.extended_base)]) == [{"light"}]

    def test_rules_fire_in_chains(self):
        base = HerbrandBase.build({"p": 1, "q": 1, "r": 1}, ["a"])
        least = least_herbrand_model(parse_theory("p(a).\nq(X) :- p(X).\nr(X) :- q(X)."), base)
        assert atom_sets([least]) == [{"p(a)", "q(a)", "r(a)"}]

    def test_non_horn_is_refused(self, e5):
        with pytest.raises(NotHorn):
            least_herbrand_model(e5.negative, e5.base)

    def test_violated_negative_clause(self, e5):
        with pytest.raises(Inconsistent):
            least_herbrand_model(parse_theory("red.\n:- red."), e5.base)

    def test_rna_example_without_helices(self, e7):
        x = build_rna_example(e7)
        least = least_herbrand_model(x.theory, x.extended_base)
        assert atom_sets([least]) == [{"incompatible(b,c)"}]


class TestCallTracking:
    def test_counts_inside_block_only(self, e2, e3):
        with track_calls() as calls:
            enumerate_models(e2.positive, e2.base)
            is_satisfiable(e2.positive, e2.base)
            least_herbrand_model(e3.theory, e3.extended_base)
        enumerate_models(e2.positive, e2.base)
        assert (calls.enumerations, calls.sat_checks, calls.fixpoints) == (1, 1, 1)
