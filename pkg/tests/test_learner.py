"""Tests for greedy learning, classification and weighted probabilities."""

import pytest

from src.models.errors import MissingWeights, NotSingleModel
from src.models.schemas import ClassOutcome, LearnerConfig, Setting, Sign
from src.services.compat import Possibilities, Possibility, TheoryExample, compat_u
from src.services.learner import (
    classify,
    enumerate_cubes,
    greedy_learn,
    shortcut_applies,
    weighted_model_probability,
)
from src.services.logic_core import HerbrandBase
from src.services.parser import parse_dnf, parse_theory
from src.services.reductions import LabeledExample, LearningTask
from src.services.rna_ingest import structure_possibilities, top_k_structures
from src.services.tasks import load_task


class TestCumulativeNegativeCheck:
    def test_each_cube_alone_is_compatible(self, e5):
        assert compat_u(e5.h1, e5.negative, e5.base, Sign.NEGATIVE)
        assert compat_u(e5.h2, e5.negative, e5.base, Sign.NEGATIVE)

    def test_their_disjunction_is_not(self, e5):
        disjunction = parse_dnf("square | light")
        assert not compat_u(disjunction, e5.negative, e5.base, Sign.NEGATIVE)

    def test_learner_never_returns_the_disjunction(self, fixtures_dir):
        result = greedy_learn(load_task(fixtures_dir / "e5_task.json"))
        assert not result.success
        assert str(result.hypothesis) == "light"
        assert result.uncovered == ["p1"]
        assert not result.shortcut_used
        assert result.trace == [
            "reject red: vetoed by e-",
            "accept light: covers p2",
            "reject square: vetoed by e-",
            "reject red, square: vetoed by e-",
        ]


class TestHornShortcut:
    def test_shortcut_engaged_for_horn_negatives(self, fixtures_dir):
        task = load_task(fixtures_dir / "horn_task.json")
        assert shortcut_applies(task)
        result = greedy_learn(task)
        assert result.success
        assert result.shortcut_used
        assert str(result.hypothesis) == "light"
        assert result.trace == [
            "shortcut: negatives checked cube by cube",
            "reject bird: vetoed by n1",
            "accept light: covers p1, p2",
        ]

    def test_shortcut_off_gives_the_same_hypothesis(self, fixtures_dir):
        task = load_task(fixtures_dir / "horn_task.json")
        on = greedy_learn(task)
        off = greedy_learn(task, task.learner.model_copy(update={"horn_shortcut": False}))
        assert not off.shortcut_used
        assert off.hypothesis == on.hypothesis
        assert off.trace == on.trace[1:]

    def test_never_for_possibilities(self, fixtures_dir):
        assert not shortcut_applies(load_task(fixtures_dir / "a3_task.json"))

    def test_always_for_generalized(self, fixtures_dir):
        assert shortcut_applies(load_task(fixtures_dir / "e2_task.json"))


class TestGreedyLearn:
    def test_generalized_task(self, fixtures_dir):
        result = greedy_learn(load_task(fixtures_dir / "e2_task.json"))
        assert result.success
        assert str(result.hypothesis) == "light"

    def test_assumption_based_task_uses_partial_models(self, fixtures_dir):
        result = greedy_learn(load_task(fixtures_dir / "e4_task.json"))
        assert result.success
        assert str(result.hypothesis) == "light(V1)"

    def test_without_positives(self):
        base = HerbrandBase.build({"a": 0}, ())
        task = LearningTask.of(
            Setting.GENERALIZED,
            {"a": 0},
            [LabeledExample(TheoryExample(parse_theory("a."), base), Sign.NEGATIVE)],
        )
        result = greedy_learn(task)
        assert not result.success
        assert str(result.hypothesis) == "false"
        assert result.trace == ["no positive examples to cover"]

    def test_unnamed_examples_get_positional_names(self):
        base = HerbrandBase.build({"a": 0, "b": 0}, ())
        task = LearningTask.of(
            Setting.GENERALIZED,
            {"a": 0, "b": 0},
            [
                LabeledExample(TheoryExample(parse_theory("a."), base), Sign.POSITIVE),
                LabeledExample(TheoryExample(parse_theory("b. :- a."), base), Sign.NEGATIVE),
            ],
        )
        result = greedy_learn(task)
        assert result.trace[-1] == "accept a: covers positive[0]"

    def test_candidate_cubes_shortest_first(self):
        cubes = enumerate_cubes({"p": 1, "q": 0}, LearnerConfig(max_literals_per_cube=2, max_variables=1))
        assert [str(c) for c in cubes] == ["p(V1)", "q", "p(V1), q"]


class TestClassify:
    def test_contradictory_instance(self):
        base = HerbrandBase.build({"bird": 0, "migratory": 0, "red": 0}, ())
        instance = TheoryExample(parse_theory("bird.\nmigratory."), base)
        h = parse_dnf("bird, red")
        assert classify(h, instance, Setting.GENERALIZED) is ClassOutcome.CONTRADICTORY
        assert classify(h, instance, Setting.UNCERTAIN) is ClassOutcome.UNCERTAIN

    def test_positive_and_negative(self, e2):
        assert classify(e2.hypothesis, TheoryExample(e2.positive, e2.base), Setting.GENERALIZED) is ClassOutcome.POSITIVE
        assert classify(e2.hypothesis, TheoryExample(e2.negative, e2.base), Setting.GENERALIZED) is ClassOutcome.NEGATIVE


class TestWeightedProbability:
    def test_overlap_present_in_every_structure(self, e7):
        probability = weighted_model_probability(parse_dnf("overlaps(X,Y)"), structure_possibilities(e7))
        assert probability == pytest.approx(1.0, abs=1e-12)

    def test_precedence_only_in_first_structure(self, e7):
        probability = weighted_model_probability(parse_dnf("precedes(X,Y)"), structure_possibilities(e7))
        assert probability == pytest.approx(0.9)

    def test_truncated_structures_keep_their_weights(self, e7):
        top = top_k_structures(e7, 1)
        assert weighted_model_probability(parse_dnf("overlaps(X,Y)"), top.possibilities) == pytest.approx(0.9)

    def test_weights_required(self):
        base = HerbrandBase.build({"a": 0}, ())
        with pytest.raises(MissingWeights):
            weighted_model_probability(parse_dnf("a"), Possibilities((Possibility(parse_theory("a."), base),)))

    def test_single_models_required(self):
        base = HerbrandBase.build({"a": 0, "b": 0}, ())
        e = Possibilities((Possibility(parse_theory("a."), base, 1.0),))
        with pytest.raises(NotSingleModel):
            weighted_model_probability(parse_dnf("a"), e)
