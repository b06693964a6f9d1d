"""Tests for the theory and DNF grammars."""

import pytest

from src.models.errors import ParseError
from src.services.logic_core import Clause, DnfFormula, atom
from src.services.parser import (
    parse_atom,
    parse_dnf,
    parse_formula,
    parse_patterns,
    parse_theory,
    serialize_dnf,
    serialize_theory,
)


class TestTheoryGrammar:
    def test_clause_shapes(self):
        theory = parse_theory(
            "light(a).                     % fact\n"
            "polygon(X) :- square(X).\n"
            "red(X) ; green(X) :- bird(X).\n"
            ":- polygon(X), white(X).\n"
            "false.\n"
        )
        assert theory.clauses == (
            Clause(head=(atom("light", "a"),)),
            Clause(head=(atom("polygon", "X"),), body=(atom("square", "X"),)),
            Clause(head=(atom("red", "X"), atom("green", "X")), body=(atom("bird", "X"),)),
            Clause(body=(atom("polygon", "X"), atom("white", "X"))),
            Clause(),
        )

    def test_empty_text_is_the_empty_theory(self):
        assert len(parse_theory("")) == 0
        assert len(parse_theory("% nothing here\n")) == 0

    def test_duplicate_clauses_are_merged(self):
        assert len(parse_theory("bird.\nbird.")) == 1

    def test_serialized_theory_parses_back(self):
        text = "light.\npolygon :- square.\n:- polygon, white."
        assert serialize_theory(parse_theory(text)) == text

    def test_missing_period_reports_end_of_input(self):
        with pytest.raises(ParseError) as error:
            parse_theory("light(a).\nfoo(b)")
        assert error.value.line == 2
        assert "end of input" in error.value.message

    def test_illegal_character_position(self):
        with pytest.raises(ParseError) as error:
            parse_theory("light(a) & b.")
        assert (error.value.line, error.value.column) == (1, 10)


class TestDnfGrammar:
    def test_disjunction_of_cubes(self):
        d = parse_dnf("bird, light | red, light")
        assert len(d) == 2
        assert str(d) == "bird, light | red, light"

    def test_negated_literal(self):
        literal = parse_dnf("~polygon(X)").cubes[0].literals[0]
        assert not literal.positive
        assert literal.atom == atom("polygon", "X")

    def test_keywords(self):
        assert parse_dnf("true") == DnfFormula.true()
        assert parse_dnf("false") == DnfFormula.false()

    def test_blank_formula_is_an_error(self):
        with pytest.raises(ParseError):
            parse_dnf("   ")

    def test_dangling_bar(self):
        with pytest.raises(ParseError):
            parse_dnf("bird |")

    def test_serialized_dnf_parses_back(self):
        for text in ("light(X), ~red(X) | brighter(X,Y)", "bird", "~a | b, c | d"):
            d = parse_dnf(text)
            assert parse_dnf(serialize_dnf(d)) == d

    def test_formula_by_kind(self):
        assert isinstance(parse_formula("a.", "cnf"), type(parse_theory("")))
        assert isinstance(parse_formula("a", "dnf"), DnfFormula)


class TestAtomsAndPatterns:
    def test_single_atom(self):
        assert parse_atom("brighter(a,b)") == atom("brighter", "a", "b")

    def test_negated_atom_is_refused(self):
        with pytest.raises(ParseError):
            parse_atom("~light(a)")

    def test_conjunction_is_refused(self):
        with pytest.raises(ParseError):
            parse_atom("light(a), red(a)")

    def test_patterns_skip_comments_and_blank_lines(self):
        patterns = parse_patterns("% header\n\noverlaps(X,Y)\nprecedes(X,Y), overlaps(X,Z)  % two\n")
        assert [str(p) for p in patterns] == ["overlaps(X,Y)", "precedes(X,Y), overlaps(X,Z)"]

    def test_pattern_error_names_the_line(self):
        with pytest.raises(ParseError) as error:
            parse_patterns("overlaps(X,Y)\noverlaps(X,\n")
        assert "pattern line 2" in error.value.message
