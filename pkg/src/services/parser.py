"""Parsers and serializers for the theory and DNF text grammars.

Theory grammar::

    light(a).                     % fact
    polygon(X) :- square(X).      % definite clause
    red(X) ; green(X) :- bird(X). % disjunctive head
    :- polygon(X), white(X).      % negative clause
    false.                        % empty clause

DNF grammar: cubes separated by ``|``, literals by ``,``, negation ``~``;
``true`` is the empty cube and ``false`` the empty disjunction.
Variables start with an uppercase letter, constants and predicates with a
lowercase one.
"""

from functools import lru_cache

import ply.lex as lex
import ply.yacc as yacc

from src.models.errors import ParseError
from src.services.logic_core import (
    Atom,
    ClausalTheory,
    Clause,
    Cube,
    DnfFormula,
    Literal,
    Term,
)

KEYWORDS = {"true": "TRUE", "false": "FALSE"}


class _SyntaxFailure(Exception):
    def __init__(self, pos, value):
        super().__init__(value)
        self.pos = pos
        self.value = value


def _location(data: str, pos: int) -> tuple[int, int]:
    line = data.count("\n", 0, pos) + 1
    column = pos - (data.rfind("\n", 0, pos) + 1) + 1
    return line, column


class FormulaLexer:
    """Token rules shared by both grammars."""

    tokens = (
        "NAME",
        "VARIABLE",
        "LPAREN",
        "RPAREN",
        "COMMA",
        "SEMI",
        "PERIOD",
        "IMPLIED_BY",
        "BAR",
        "TILDE",
        "TRUE",
        "FALSE",
    )

    t_LPAREN = r"\("
    t_RPAREN = r"\)"
    t_COMMA = r","
    t_SEMI = r";"
    t_PERIOD = r"\."
    t_IMPLIED_BY = r":-"
    t_BAR = r"\|"
    t_TILDE = r"~"
    t_ignore = " \t\r"
    t_ignore_COMMENT = r"%[^\n]*"

    def t_NAME(self, t):
        r"[a-z][A-Za-z0-9_]*"
        t.type = KEYWORDS.get(t.value, "NAME")
        return t

    def t_VARIABLE(self, t):
        r"[A-Z][A-Za-z0-9_]*"
        return t

    def t_newline(self, t):
        r"\n+"
        t.lexer.lineno += len(t.value)

    def t_error(self, t):
        line, column = _location(t.lexer.lexdata, t.lexpos)
        raise ParseError(f"illegal character {t.value[0]!r}", line, column)

    def build(self):
        return lex.lex(module=self, errorlog=lex.NullLogger())


class _AtomRules:
    """Productions for atoms and terms, mixed into both grammars."""

    tokens = FormulaLexer.tokens

    def p_atom_propositional(self, p):
        "atom : NAME"
        p[0] = Atom(p[1])

    def p_atom(self, p):
        "atom : NAME LPAREN terms RPAREN"
        p[0] = Atom(p[1], tuple(p[3]))

    def p_terms_one(self, p):
        "terms : term"
        p[0] = [p[1]]

    def p_terms_more(self, p):
        "terms : terms COMMA term"
        p[0] = p[1] + [p[3]]

    def p_term_constant(self, p):
        "term : NAME"
        p[0] = Term.constant(p[1])

    def p_term_variable(self, p):
        "term : VARIABLE"
        p[0] = Term.variable(p[1])

    def p_error(self, p):
        if p is None:
            raise _SyntaxFailure(None, None)
        raise _SyntaxFailure(p.lexpos, p.value)


class TheoryGrammar(_AtomRules):
    start = "theory"

    def p_theory_empty(self, p):
        "theory : "
        p[0] = []

    def p_theory(self, p):
        "theory : theory clause"
        p[0] = p[1] + [p[2]]

    def p_clause_fact(self, p):
        "clause : head PERIOD"
        p[0] = Clause(tuple(p[1]), ())

    def p_clause_rule(self, p):
        "clause : head IMPLIED_BY body PERIOD"
        p[0] = Clause(tuple(p[1]), tuple(p[3]))

    def p_clause_negative(self, p):
        "clause : IMPLIED_BY body PERIOD"
        p[0] = Clause((), tuple(p[2]))

    def p_clause_empty(self, p):
        "clause : FALSE PERIOD"
        p[0] = Clause()

    def p_head_one(self, p):
        "head : atom"
        p[0] = [p[1]]

    def p_head_more(self, p):
        "head : head SEMI atom"
        p[0] = p[1] + [p[3]]

    def p_body_one(self, p):
        "body : atom"
        p[0] = [p[1]]

    def p_body_more(self, p):
        "body : body COMMA atom"
        p[0] = p[1] + [p[3]]


class DnfGrammar(_AtomRules):
    start = "dnf"

    def p_dnf_false(self, p):
        "dnf : FALSE"
        p[0] = []

    def p_dnf_one(self, p):
        "dnf : cube"
        p[0] = [p[1]]

    def p_dnf_more(self, p):
        "dnf : dnf BAR cube"
        p[0] = p[1] + [p[3]]

    def p_cube_true(self, p):
        "cube : TRUE"
        p[0] = []

    def p_cube_one(self, p):
        "cube : literal"
        p[0] = [p[1]]

    def p_cube_more(self, p):
        "cube : cube COMMA literal"
        p[0] = p[1] + [p[3]]

    def p_literal_positive(self, p):
        "literal : atom"
        p[0] = Literal(p[1], True)

    def p_literal_negative(self, p):
        "literal : TILDE atom"
        p[0] = Literal(p[2], False)


@lru_cache(maxsize=None)
def _parser(grammar: type):
    return yacc.yacc(
        module=grammar(),
        start=grammar.start,
        debug=False,
        write_tables=False,
        errorlog=yacc.NullLogger(),
    )


def _parse(grammar: type, text: str):
    lexer = FormulaLexer().build()
    try:
        return _parser(grammar).parse(text, lexer=lexer)
    except _SyntaxFailure as failure:
        if failure.pos is None:
            line, column = _location(text, len(text))
            raise ParseError("unexpected end of input", line, column) from None
        line, column = _location(text, failure.pos)
        raise ParseError(f"unexpected {failure.value!r}", line, column) from None


def parse_theory(text: str) -> ClausalTheory:
    """Parse a clausal theory; the empty text is the empty theory."""
    return ClausalTheory(tuple(_parse(TheoryGrammar, text)))


def parse_dnf(text: str) -> DnfFormula:
    """Parse a DNF formula."""
    if not text.strip():
        raise ParseError("empty formula", 1, 1)
    cubes = _parse(DnfGrammar, text)
    return DnfFormula(tuple(Cube(tuple(literals)) for literals in cubes))


def parse_atom(text: str) -> Atom:
    """Parse a single positive atom such as ``brighter(a,b)``."""
    formula = parse_dnf(text)
    if len(formula.cubes) != 1 or len(formula.cubes[0].literals) != 1:
        raise ParseError(f"expected a single atom, got {text!r}", 1, 1)
    literal = formula.cubes[0].literals[0]
    if not literal.positive:
        raise ParseError(f"expected a positive atom, got {text!r}", 1, 1)
    return literal.atom


def parse_formula(text: str, kind: str = "dnf"):
    """Parse either grammar by name ("dnf" or "cnf")."""
    return parse_dnf(text) if kind == "dnf" else parse_theory(text)


def serialize_theory(t: ClausalTheory) -> str:
    """One clause per line, in the theory grammar."""
    return str(t)


def serialize_dnf(d: DnfFormula) -> str:
    """Cubes joined by " | ", in the DNF grammar."""
    return str(d)


def parse_patterns(text: str) -> list[DnfFormula]:
    """One DNF per non-blank line; ``%`` starts a comment."""
    patterns = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        try:
            patterns.append(parse_dnf(line))
        except ParseError as error:
            raise ParseError(f"pattern line {number}: {error.message}") from None
    return patterns
