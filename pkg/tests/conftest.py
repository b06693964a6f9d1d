"""Shared fixtures: the worked examples as domain objects."""

from pathlib import Path
from types import SimpleNamespace

import pytest

from src.models.schemas import RnaInputFile
from src.services.logic_core import HerbrandBase, Interpretation
from src.services.model_engine import ExtendedExample
from src.services.parser import parse_atom, parse_dnf, parse_theory
from src.services.rna_ingest import PalindromeSet

FIXTURES = Path(__file__).parent.parent / "fixtures"

E1_ATOMS = ["light(a)", "light(b)", "red(a)", "green(b)", "brighter(a,b)"]
E2_SIGNATURE = {"bird": 0, "green": 0, "light": 0, "red": 0}
E3_THEORY = "light.\npolygon :- square.\n:- polygon, white."
E4_SIGNATURE = {"light": 1, "near": 2, "square": 1, "white": 1}
E4_THEORY = "light(a).\nnear(a,b).\n:- near(X,X).\n:- square(X), white(X), near(X,Y)."


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def e1():
    """Same positive part on HU={a,b} and on HU={a,b,c}."""
    signature = {"brighter": 2, "green": 1, "light": 1, "red": 1}
    atoms = frozenset(parse_atom(text) for text in E1_ATOMS)
    return SimpleNamespace(
        i1=Interpretation(HerbrandBase.build(signature, ["a", "b"]), atoms),
        i2=Interpretation(HerbrandBase.build(signature, ["a", "b", "c"]), atoms),
    )


@pytest.fixture
def e2():
    return SimpleNamespace(
        base=HerbrandBase.build(E2_SIGNATURE, ()),
        positive=parse_theory("bird.\nlight."),
        negative=parse_theory("bird.\n:- light."),
        hypothesis=parse_dnf("bird, light | red, light"),
    )


@pytest.fixture
def e3() -> ExtendedExample:
    return ExtendedExample(
        parse_theory(E3_THEORY),
        HerbrandBase.build({"light": 0, "polygon": 0, "square": 0, "white": 0}, ()),
        HerbrandBase.build({"light": 0, "square": 0, "white": 0}, ()),
    )


@pytest.fixture
def e4() -> ExtendedExample:
    return ExtendedExample(
        parse_theory(E4_THEORY),
        HerbrandBase.build(E4_SIGNATURE, ["a", "b"]),
        HerbrandBase.build({"light": 1, "square": 1, "white": 1}, ["a"]),
    )


@pytest.fixture
def e5():
    return SimpleNamespace(
        base=HerbrandBase.build({"light": 0, "red": 0, "square": 0}, ()),
        negative=parse_theory("red.\nsquare ; light."),
        h1=parse_dnf("square"),
        h2=parse_dnf("light"),
    )


@pytest.fixture
def e7() -> PalindromeSet:
    data = RnaInputFile.model_validate_json((FIXTURES / "e7_rna.json").read_text(encoding="utf-8"))
    return PalindromeSet.from_file(data)
