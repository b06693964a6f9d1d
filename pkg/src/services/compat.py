"""Compatibility relations between hypotheses and examples, one pair per setting.

Every relation takes a `Sign`: the positive side is what a solution must
satisfy against positive examples, the negative side against negative ones.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Union

from src.config import get_settings
from src.models.errors import (
    DegenerateExample,
    EmptyPossibilities,
    HypothesisConstantError,
    IncompleteDeduction,
    Inconsistent,
    InvalidRequest,
    MissingWeights,
    NotDnfPlus,
)
from src.models.schemas import Route, Setting, Sign
from src.services.logic_core import (
    ClausalTheory,
    DnfFormula,
    Formula,
    HerbrandBase,
    Interpretation,
    check_symbols,
    evaluate,
    formula_constants,
    ground_instances,
    is_horn,
)
from src.services.model_engine import (
    ExtendedExample,
    PartialInterpretation,
    check_base_size,
    consistent,
    ct,
    ct_pos,
    entails,
    enumerate_models,
    is_satisfiable,
    least_herbrand_model,
    maximal_partial_models,
    minimal_partial_models,
    partial_models,
    projection,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TheoryExample:
    """Clausal theory on its own base: generalized, pure uncertain or satisfiability payload."""
    theory: ClausalTheory
    base: HerbrandBase

    def __post_init__(self):
        check_symbols(self.theory, self.base)


@dataclass(frozen=True)
class Possibility:
    theory: ClausalTheory
    base: HerbrandBase
    weight: Optional[float] = None


@dataclass(frozen=True)
class Possibilities:
    """Non-empty set of possible descriptions, at least one of them true.

    Weights are given on all items or on none. When given they must sum to
    `retained_mass` (1 unless the set was truncated to its most probable items).
    """
    items: tuple[Possibility, ...]
    retained_mass: float = 1.0

    def __post_init__(self):
        if not self.items:
            raise EmptyPossibilities("an uncertain example needs at least one possibility")
        weights = [p.weight for p in self.items]
        if all(w is None for w in weights):
            return
        if any(w is None for w in weights):
            raise MissingWeights("weights must be given for all possibilities or for none")
        if any(not 0.0 <= w <= 1.0 for w in weights):
            raise InvalidRequest("possibility weights must lie in [0, 1]")
        tolerance = get_settings().weight_tolerance
        if abs(sum(weights) - self.retained_mass) > tolerance:
            raise InvalidRequest(
                f"possibility weights sum to {sum(weights)}, expected {self.retained_mass}",
                total=sum(weights),
            )

    @property
    def weighted(self) -> bool:
        return self.items[0].weight is not None


Payload = Union[Interpretation, TheoryExample, Possibilities, ExtendedExample]


def payload_bases(payload: Payload) -> list[HerbrandBase]:
    """Bases on which hypotheses are evaluated against this payload."""
    if isinstance(payload, Possibilities):
        return [p.base for p in payload.items]
    if isinstance(payload, ExtendedExample):
        return [payload.learning_base]
    return [payload.base]


def covers(h: Formula, i: Interpretation) -> bool:
    """Learning from interpretations: i is a model of h."""
    return evaluate(h, i)


def compat_g(h: Formula, e: ClausalTheory, hb: HerbrandBase, sign: Sign) -> bool:
    """Generalized examples: every model of e⁺ is a model of h, no model of e⁻ is."""
    check_symbols(h, hb)
    if sign is Sign.POSITIVE:
        return entails(e, h, hb)
    return not consistent(e, h, hb)


def compat_u(h: Formula, e: ClausalTheory, hb: HerbrandBase, sign: Sign) -> bool:
    """Pure uncertain examples: some model of e⁺ models h, some model of e⁻ does not."""
    check_symbols(h, hb)
    if sign is Sign.POSITIVE:
        return consistent(e, h, hb)
    return not entails(e, h, hb)


def compat_s(h: Formula, e: ClausalTheory, hb: HerbrandBase, sign: Sign) -> bool:
    """Learning from satisfiability: e⁺ ∧ h is satisfiable, e⁻ ∧ h is not."""
    check_symbols(h, hb)
    holds = consistent(e, h, hb)
    return holds if sign is Sign.POSITIVE else not holds


def compat_p(h: Formula, e: Possibilities, sign: Sign) -> bool:
    """Learning from possibilities: compat_g with at least one possibility."""
    for p in e.items:
        if not is_satisfiable(p.theory, p.base):
            raise DegenerateExample("a possibility has no model on its base", theory=str(p.theory))
    return any(compat_g(h, p.theory, p.base, sign) for p in e.items)


def _degenerate() -> DegenerateExample:
    return DegenerateExample("extended example has no partial model")


def compat_a(h: Formula, x: ExtendedExample, sign: Sign) -> bool:
    """Assumption-based learning, by enumerating every partial model of x."""
    partials = partial_models(x)
    if not partials:
        raise _degenerate()
    if sign is Sign.POSITIVE:
        return any(evaluate(h, j) for j in partials)
    return any(not evaluate(h, j) for j in partials)


def compat_a_extremal(h: DnfFormula, x: ExtendedExample, sign: Sign) -> bool:
    """Check a DNF⁺ hypothesis on the maximal (positive) or minimal (negative) partial models only."""
    _require_dnf_plus(h)
    if sign is Sign.POSITIVE:
        candidates = maximal_partial_models(x)
        if not candidates:
            raise _degenerate()
        return any(evaluate(h, j) for j in candidates)
    candidates = minimal_partial_models(x)
    if not candidates:
        raise _degenerate()
    return any(not evaluate(h, j) for j in candidates)


def _require_dnf_plus(h: Formula) -> None:
    if not isinstance(h, DnfFormula) or not h.is_dnf_plus:
        raise NotDnfPlus(f"expected a DNF formula without negation, got {h}")


def compat_a_fast(h: DnfFormula, x: ExtendedExample, sign: Sign) -> bool:
    """Assumption-based compatibility of a DNF⁺ hypothesis without full enumeration.

    Positive side: some partial model contains a grounding of a cube of h iff
    ct_pos of that grounding is consistent with e, so negative assumptions
    are never tested. Negative side: a Horn e has a least partial model, the
    projection of its least Herbrand model; otherwise the minimal partial
    models are checked.
    """
    _require_dnf_plus(h)
    hb = x.learning_base
    check_symbols(h, hb)
    if sign is Sign.POSITIVE:
        if not is_satisfiable(x.theory, x.extended_base):
            raise _degenerate()
        tried: set[frozenset] = set()
        for cube in h.cubes:
            for instance in ground_instances(cube, hb.constants):
                assumed = frozenset(instance.positive_atoms())
                if assumed in tried or not assumed <= hb.atom_set:
                    continue
                tried.add(assumed)
                j = PartialInterpretation(hb, assumed)
                if is_satisfiable(x.theory.conjoin(ct_pos(j)), x.extended_base):
                    return True
        return False
    if is_horn(x.theory):
        try:
            least = least_herbrand_model(x.theory, x.extended_base)
        except Inconsistent:
            raise _degenerate() from None
        return not evaluate(h, projection(least, hb))
    return compat_a_extremal(h, x, sign)


# Assumptions on a subbase

@dataclass(frozen=True)
class AssumptionStructure:
    """Interpretation a on HB_a together with the interpretation j on HB it determines."""
    assumption: Interpretation
    deduced: PartialInterpretation


def assumption_structures(x: ExtendedExample) -> list[AssumptionStructure]:
    """Every consistent assumption set a on HB_a with the j on HB deduced from ct(a) ∧ e.

    Horn theories deduce j as the projection of the least Herbrand model of
    ct(a) ∧ e. Otherwise every model of ct(a) ∧ e must project to the same j.

    Raises:
        IncompleteDeduction: Two models of some ct(a) ∧ e disagree on HB
    """
    if x.assumption_base is None:
        raise InvalidRequest("extended example has no assumption base")
    hb_a = x.assumption_base
    check_base_size(len(hb_a))
    horn = is_horn(x.theory)
    structures = []
    for mask in range(1 << len(hb_a)):
        a = Interpretation.from_mask(hb_a, mask)
        theory = x.theory.conjoin(ct(a))
        if horn:
            try:
                least = least_herbrand_model(theory, x.extended_base)
            except Inconsistent:
                continue
            structures.append(AssumptionStructure(a, projection(least, x.learning_base)))
            continue
        found = enumerate_models(theory, x.extended_base)
        if not found:
            continue
        deduced = {projection(m, x.learning_base) for m in found}
        if len(deduced) > 1:
            raise IncompleteDeduction(
                f"assumptions {a} leave some atom of the learning base undetermined",
                assumption=str(a),
            )
        structures.append(AssumptionStructure(a, deduced.pop()))
    logger.debug("%d consistent assumption sets out of %d", len(structures), 1 << len(hb_a))
    return structures


def maximal_assumption_sets(x: ExtendedExample) -> list[AssumptionStructure]:
    """Structures whose assumption set is inclusion-maximal among consistent ones."""
    structures = assumption_structures(x)
    return [
        s for s in structures
        if not any(s.assumption.true_atoms < other.assumption.true_atoms for other in structures)
    ]


def compat_a_subbase(h: Formula, x: ExtendedExample, sign: Sign) -> bool:
    """Assumption-based compatibility with assumptions restricted to HB_a.

    Each consistent assumption set a yields one j on HB. For Horn theories j is
    the projection of the least Herbrand model of ct(a) ∧ e, so atoms the rules
    cannot derive from a are false in j rather than unknown.
    """
    structures = assumption_structures(x)
    if not structures:
        raise _degenerate()
    if sign is Sign.POSITIVE:
        return any(evaluate(h, s.deduced) for s in structures)
    return any(not evaluate(h, s.deduced) for s in structures)


# Dispatch

def check_hypothesis_constants(h: Formula, allow: Optional[bool] = None) -> None:
    """Constants in hypotheses are refused unless explicitly allowed."""
    if allow is None:
        allow = get_settings().allow_hypothesis_constants
    constants = formula_constants(h)
    if constants and not allow:
        raise HypothesisConstantError(
            f"hypothesis uses constants {sorted(constants)}",
            constants=sorted(constants),
        )


def compatible(
    h: Formula,
    payload: Payload,
    setting: Setting,
    sign: Sign,
    route: Route = Route.EXACT,
    allow_constants: Optional[bool] = None,
) -> bool:
    """Compatibility of h with one example of the given setting and label.

    Args:
        h: Hypothesis
        payload: Example payload matching the setting
        setting: Learning setting
        sign: Label of the example
        route: Evaluation route for assumption-based examples
        allow_constants: Override of the hypothesis-constant flag

    Returns:
        True if h is compatible with the example
    """
    check_hypothesis_constants(h, allow_constants)
    if setting is Setting.INTERPRETATIONS:
        i = _expect(payload, Interpretation, setting)
        check_symbols(h, i.base)
        holds = covers(h, i)
        return holds if sign is Sign.POSITIVE else not holds
    if setting is Setting.POSSIBILITIES:
        return compat_p(h, _expect(payload, Possibilities, setting), sign)
    if setting is Setting.ASSUMPTION_BASED:
        x = _expect(payload, ExtendedExample, setting)
        check_symbols(h, x.learning_base)
        if route is Route.FAST:
            return compat_a_fast(h, x, sign)
        if route is Route.SUBBASE:
            return compat_a_subbase(h, x, sign)
        return compat_a(h, x, sign)
    e = _expect(payload, TheoryExample, setting)
    relation = {
        Setting.GENERALIZED: compat_g,
        Setting.UNCERTAIN: compat_u,
        Setting.SATISFIABILITY: compat_s,
    }[setting]
    return relation(h, e.theory, e.base, sign)


def _expect(payload, kind: type, setting: Setting):
    if not isinstance(payload, kind):
        raise InvalidRequest(
            f"setting {setting.value} expects a {kind.__name__} payload, got {type(payload).__name__}"
        )
    return payload
