"""Pydantic models for input files and error responses."""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ErrorCode(str, Enum):
    """Machine-readable error codes."""
    INVALID_REQUEST = "INVALID_REQUEST"
    PARSE_ERROR = "PARSE_ERROR"
    SIGNATURE_MISMATCH = "SIGNATURE_MISMATCH"
    VARIABLE_IN_GROUND_CONTEXT = "VARIABLE_IN_GROUND_CONTEXT"
    HYPOTHESIS_CONSTANT = "HYPOTHESIS_CONSTANT"
    BASE_TOO_LARGE = "BASE_TOO_LARGE"
    SPACE_TOO_LARGE = "SPACE_TOO_LARGE"
    SUBBASE_MISMATCH = "SUBBASE_MISMATCH"
    NOT_HORN = "NOT_HORN"
    INCONSISTENT = "INCONSISTENT"
    UNSATISFIABLE = "UNSATISFIABLE"
    DEGENERATE_EXAMPLE = "DEGENERATE_EXAMPLE"
    NOT_DNF_PLUS = "NOT_DNF_PLUS"
    EMPTY_POSSIBILITIES = "EMPTY_POSSIBILITIES"
    INCOMPLETE_DEDUCTION = "INCOMPLETE_DEDUCTION"
    MISSING_WEIGHTS = "MISSING_WEIGHTS"
    NOT_SINGLE_MODEL = "NOT_SINGLE_MODEL"
    MALFORMED_RELATIONS = "MALFORMED_RELATIONS"
    INTERNAL_ERROR = "INTERNAL_ERROR"


class Setting(str, Enum):
    """Learning setting, one per compatibility relation pair."""
    INTERPRETATIONS = "interpretations"
    GENERALIZED = "generalized"
    UNCERTAIN = "uncertain"
    POSSIBILITIES = "possibilities"
    SATISFIABILITY = "satisfiability"
    ASSUMPTION_BASED = "assumption_based"


class Sign(str, Enum):
    """Example label, and the side of a compatibility relation."""
    POSITIVE = "positive"
    NEGATIVE = "negative"

    @property
    def flipped(self) -> "Sign":
        return Sign.NEGATIVE if self is Sign.POSITIVE else Sign.POSITIVE


class ClassOutcome(str, Enum):
    """Four-way classification outcome."""
    POSITIVE = "positive"
    NEGATIVE = "negative"
    UNCERTAIN = "uncertain"
    CONTRADICTORY = "contradictory"


class SpaceKind(str, Enum):
    """Formula class of an enumerated hypothesis space."""
    DNF_PLUS = "dnf_plus"
    DNF = "dnf"
    CNF = "cnf"


class Route(str, Enum):
    """Evaluation route for assumption-based examples."""
    EXACT = "exact"
    FAST = "fast"
    SUBBASE = "subbase"


# Hypothesis language

class HypothesisSpace(BaseModel):
    """Bounds of a finite, canonically enumerated hypothesis space."""
    model_config = ConfigDict(frozen=True)

    kind: SpaceKind = Field(default=SpaceKind.DNF_PLUS, description="Formula class")
    max_items: int = Field(
        default=2,
        ge=0,
        description="Maximum number of cubes (DNF) or clauses (CNF)"
    )
    max_literals: int = Field(default=2, ge=0, description="Maximum literals per cube or clause")
    max_variables: int = Field(default=1, ge=0, description="Maximum distinct variables per cube or clause")
    negated: bool = Field(
        default=False,
        description="Enumerate the negation of every formula of the space"
    )


class LearnerConfig(BaseModel):
    """Bounds and switches of the greedy set-covering learner."""
    model_config = ConfigDict(frozen=True)

    max_cubes: int = Field(default=3, ge=1, description="Maximum cubes in the learned disjunction")
    max_literals_per_cube: int = Field(default=2, ge=1)
    max_variables: int = Field(default=2, ge=1)
    horn_shortcut: bool = Field(
        default=True,
        description="Check candidate cubes alone when every negative is Horn"
    )
    fast_route: bool = Field(
        default=True,
        description="Use the optimized DNF+ route for assumption-based examples"
    )


# Task files

class BaseSpec(BaseModel):
    """Herbrand base declaration of one example."""
    constants: list[str] = Field(default_factory=list, description="Herbrand universe HU")
    predicates: Optional[list[str]] = Field(
        default=None,
        description="Subset of the task signature (default: all of it)"
    )
    extra_predicates: dict[str, int] = Field(
        default_factory=dict,
        description="Predicates used only by this base, with their arities"
    )


class PossibilitySpec(BaseModel):
    """One possible description of an uncertain example."""
    theory: str = Field(..., description="Clausal theory in the theory grammar")
    base: Optional[BaseSpec] = Field(default=None, description="Base, defaults to the example's")
    weight: Optional[float] = Field(default=None, ge=0, le=1)


class ExamplePayload(BaseModel):
    """Setting-specific payload; which fields are required depends on the setting."""
    true_atoms: Optional[list[str]] = Field(default=None, description="i_p of a complete example")
    theory: Optional[str] = Field(default=None, description="Clausal theory of the example")
    possibilities: Optional[list[PossibilitySpec]] = None
    extended_base: Optional[BaseSpec] = Field(default=None, description="HB_e of an extended example")
    assumption_base: Optional[BaseSpec] = Field(default=None, description="HB_a of an extended example")


class ExampleSpec(BaseModel):
    """Labeled example of a task file."""
    name: Optional[str] = None
    label: Sign = Sign.POSITIVE
    base: BaseSpec = Field(default_factory=BaseSpec, description="Base HB the example is described on")
    payload: ExamplePayload


class TaskFile(BaseModel):
    """Learning task document."""
    setting: Setting
    signature: dict[str, int] = Field(..., description="Predicate name to arity")
    examples: list[ExampleSpec] = Field(default_factory=list)
    hypothesis_space: HypothesisSpace = Field(default_factory=HypothesisSpace)
    learner: LearnerConfig = Field(default_factory=LearnerConfig)

    @model_validator(mode="after")
    def check_arities(self) -> "TaskFile":
        for predicate, arity in self.signature.items():
            if arity < 0:
                raise ValueError(f"negative arity for predicate {predicate}")
        return self


class InstanceFile(BaseModel):
    """Single (possibly unlabeled) example with its signature."""
    signature: dict[str, int]
    base: BaseSpec = Field(default_factory=BaseSpec)
    payload: ExamplePayload
    label: Optional[Sign] = None
    name: Optional[str] = None


class RnaInputFile(BaseModel):
    """Palindrome annotations of one RNA sequence."""
    palindromes: list[str] = Field(..., description="Palindrome identifiers")
    relations: list[tuple[str, str, str]] = Field(
        default_factory=list,
        description="(relation, p1, p2) with relation in P, O, I"
    )
    incompatible: list[tuple[str, str]] = Field(default_factory=list)
    weights: Optional[dict[int, float]] = Field(
        default=None,
        description="Probability of each structure, keyed by its canonical index"
    )


# Responses

class ErrorResponse(BaseModel):
    """Error response body."""
    error: str = Field(..., description="Human-readable error message")
    code: ErrorCode = Field(..., description="Machine-readable error code")
    details: Optional[dict] = Field(
        default=None,
        description="Additional error details"
    )
