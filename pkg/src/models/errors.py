"""Exceptions raised by the engine, each tied to an ErrorCode."""

from typing import Any, Optional

from src.models.schemas import ErrorCode, ErrorResponse


class PossibError(Exception):
    """Base class for engine errors."""

    code: ErrorCode = ErrorCode.INTERNAL_ERROR

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_response(self) -> ErrorResponse:
        """Convert to the serializable error body."""
        return ErrorResponse(
            error=self.message,
            code=self.code,
            details=self.details or None,
        )


class InvalidRequest(PossibError):
    code = ErrorCode.INVALID_REQUEST


class ParseError(PossibError):
    """Input text does not follow the formula grammar."""

    code = ErrorCode.PARSE_ERROR

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        location = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{location}", line=line, column=column)
        self.line = line
        self.column = column


class SignatureMismatch(PossibError):
    code = ErrorCode.SIGNATURE_MISMATCH


class VariableInGroundContext(PossibError):
    code = ErrorCode.VARIABLE_IN_GROUND_CONTEXT


class HypothesisConstantError(PossibError):
    code = ErrorCode.HYPOTHESIS_CONSTANT


class BaseTooLarge(PossibError):
    code = ErrorCode.BASE_TOO_LARGE


class SpaceTooLarge(PossibError):
    code = ErrorCode.SPACE_TOO_LARGE


class SubbaseMismatch(PossibError):
    code = ErrorCode.SUBBASE_MISMATCH


class NotHorn(PossibError):
    code = ErrorCode.NOT_HORN


class Inconsistent(PossibError):
    code = ErrorCode.INCONSISTENT


class Unsatisfiable(PossibError):
    code = ErrorCode.UNSATISFIABLE


class DegenerateExample(PossibError):
    """Example with no model (or no partial model) at all."""

    code = ErrorCode.DEGENERATE_EXAMPLE


class NotDnfPlus(PossibError):
    code = ErrorCode.NOT_DNF_PLUS


class EmptyPossibilities(PossibError):
    code = ErrorCode.EMPTY_POSSIBILITIES


class IncompleteDeduction(PossibError):
    code = ErrorCode.INCOMPLETE_DEDUCTION


class MissingWeights(PossibError):
    code = ErrorCode.MISSING_WEIGHTS


class NotSingleModel(PossibError):
    code = ErrorCode.NOT_SINGLE_MODEL


class MalformedRelations(PossibError):
    code = ErrorCode.MALFORMED_RELATIONS
