"""Error hierarchy with stable error codes."""

from typing import Optional


class MscalcError(Exception):
    """Base class for every error raised by the calculator."""

    code = "E_GENERIC"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def __str__(self) -> str:
        return self.message


class InvalidValue(MscalcError, ValueError):
    """A value violates the invariants of its type."""

    code = "E_INVALID_VALUE"


class NotRigid(MscalcError):
    code = "E_NOT_RIGID"


class NotALadder(MscalcError):
    code = "E_NOT_LADDER"


class NotProperLadder(MscalcError):
    code = "E_NOT_PROPER_LADDER"


class DifferentLines(MscalcError):
    code = "E_DIFFERENT_LINES"


class BadComposition(MscalcError):
    code = "E_BAD_COMPOSITION"


class ReducibleProduct(MscalcError):
    """Factors share a cuspidal line and irreducibility was not asserted."""

    code = "E_REDUCIBLE_PRODUCT"


class NotTadicForm(MscalcError):
    code = "E_NOT_TADIC"


class ContextError(MscalcError):
    """Malformed extension context declaration."""

    code = "E_CONTEXT"


class UnregisteredAtom(MscalcError):
    code = "E_UNREGISTERED_ATOM"


class NotFactorwise(MscalcError):
    """Two factors on different lines would land on a common line."""

    code = "E_NOT_FACTORWISE"


class WrongLineKind(MscalcError):
    code = "E_WRONG_LINE_KIND"


class NoKlyachkoModel(MscalcError):
    code = "E_NO_KLYACHKO_MODEL"


class IndivisibleType(MscalcError):
    code = "E_INDIVISIBLE_TYPE"


class NotNilpotent(MscalcError):
    code = "E_NOT_NILPOTENT"


class ZeroScalar(MscalcError):
    code = "E_ZERO_SCALAR"


class ParseError(MscalcError):
    """Syntax error in an expression, with a 1-based position."""

    code = "E_PARSE"

    def __init__(self, message: str, line: int = 1, column: int = 1, source: Optional[str] = None):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column
        self.source = source
