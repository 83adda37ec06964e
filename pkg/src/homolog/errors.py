"""Exception hierarchy shared by every layer of the package."""
from __future__ import annotations


class HomologError(Exception):
    """Base class for all errors raised by this package."""


class InputError(HomologError):
    """Malformed user input; the CLI maps these to exit status 2."""


class CapError(HomologError):
    """A search or size cap was hit; the CLI maps these to exit status 3."""


class BadField(InputError):
    pass


class InconsistentSystem(HomologError):
    pass


# algebra construction
class NotAdmissible(InputError):
    def __init__(self, max_length: int, message: str | None = None):
        self.max_length = max_length
        super().__init__(message or f"paths of length {max_length} still survive the relations")


class NonParallelRelation(InputError):
    pass


class RelationDegreeTooLow(InputError):
    pass


class NonHomogeneousRelation(InputError):
    pass


class UnknownVertex(InputError):
    pass


class AlgebraMismatch(HomologError):
    pass


class NotARepresentation(HomologError):
    pass


class NotAMorphism(HomologError):
    pass


class NotExact(HomologError):
    pass


class NotSplitSummand(HomologError):
    pass


class RationalFieldUnsupported(InputError):
    pass


class Undecided(CapError):
    def __init__(self, budget: int, message: str | None = None):
        self.budget = budget
        super().__init__(message or f"no certificate found within budget {budget}")


class CapExceeded(CapError):
    pass


class UnknownEntry(InputError):
    pass


# parser errors carry a source position
class ParseError(InputError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {message}")


class ParseSyntaxError(ParseError):
    pass


class UnknownArrow(ParseError):
    pass


class NonComposablePath(ParseError):
    pass


class BadMatrixShape(ParseError):
    pass


class DuplicateName(ParseError):
    pass


class FieldMismatch(ParseError):
    pass
