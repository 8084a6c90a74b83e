"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class SpaceFormError(Exception):
    """Base class; the CLI prints ``type(err).__name__`` for domain errors."""


class TableError(SpaceFormError):
    """A Cayley table failed validation."""


class NotLatinSquare(TableError):
    pass


class NotAssociative(TableError):
    def __init__(self, triple: tuple[int, int, int]):
        self.triple = triple
        x, y, z = triple
        super().__init__(f"({x}*{y})*{z} != {x}*({y}*{z})")


class WrongIdentity(TableError):
    pass


class TableParseError(TableError):
    def __init__(self, message: str, line: int, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")


class NotNormal(SpaceFormError):
    pass


class NotAnAutomorphism(SpaceFormError):
    pass


class NotAnAction(SpaceFormError):
    pass


class PreconditionViolated(SpaceFormError):
    pass


class TooLarge(SpaceFormError):
    pass


class BadParameter(SpaceFormError):
    pass


class InvalidTuple(SpaceFormError):
    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class TupleParseError(SpaceFormError):
    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class InternalConsistency(SpaceFormError):
    """A witness relation failed after construction; always a bug."""


class NotFound(SpaceFormError):
    pass


class NonCyclicSylow(SpaceFormError):
    pass


class ClosureFailed(SpaceFormError):
    pass


class UnexpectedShape(SpaceFormError):
    pass


class BadTransversal(SpaceFormError):
    pass


class InconsistentPresentation(SpaceFormError):
    def __init__(self, message: str, triple: tuple[int, int, int] | None = None):
        self.triple = triple
        super().__init__(message)
