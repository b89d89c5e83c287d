from typing import Any, Optional


class EngineError(Exception):
    """Base class for every domain failure raised by the engine."""

    exit_code: int = 1

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class SpecParseError(EngineError):
    """A spec file could not be read into an ActionSpec."""

    exit_code = 2

    def __init__(
        self,
        detail: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        location: Optional[str] = None,
    ):
        self.line = line
        self.column = column
        self.location = location
        where = ""
        if line is not None:
            where = f"line {line}, column {column}: "
        if location:
            where += f"{location}: "
        super().__init__(f"{where}{detail}")


class SpecValidationError(EngineError):
    exit_code = 3

    def __init__(self, detail: str, report: Any = None):
        super().__init__(detail)
        self.report = report


class VerificationMismatchError(EngineError):
    exit_code = 4

    def __init__(self, detail: str, report: Any = None):
        super().__init__(detail)
        self.report = report


class FieldMismatchError(EngineError):
    """Scalars from different coefficient fields were combined."""


class ShapeMismatchError(EngineError):
    """Matrix or polynomial dimensions do not agree."""


class GroupCapExceededError(EngineError):
    """Group enumeration ran past the configured cap."""


class IndexTwoError(EngineError):
    """A Weyl pair is not a normal index-two inclusion."""


class EulerClassError(EngineError):
    """The restriction kernel is not principal up to the truncation."""


class TrichotomyError(EngineError):
    """Eigenspace data matches none, or more than one, of the three cases."""


class WrongCaseError(EngineError):
    """A closed-form presentation was requested for a spec of another case."""


class UnsupportedShapeError(EngineError):
    pass
