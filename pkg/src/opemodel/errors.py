"""Exception hierarchy shared across the package."""


class OperadError(Exception):
    """Base class for every error raised by this package."""


class MalformedTable(OperadError):
    pass


class NotComposable(OperadError):
    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class NotSymmetric(OperadError):
    pass


class InvalidFunctor(OperadError):
    pass


class NotTrivialCofibration(OperadError):
    pass


class NotOverStar(OperadError):
    pass


class NotApplicable(OperadError):
    pass


class SquareNotCommutative(OperadError):
    pass


class SearchBudgetExceeded(OperadError):
    pass


class NotCofibration(OperadError):
    pass


class ColorMismatch(OperadError):
    pass


class ProfileMismatch(OperadError):
    pass


class IncompatibleMaps(OperadError):
    pass


class Unstable(OperadError):
    pass


class ModelError(OperadError):
    """A candidate interpretation does not satisfy a presentation's relations."""


class ParseError(OperadError):
    """Malformed document text; carries the 1-based line and column."""

    def __init__(self, message, line=None, column=None):
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


class SemanticError(OperadError):
    """A well-formed document that does not describe a valid object."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
