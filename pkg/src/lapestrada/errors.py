"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """A builder or operation received an argument outside its domain."""


class InvalidInputError(ValueError):
    """An input graph does not have the required structure (e.g. not a tree)."""


class PreconditionError(ValueError):
    """A mathematical precondition (such as bipartiteness) is violated."""


class NumericalFailure(ArithmeticError):
    """An iterative numerical routine failed to converge."""


class GraphFormatError(ValueError):
    """Malformed graph text. Carries the 1-based line and column of the fault."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
