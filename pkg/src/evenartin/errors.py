"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument is outside the range an operation accepts."""


class WordParseError(ValueError):
    """A word string could not be tokenized.

    ``token`` and ``position`` locate the offending piece of input.
    """

    def __init__(self, message: str, token: str = "", position: int = -1):
        super().__init__(message)
        self.token = token
        self.position = position


class PreconditionError(ValueError):
    """An operation was called on an element it is not defined for."""


class InvariantError(RuntimeError):
    """An internal consistency check failed. This indicates a bug."""


class BudgetError(RuntimeError):
    """A brute-force search would exceed its node cap."""
