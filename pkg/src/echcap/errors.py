"""Exception types shared across the package."""


class EchcapError(Exception):
    """Base class for errors raised by this package."""


class MismatchedIndexOrigin(EchcapError):
    """Raised when sequences with incompatible index origins are combined."""


class ApproxTie(EchcapError):
    """An approximate comparison could not be resolved within error bounds.

    The caller must recompute with tighter error bounds (or exact inputs)
    before the comparison can be decided.
    """


class ToricEnumerationBudgetExceeded(EchcapError):
    """The polygon search exceeded its configured node limit."""


class NotPrimitive(EchcapError):
    """Raised for Reeb orbit queries on non-primitive (m, n)."""


class SpecParseError(EchcapError):
    """A textual domain spec failed to parse.

    Carries the character position of the failure for CLI error messages.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
        self.bare_message = message
