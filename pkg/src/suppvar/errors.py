"""Exception types raised across the package."""


class Error(Exception):
    """Base class for all package errors."""


class NotPrimeError(Error):
    pass


class NotIrreducibleError(Error):
    pass


class DegreeMismatchError(Error):
    pass


class FieldMismatchError(Error):
    pass


class ShapeMismatchError(Error):
    pass


class NotSquareError(Error):
    pass


class NotNilpotentError(Error):
    """Raised when an operator fails m**p == 0; carries the offending index
    when it arises from a tuple entry."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class NonCommutingError(Error):
    """Carries the pair of tuple indices that fail to commute."""

    def __init__(self, i, j):
        super().__init__(f"entries {i} and {j} do not commute")
        self.pair = (i, j)


class BadExponentError(Error):
    pass


class BadHeightError(Error):
    pass


class SingularError(Error):
    pass


class DimensionMismatchError(Error):
    pass


class CapOverflowError(Error):
    pass


class ExponentOutOfCapError(Error):
    pass


class NotInvariantError(Error):
    """Carries the polynomial exponent whose coefficient matrix leaves the
    candidate subspace."""

    def __init__(self, exponent):
        super().__init__(f"subspace is not invariant under coefficient {exponent}")
        self.exponent = exponent


class NotGroupLikeError(Error):
    """A matrix claimed to represent a group element fails P(0) = I or the
    homomorphism identity."""


class ParseError(Error):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ArityError(ParseError):
    pass


class UnknownNodeError(ParseError):
    pass


class BudgetExceededError(Error):
    pass


class NoMaximumError(Error):
    """No dominance-maximal Jordan type exists among the enumerated points."""


class UnknownSuiteError(Error):
    pass


class NilpotenceCheckError(Error):
    """Internal consistency failure: an operator that theory guarantees to be
    p-nilpotent is not.  Signals an implementation bug, never bad input."""
