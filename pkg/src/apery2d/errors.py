"""Exception hierarchy shared by all modules."""


class AperyError(Exception):
    """Base class for errors raised by this package."""


class NonHomogeneousError(AperyError, ValueError):
    def __init__(self, monomial, degree):
        a, b = monomial
        super().__init__(f"monomial i^{a} j^{b} does not have total degree {degree}")
        self.monomial = monomial
        self.degree = degree


class PairFormatError(AperyError, ValueError):
    """A pair-definition file could not be parsed."""


class InconsistentBoundaryError(AperyError):
    """A row violates the row recurrence, so the next row is not well defined."""

    def __init__(self, message, i=None, j=None):
        super().__init__(message)
        self.i = i
        self.j = j


class NonInvertibleStepError(AperyError, ZeroDivisionError):
    pass


class UnsupportedPairError(AperyError):
    pass


class InvariantViolation(AperyError):
    """An identity that must hold exactly did not. Always a bug or bad input."""


class SearchSpaceTooLarge(AperyError):
    def __init__(self, size, cap):
        super().__init__(f"search space has {size} candidates, above the cap of {cap}")
        self.size = size
        self.cap = cap


class InsufficientPrecisionError(AperyError):
    def __init__(self, message, needed_digits):
        super().__init__(f"{message} (need about {needed_digits} digits)")
        self.needed_digits = needed_digits


class DegenerateCFError(AperyError, ZeroDivisionError):
    def __init__(self, depth):
        super().__init__(f"continued fraction denominator vanishes at depth {depth}")
        self.depth = depth


class DomainError(AperyError, ValueError):
    pass


class TableSizeError(AperyError):
    pass
