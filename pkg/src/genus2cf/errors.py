"""Exception hierarchy for genus2cf."""


class Genus2CFError(Exception):
    pass


class InvalidScalarError(Genus2CFError, ValueError):
    pass


class FieldMismatchError(Genus2CFError, TypeError):
    pass


class ZeroPolynomialDivisionError(Genus2CFError, ZeroDivisionError):
    pass


class InvalidInputError(Genus2CFError, ValueError):
    pass


class UnsupportedRadicandError(InvalidInputError):
    pass


class PrecisionError(Genus2CFError):
    """Not enough series terms are known to decide the requested quantity."""


class CorruptedLineError(Genus2CFError):
    pass


class ExpansionTerminated(Genus2CFError):
    """The complete quotient is a polynomial; there is no next line."""


class DegeneracyError(Genus2CFError):
    """A zero leading coefficient left the degree-one normal form.

    Fall back to :mod:`genus2cf.generic` for such expansions.
    """

    def __init__(self, message, h=None):
        super().__init__(message)
        self.h = h


class InconsistencyError(Genus2CFError):
    pass


class InvalidWindowError(InvalidInputError):
    pass


class UnsupportedModeError(InvalidInputError):
    pass


class SingularSequenceError(Genus2CFError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class GenerationFailure(Genus2CFError):
    pass


class NoRationalBranchError(InvalidInputError):
    pass
