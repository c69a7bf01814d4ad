"""Exception hierarchy shared by every module."""


class SemiHilbertError(Exception):
    """Base class for all errors raised by semihilbert."""


class InvalidInput(SemiHilbertError, ValueError):
    """Malformed or non-finite input data."""


class DimensionMismatch(InvalidInput):
    pass


class NotHermitian(InvalidInput):
    pass


class NotPSD(InvalidInput):
    pass


class ZeroWeight(InvalidInput):
    pass


class NegativeEntry(InvalidInput):
    pass


class InvalidRank(InvalidInput):
    pass


class InvalidConfig(InvalidInput):
    pass


class NotInBA(SemiHilbertError):
    """Operator does not admit an A-adjoint (range of T*A escapes R(A))."""


class NotABounded(SemiHilbertError):
    """Operator is not A-bounded (it does not map N(A) into N(A))."""


class WeightMismatch(SemiHilbertError):
    pass


class NoConvergence(SemiHilbertError, ArithmeticError):
    pass


class Overflow(SemiHilbertError, ArithmeticError):
    pass


class DegenerateDraw(SemiHilbertError):
    pass


class SkippedHypothesis(SemiHilbertError):
    """Operands do not satisfy the hypotheses of a catalog case."""


class IoError(SemiHilbertError, OSError):
    """A report or operand file could not be read or written."""
