"""Exception types raised by charvar."""


class CharvarError(Exception):
    """Base class for all library errors."""


class ValidationError(CharvarError, ValueError):
    """Input fails a type invariant (det, unitarity, shape...)."""


class NotPositiveDefinite(ValidationError):
    pass


class SpectrumMismatch(ValidationError):
    pass


class NotDiagonalizable(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class ShapeMismatch(ValidationError):
    pass


class TooFewFactors(ValidationError):
    pass


class NotRegular(ValidationError):
    pass


class IndexOutOfRange(ValidationError, IndexError):
    pass
