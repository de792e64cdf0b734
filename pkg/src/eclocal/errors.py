"""Exception types shared across the package."""


class EclocalError(Exception):
    """Base class for all package errors."""


class NotPrime(EclocalError):
    pass


class ReducibleModulus(EclocalError):
    pass


class NoDefaultModulus(EclocalError):
    pass


class DivisionByZero(EclocalError):
    pass


class ContextMismatch(EclocalError):
    pass


class NotAUnit(EclocalError):
    pass


class NotInMaximalIdeal(EclocalError):
    pass


class ExceptionalPair(EclocalError):
    """The y-unit addition law produced a non-unit y coordinate."""


class InternalInvariantViolation(EclocalError):
    """A condition that is provably impossible occurred; indicates a bug."""


class InsufficientSamples(EclocalError):
    pass


class InconsistentSamples(EclocalError):
    pass


class ValidationFailed(EclocalError):
    """A self-check of generated symbolic data failed."""


class DenominatorNotClearing(EclocalError):
    """A rational denominator survived integer specialization."""


class TooLarge(EclocalError):
    """Input exceeds the configured enumeration bound."""


class TableTooLarge(EclocalError):
    """Requested multiplication-polynomial data exceeds the symbolic budget."""


class UnsupportedExceptional(EclocalError):
    """Exceptional curve outside the classified cases (C1-C3 fail)."""

    def __init__(self, message, d=None, failing=None):
        super().__init__(message)
        self.d = d
        self.failing = failing


class NoSolution(EclocalError):
    """The discrete log instance has no solution in the generated subgroup."""

    def __init__(self, message, digit_index=None):
        super().__init__(message)
        self.digit_index = digit_index


class DegreeMismatch(NoSolution):
    """Residual point has a smaller minimal degree than the base multiple."""


class CurveFileError(EclocalError):
    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line
