"""Exception types raised by snapout."""


class SnapoutError(ValueError):
    """Base class for all library errors."""


class GridMismatch(SnapoutError):
    pass


class DegenerateMembrane(SnapoutError):
    pass


class OppositeValuesViolated(SnapoutError):
    pass


class JumpAtZero(SnapoutError):
    pass


class NonPositiveLambda(SnapoutError):
    pass


class NonPositiveGamma(SnapoutError):
    pass


class NonPositiveTime(SnapoutError):
    pass


class GridTooCoarse(SnapoutError):
    pass


class ResolutionGuard(SnapoutError):
    """Raised when n*(alpha+beta)*h exceeds 1 for a ladder rung."""
