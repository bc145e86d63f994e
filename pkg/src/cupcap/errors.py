"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class CupCapError(Exception):
    """Base class for every error raised by this package."""


# -- point set validation -----------------------------------------------------


class ValidationError(CupCapError, ValueError):
    """The input is not a finite, non-vertical set in general position."""

    def __init__(self, message: str, indices: tuple[int, ...]):
        super().__init__(message)
        self.indices = indices


class DuplicatePoint(ValidationError):
    pass


class VerticalPair(ValidationError):
    pass


class CollinearTriple(ValidationError):
    pass


class CollinearThroughS(CupCapError, ValueError):
    """Two query points and the pivot are collinear, so their angles tie."""


class ParseError(CupCapError, ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


# -- chains -------------------------------------------------------------------


class ChainError(CupCapError, ValueError):
    pass


class TooShort(ChainError):
    pass


class NotXSorted(ChainError):
    pass


class NotMonotone(ChainError):
    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class NotConvex(CupCapError, ValueError):
    pass


class TooLarge(CupCapError, ValueError):
    pass


class TooSmall(CupCapError, ValueError):
    pass


# -- constructive procedures --------------------------------------------------


class PreconditionViolated(CupCapError, ValueError):
    pass


class NoSharedPoint(PreconditionViolated):
    pass


class BoundNotMet(CupCapError, ValueError):
    """The input is too small for the guarantee being invoked."""


class NotFound(BoundNotMet):
    """The bound was not met and the exhaustive fallback found nothing."""


class NotFree(CupCapError, ValueError):
    """A set assumed (m, l)-free contains an m-cup or an l-cap."""


class ContractViolation(CupCapError, ValueError):
    pass


class ResolutionFailure(CupCapError, RuntimeError):
    """No case of a resolution analysis applied. Always a bug."""


class InternalFailure(CupCapError, RuntimeError):
    """A step of a constructive proof failed to apply. Always a bug."""

    def __init__(self, message: str, state: dict | None = None):
        super().__init__(message)
        self.state = state or {}


class DegenerateSetup(CupCapError, ValueError):
    pass


class Exhausted(CupCapError, RuntimeError):
    """Rejection sampling could not place enough points."""


class UnknownOverlay(CupCapError, ValueError):
    pass
