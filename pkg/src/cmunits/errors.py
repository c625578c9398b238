"""Exception types shared across the package."""
from __future__ import annotations


class NotSplitError(ValueError):
    """The prime is inert in the field (a split prime was required)."""


class RamifiedPrimeError(NotSplitError):
    """The prime divides the discriminant."""


class SplitSearchError(RuntimeError):
    """No element of the requested norm was found inside the search box."""


class RepresentativeSearchError(RuntimeError):
    """No O_K element with the requested norm residue was found."""


class IntegralityError(ArithmeticError):
    """A quantity that must be integral (or p-integral) was not."""

    def __init__(self, message: str, key=None, value=None):
        super().__init__(message)
        self.key = key
        self.value = value


class PrecisionError(ArithmeticError):
    """Numeric evaluation could not meet its tolerance.

    Carries the requested precision (bits) and the achieved error bound so a
    caller can retry at a higher precision.
    """

    def __init__(self, message: str, requested_bits: int, achieved_bound=None):
        super().__init__(message)
        self.requested_bits = requested_bits
        self.achieved_bound = achieved_bound


class PathDisagreementError(PrecisionError):
    """Two independent evaluation paths of the same quantity disagree."""


class LatticePointError(ValueError):
    """The argument lies on (or numerically too close to) the lattice."""

    def __init__(self, message: str, requested_bits: int = 0, distance=None):
        super().__init__(message)
        self.requested_bits = requested_bits
        self.distance = distance
