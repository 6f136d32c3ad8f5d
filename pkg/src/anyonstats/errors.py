"""Exception hierarchy shared by all modules."""


class AnyonError(Exception):
    """Base class for computational errors raised by this package."""


class DomainError(AnyonError, ValueError):
    """Argument outside the domain where the quantity is defined."""


class SizeError(AnyonError, ValueError):
    """Requested size or truncation order is not supported by the inputs."""


class BracketError(AnyonError, RuntimeError):
    """No sign change could be bracketed."""


class ConvergenceError(AnyonError, RuntimeError):
    """An iteration stopped before reaching its tolerance."""


class MonotonicityError(ConvergenceError):
    """A quantity assumed monotone was observed not to be."""


class CapacityError(AnyonError, ValueError):
    """Particle number at or above the saturation bound of the levels."""


class PoleError(AnyonError, ZeroDivisionError):
    """A continued-fraction convergent hit a zero denominator."""

    def __init__(self, m, g):
        super().__init__(f"convergent {m} has a zero denominator at g={g!r}")
        self.m = m
        self.g = g
