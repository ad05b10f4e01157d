"""Exception types raised across the package."""

from __future__ import annotations


class CayleyDihError(Exception):
    """Base class for every error raised by this package."""


class MismatchedSpec(CayleyDihError, ValueError):
    pass


class NotAGroup(CayleyDihError, ValueError):
    pass


class DegreeMismatch(CayleyDihError, ValueError):
    pass


class CapExceeded(CayleyDihError, RuntimeError):
    def __init__(self, cap: int, what: str = "group"):
        super().__init__(f"{what} exceeds cap of {cap}")
        self.cap = cap


class TooLarge(CayleyDihError, ValueError):
    def __init__(self, n: int, limit: int = 64):
        super().__init__(f"graph has {n} vertices; the limit is {limit}")
        self.n = n


class IdentityInSet(CayleyDihError, ValueError):
    pass


class NotInverseClosed(CayleyDihError, ValueError):
    def __init__(self, offending):
        self.offending = list(offending)
        listed = ", ".join(str(e) for e in self.offending)
        super().__init__(f"connection set is not closed under inversion: {listed}")


class OddOrderFactor(CayleyDihError, ValueError):
    pass


class OddOrder(CayleyDihError, ValueError):
    pass


class WitnessInvalid(CayleyDihError, ValueError):
    pass


class InternalVerificationFailed(CayleyDihError, AssertionError):
    """A construction produced a result that fails its own verification."""


class UsageError(CayleyDihError, ValueError):
    """Malformed command-line input; carries a 1-based line/column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column
