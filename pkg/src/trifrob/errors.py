"""Exception types raised across the package."""


class FrobeniusError(Exception):
    """Base class for all package errors."""


class NotCoprimeError(FrobeniusError, ValueError):
    """Raised when a tuple (or pair) does not have gcd 1."""


class CapExceededError(FrobeniusError, ValueError):
    """A counting argument exceeds the oracle cap; use a closed form instead."""


class CapExhaustedError(FrobeniusError, RuntimeError):
    """The oracle search reached its cap without finding a termination window."""


class DomainError(FrobeniusError, ValueError):
    """A closed form was asked for outside the range where it is proven."""


class ConditionNotMetError(DomainError):
    """The ratio conditions of the generalized three-term formula do not hold."""


class UndefinedBoundError(DomainError):
    """A ratio bound would need 1/K with K = 0."""
