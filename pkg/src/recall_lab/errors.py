"""Exception types raised across the package."""


class RecallLabError(Exception):
    """Base class for all package errors."""


class DomainError(RecallLabError, ValueError):
    """A numeric argument lies outside the function's domain (e.g. NaN)."""


class ConfigError(RecallLabError, ValueError):
    """Invalid configuration value (non-positive threshold, bad count, ...)."""


class InfeasibleError(RecallLabError, ValueError):
    """The request cannot be satisfied, e.g. more distinct vectors than exist."""


class CapacityError(InfeasibleError):
    """More memories than there are unique active sites (or site sets)."""


class InvariantError(RecallLabError, ValueError):
    """An input violates a structural invariant (asymmetric T, bad permutation)."""


class UsageError(RecallLabError, ValueError):
    """Arguments that are individually valid but don't fit together."""
