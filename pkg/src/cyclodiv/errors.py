"""Exception types raised across the package."""


class CycloError(Exception):
    """Base class for every error raised by cyclodiv."""


class NotDivisible(CycloError):
    """Polynomial division left a nonzero remainder."""


class OrderMismatch(CycloError):
    """Truncated series of different orders were combined."""


class NotInvertible(CycloError):
    """Series with zero constant term has no inverse."""


class CapExceeded(CycloError):
    """Requested object is larger than the materialization cap."""


class BudgetExceeded(CycloError):
    """Subset search would exceed the configured budget."""


class VerificationFailed(CycloError):
    """A constructed witness failed one of its machine checks."""
