"""Exception hierarchy shared by the library and the command line.

Every error is a :class:`ValueError` so that callers which only know about the
standard library still catch them.
"""


class PglError(ValueError):
    """Base class for all errors raised by :mod:`pgl`."""


class InvalidInput(PglError):
    """Raised when an argument violates the documented preconditions."""


class BudgetExceeded(PglError):
    """Raised when an operation refuses to run because a cap would be violated.

    :ivar cap: Name of the violated cap.
    :type cap: str
    :ivar limit: The configured limit.
    :type limit: int
    :ivar requested: The size the operation would have needed.
    :type requested: int
    """

    def __init__(self, cap: str, limit: int, requested: int):
        self.cap = cap
        self.limit = limit
        self.requested = requested
        super().__init__(f"{cap} exceeded: requested {requested}, limit {limit}")


class HypothesisViolation(PglError):
    """Raised when a structural hypothesis of a check does not hold.

    :ivar reason: Short machine readable reason, e.g. ``"minimal-normal-not-unique"``.
    :type reason: str
    """

    def __init__(self, reason: str, message: str):
        self.reason = reason
        super().__init__(f"{reason}: {message}")


class IncompatibleCocycle(PglError):
    """Raised when a 2-cochain fails the cocycle identity."""


class CheckFailed(PglError):
    """Raised when a verified inequality or identity does not hold."""
