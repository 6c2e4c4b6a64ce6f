"""Exception types shared across the package."""


class SteinforgeError(Exception):
    """Base class for all steinforge errors."""


class SpaceMismatchError(SteinforgeError, ValueError):
    """Operands live in different spaces (dimension or block count differs)."""


class InvalidCoveringError(SteinforgeError, ValueError):
    """A covering violates its invariants."""


class GuardExceededError(SteinforgeError, ValueError):
    """An enumeration bound was exceeded; raise the guard explicitly to proceed."""


class NotComparableError(SteinforgeError, ValueError):
    """The two vertices are not related in the poset."""


class PreconditionError(SteinforgeError, ValueError):
    """An operation was called outside its stated precondition."""
