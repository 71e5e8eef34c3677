"""Exception hierarchy shared by every module of the package."""


class WeaklinError(Exception):
    """Base class for all errors raised by weaklin."""


class LatticeMismatchError(WeaklinError, ValueError):
    """Operands belong to different truth-value structures, or lie outside the carrier."""


class ShapeMismatchError(WeaklinError, ValueError):
    """Relation dimensions or index labels do not fit the requested operation."""


class NotAnEquivalenceError(WeaklinError, ValueError):
    pass


class NotAnLFunctionError(WeaklinError, ValueError):
    pass


class NotUniformError(WeaklinError, ValueError):
    pass


class NotASolutionError(WeaklinError, ValueError):
    pass


class NotCrispError(WeaklinError, ValueError):
    pass


class PreconditionError(WeaklinError, ValueError):
    """A documented precondition (for example ``E <= F``) does not hold."""


class SpaceTooLargeError(WeaklinError, ValueError):
    """A brute-force enumeration would exceed its configured size limit."""


class InconsistencyError(WeaklinError, RuntimeError):
    """Two routes that must agree produced different answers.

    Raised only when an internal cross-check fails, which indicates a bug
    rather than bad input.
    """
