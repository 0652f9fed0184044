"""Exception types shared across the package."""


class InvariantViolation(RuntimeError):
    """An internal self-check failed; results would be untrustworthy.

    Raised when redundant bookkeeping disagrees (e.g. a histogram whose
    counts do not sum to the population minus the window overhang).  This
    is distinct from ValueError, which flags bad *input*.
    """
