"""Exception types shared across the package."""


class ScanBoundError(RuntimeError):
    """A residue scan ran past its mathematical termination bound.

    The rank of apparition of m is at most 6m, so hitting this means an
    arithmetic bug, never a legitimate outcome.
    """


class BudgetExceededError(RuntimeError):
    """An oracle scan would need (or needed) more steps than the caller allowed.

    Carries the offending step estimate so sweeps can skip gracefully.
    """

    def __init__(self, message: str, *, estimate: int | None = None,
                 budget: int | None = None) -> None:
        super().__init__(message)
        self.estimate = estimate
        self.budget = budget
