"""Exception types shared across the package."""


class GreedycsError(Exception):
    """Base class for all package-specific errors."""


class SingularProjection(GreedycsError):
    """Least-squares projection attempted on a (numerically) rank-deficient
    column set.

    Carries the pursuit iteration that triggered it when raised from inside
    an algorithm loop (``iteration`` is None for direct solver calls).
    """

    def __init__(self, message, iteration=None):
        super().__init__(message)
        self.iteration = iteration


class UnstableWidth(GreedycsError):
    """Selection plan would pick more atoms than there are measurements,
    making the final projection underdetermined."""


class BudgetExceeded(GreedycsError):
    """Exhaustive subset enumeration would exceed the configured budget."""


class BoundUndefined(GreedycsError):
    """An error-bound constant is undefined because a precondition on the
    restricted isometry numbers fails; the message names the precondition."""


class OrderOutOfRange(GreedycsError):
    """A delta lookup was requested for an order the table does not cover."""


class Diverged(GreedycsError):
    """Iterative hard thresholding left the basin it should contract in
    (residual grew past 10x the measurement norm)."""
