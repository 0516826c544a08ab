"""Exception types shared across the package."""


class PrecisionExhausted(ArithmeticError):
    """The truncation bound was reached before a quantity could be decided.

    Callers are expected to retry with a larger working precision.
    """


class NoRoot(ArithmeticError):
    """The finite coefficient field lacks a root the computation needs."""


class InfiniteIntersection(ArithmeticError):
    """Two arcs did not separate within the available precision.

    ``lower_bound`` is the intersection number accumulated before giving up.
    """

    def __init__(self, message, lower_bound=0):
        super().__init__(message)
        self.lower_bound = lower_bound


class ArcInBranchLocus(ValueError):
    """The arc lies inside a component of the branch divisor."""
