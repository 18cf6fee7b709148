"""Exception types shared across the package."""


class QhjError(Exception):
    """Base class for all package-specific errors."""


class RootFindingError(QhjError):
    """Polynomial root finder failed to converge.

    Carries whatever roots were found so far in ``partial_roots``.
    """

    def __init__(self, message, partial_roots=()):
        super().__init__(message)
        self.partial_roots = tuple(partial_roots)


class OrderOverflowError(QhjError):
    """A Laurent expansion was requested starting above the actual pole order."""


class PoleOrderError(QhjError):
    """A fixed pole has an order the residue machinery does not support."""


class NoNormalizableBranch(QhjError):
    """Neither sign of the leading behavior at infinity gives a decaying state."""


class OutOfSpectrum(QhjError):
    """Requested level index lies outside the potential's bound-state range."""


class NotQES(QhjError):
    """Operation requires a quasi-exactly-solvable potential family."""


class LeakageError(QhjError):
    """Sector operator does not close on polynomials of the requested degree.

    ``overflow`` holds the non-zero degree-raising coefficients.
    """

    def __init__(self, message, overflow=()):
        super().__init__(message)
        self.overflow = tuple(overflow)


class RecursionBreakdown(QhjError):
    """Coefficient recursion for a polynomial ODE hit a zero pivot."""

    def __init__(self, message, index):
        super().__init__(message)
        self.index = index


class OracleError(QhjError):
    """Grid eigensolver failed (singular potential, bracket failure, ...)."""


class ContourError(QhjError):
    """Contour could not be placed safely around the requested zeros."""
