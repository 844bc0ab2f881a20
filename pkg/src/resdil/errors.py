"""Exception types raised across the package."""


class NotHermitian(ValueError):
    """Matrix deviates from its conjugate transpose beyond tolerance."""


class BadDims(ValueError):
    """Subsystem dimension list is inconsistent with the matrix size."""


class DimMismatch(ValueError):
    """Operator and state dimensions do not agree."""


class Degenerate(ArithmeticError):
    """A rate denominator vanished (resource-free reference state)."""


class UnknownFigure(KeyError):
    pass
