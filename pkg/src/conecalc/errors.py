"""Exception hierarchy shared by all conecalc modules."""


class ConeCalcError(Exception):
    """Base class for computational errors raised by conecalc."""


class DimensionError(ConeCalcError, ValueError):
    """Vectors, forms or points of incompatible dimension."""


class LinearDependenceError(ConeCalcError, ValueError):
    """A set of vectors expected to be independent is (numerically) dependent."""


class FrameDependenceError(LinearDependenceError):
    """A time frame degenerates at some point.

    The offending point is kept on the ``point`` attribute.
    """

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class DomainError(ConeCalcError, ValueError):
    """A point lies outside the domain of a spacetime structure."""


class GridError(ConeCalcError, ValueError):
    """Invalid or oversized lattice specification."""


class WitnessError(ConeCalcError):
    """No strictly negative frame product found for a future causal vector."""
