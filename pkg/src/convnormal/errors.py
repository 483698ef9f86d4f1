"""Exception hierarchy shared by every module of the package."""


class GeometryError(Exception):
    """Base class for all domain errors raised by convnormal."""


class EmptyInput(GeometryError):
    pass


class NotFullDimensional(GeometryError):
    pass


class Unbounded(GeometryError):
    pass


class Empty(GeometryError):
    pass


class DimensionMismatch(GeometryError):
    pass


class NonPositiveScale(GeometryError):
    pass


class BudgetExceeded(GeometryError):
    """Raised instead of truncating an enumeration that would exceed its cap."""


class NotLatticePolytope(GeometryError):
    pass


class NotAVertex(GeometryError):
    pass


class NotRefining(GeometryError):
    """The normal fan of the first polytope does not refine that of the second."""


class NotTwoDimensional(GeometryError):
    pass


class UnknownExample(GeometryError, KeyError):
    pass


class GenerationBudgetExceeded(GeometryError):
    pass
