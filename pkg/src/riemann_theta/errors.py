"""Exception hierarchy shared by all modules."""


class ThetaError(Exception):
    """Base class for every error raised by this package."""


class NotPositiveDefinite(ThetaError, ValueError):
    """A matrix expected to be symmetric positive definite is not."""


class DegenerateBasis(ThetaError, ValueError):
    """Lattice basis rows are (numerically) linearly dependent."""


class UnsupportedArgument(ThetaError, ValueError):
    pass


class InvalidRadius(ThetaError, ValueError):
    pass


class DerivOrderExceeded(ThetaError, ValueError):
    """Requested derivative order is larger than the context was built for."""


class SingularTransform(ThetaError, ArithmeticError):
    pass


class NumericalFailure(ThetaError, ArithmeticError):
    """Base for failures that indicate a badly scaled input rather than bad syntax."""


class EllipsoidTooLarge(NumericalFailure):
    pass


class NoConvergence(NumericalFailure):
    pass


class ReductionStalled(UserWarning):
    """Siegel reduction hit its iteration cap; the last iterate is returned."""
