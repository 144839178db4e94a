"""Exception types raised by the linnik package."""


class LinnikError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(LinnikError, ValueError):
    pass


class InvalidParams(InvalidInput):
    pass


class InvalidConfig(InvalidInput):
    pass


class NonConvergence(LinnikError, ArithmeticError):
    pass


class PoleError(LinnikError, ArithmeticError):
    pass


class NoSignChange(LinnikError, ValueError):
    pass


class OutOfDomain(LinnikError, ValueError):
    pass


class MomentDoesNotExist(LinnikError, ValueError):
    pass


class EstimationError(LinnikError):
    """Base for failures of an estimator on a particular sample."""


class ZeroObservation(EstimationError, ValueError):
    def __init__(self, index):
        super().__init__(f"observation {index} is exactly zero; log|x| is undefined")
        self.index = index


class TooFewObservations(EstimationError, ValueError):
    pass


class VarianceTooSmall(EstimationError, ArithmeticError):
    pass


class SolverFailed(EstimationError, ArithmeticError):
    pass


class DegenerateLambdas(InvalidConfig):
    pass


class ChfOutOfRange(EstimationError, ArithmeticError):
    pass


class NotPSDWarning(UserWarning):
    """Asymptotic covariance is asymmetric or indefinite beyond tolerance."""
