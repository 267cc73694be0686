"""Exception hierarchy shared by every module."""


class GenopError(Exception):
    """Base class for all library errors."""


class QuadratureDomainError(GenopError):
    """An integrand produced a non-finite value, or a contour leaves the analyticity domain."""


class NonConvergenceError(GenopError):
    """Refinement did not stabilise the result.

    ``trace`` holds ``(resolution, value)`` pairs in the order they were computed.
    """

    def __init__(self, message, trace=()):
        super().__init__(message)
        self.trace = list(trace)


class ParameterError(GenopError):
    """Parameters violate a documented precondition."""


class PoleError(GenopError):
    """Evaluation requested at a pole ``mu = -ell - 1``."""

    def __init__(self, ell, message=None):
        super().__init__(message or f"pole at mu = {-ell - 1}")
        self.ell = ell


class DomainError(GenopError):
    """Argument on a branch cut or outside the admissible set."""


class DecayContractError(GenopError):
    """The declared decay of a test function does not make the tail integrable."""


class ChartError(GenopError):
    """A point leaves the coordinate chart in use (Bruhat cell, dS^2 Bruhat chart)."""
