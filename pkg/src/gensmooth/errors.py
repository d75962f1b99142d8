"""Exception types shared across the package."""


class GensmoothError(Exception):
    """Base class for all errors raised by gensmooth."""


class InvalidParameterError(GensmoothError, ValueError):
    """A numerical parameter is outside its admissible range."""


class DomainError(GensmoothError, ValueError):
    """An evaluation point lies outside the operator's domain."""


class NearEndpointError(DomainError):
    """1 - x**2 is too small for the translation prefactor to be trusted."""


class NonFiniteSampleError(GensmoothError, ArithmeticError):
    """An integrand or evaluator returned NaN or infinity."""


class NonConvergenceError(GensmoothError, RuntimeError):
    """An adaptive procedure exhausted its budget without meeting tolerance."""


class DegenerateReportError(GensmoothError, ValueError):
    """A theorem report has no rows usable for constant estimation."""


class FunctionNotFoundError(GensmoothError, KeyError):
    """Requested test function id is not in the registry."""
