"""Exception types shared across the package."""


class HankelscopeError(Exception):
    """Base class for all package-specific errors."""


class DomainError(HankelscopeError, ValueError):
    """Input outside the mathematical domain of an operation."""


class UnsupportedOrderError(HankelscopeError, ValueError):
    """Requested expansion/map order exceeds the supported accuracy budget."""


class DegeneratePolynomialError(HankelscopeError, ValueError):
    """A polynomial coefficient that must be nonzero vanished."""


class DiscretizationError(HankelscopeError, RuntimeError):
    """Matrix assembly produced an invalid discrete model."""


class ConvergenceError(HankelscopeError, RuntimeError):
    """An iterative or spectral computation failed to converge to tolerance."""


class NotApplicableError(HankelscopeError, ValueError):
    """The requested formula does not apply to the given kernel order."""
