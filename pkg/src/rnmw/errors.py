"""Exception types shared across the package."""


class DomainError(ValueError):
    """Invalid argument: out-of-domain input or malformed parameters."""


class NumericError(RuntimeError):
    """Internal numeric failure: a solver or quadrature did not converge."""
