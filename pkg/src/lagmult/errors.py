"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A parameter is outside the range an operation supports."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of a function."""


class ConvergenceError(RuntimeError):
    """An iterative computation did not converge within its budget."""


class TailNotCertifiable(RuntimeError):
    """A truncated infinite sum whose tail descriptor cannot certify convergence."""
