"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed argument, option, or configuration value."""


class DimensionError(InputError):
    """Array arguments whose shapes do not agree."""


class DomainError(InputError):
    """Parameter value outside the support required by an operation."""


class NumericError(ArithmeticError):
    """Numerical failure: non-finite values or a matrix that is not SPD."""
