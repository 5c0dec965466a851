"""Exception types raised by the package."""


class ContractViolation(ValueError):
    """An argument violates a documented precondition."""


class DegenerateDirection(ArithmeticError):
    """Two vectors are (numerically) parallel, so no diversification
    coefficient exists."""


class MatrixFormatError(ValueError):
    """A matrix or index file could not be parsed or failed validation."""
