"""Exception types shared across the package."""


class FracopsError(Exception):
    """Base class for all package-specific errors."""


class DomainError(FracopsError, ValueError):
    """Argument outside an operator's domain (order, exponent, interval, grid)."""


class PoleError(FracopsError, ValueError):
    """Gamma function evaluated at a non-positive integer."""


class SingularityError(FracopsError, ArithmeticError):
    """Evaluation requested at a point where the function is unbounded."""


class ParseError(FracopsError, ValueError):
    """Malformed function-spec text."""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset
