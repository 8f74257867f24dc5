"""Exception hierarchy shared by every module."""


class FqIneqError(Exception):
    pass


class NotPrime(FqIneqError, ValueError):
    pass


class SizeExceeded(FqIneqError, ValueError):
    pass


class FieldMismatch(FqIneqError, TypeError):
    pass


class DivisionByZero(FqIneqError, ZeroDivisionError):
    pass


class ConstantPolynomial(FqIneqError, ValueError):
    pass


class ArityMismatch(FqIneqError, ValueError):
    pass


class RingMismatch(FqIneqError, TypeError):
    pass


class ZeroPolynomial(FqIneqError, ValueError):
    pass


class ZeroVector(FqIneqError, ValueError):
    pass


class ZeroCoefficient(FqIneqError, ValueError):
    pass


class NonChevalleyForm(FqIneqError, ValueError):
    pass


class HypothesisViolated(FqIneqError, ValueError):
    pass


class BudgetExceeded(FqIneqError, RuntimeError):
    pass


class ParseError(FqIneqError, ValueError):
    """Malformed input file; ``path`` locates the offending node."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path
