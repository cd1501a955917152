"""Exception types raised across the package."""


class TblError(Exception):
    """Base class for every error raised by tamebrauer."""


class NotPrime(TblError, ValueError):
    pass


class DenominatorDivisibleByP(TblError, ValueError):
    pass


class PrecisionExhausted(TblError, ArithmeticError):
    """The available p-adic digits cannot determine the requested quantity."""


class ExactZero(TblError, ValueError):
    pass


class DivisionByZero(TblError, ZeroDivisionError):
    pass


class PDividesN(TblError, ValueError):
    pass


class NoSuchRoot(TblError, ValueError):
    pass


class NotInMuN(TblError, ValueError):
    pass


class ZeroElement(TblError, ValueError):
    pass


class EvenP(TblError, ValueError):
    pass


class PointOnBoundaryGenerically(TblError, ValueError):
    """f_i(u) cannot be distinguished from zero: the point meets Z generically."""


class NonFactorable(TblError, ValueError):
    """A class argument is not a unit times boundary equations and p-powers."""


class ResidueFunctionVanishes(TblError, ValueError):
    pass


class HypothesisViolated(TblError, ValueError):
    pass


class InvalidHom(TblError, ValueError):
    pass


class InvalidConfig(TblError, ValueError):
    pass


class ModelError(TblError, ValueError):
    """A scheme model or point fails its structural invariants."""


class ParseError(TblError, ValueError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class ValidationError(TblError, ValueError):
    pass


class ReproFailure(TblError, AssertionError):
    """A pinned reproduction did not produce its expected outcome."""
