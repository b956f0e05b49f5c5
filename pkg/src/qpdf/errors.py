"""Exception hierarchy shared by every module of :mod:`qpdf`."""


class QPDError(Exception):
    """Base class for all errors raised by qpdf."""


class ZeroRotor(QPDError, ValueError):
    pass


class OutOfWindow(QPDError, IndexError):
    pass


class DimensionMismatch(QPDError, ValueError):
    pass


class TooLarge(QPDError, ValueError):
    pass


class NotHermitian(QPDError, ValueError):
    pass


class NonRealAtIdentity(QPDError, ValueError):
    pass


class NotPositiveDefinite(QPDError, ValueError):
    pass


class NotFinite(QPDError, ValueError):
    pass


class NotReal(QPDError, ValueError):
    pass


class NotInSlice(QPDError, ValueError):
    pass


class WrongExponent(QPDError, ValueError):
    pass


class RealCharacter(QPDError, ValueError):
    pass


class NoFit(QPDError, ValueError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ZeroKernel(QPDError, ValueError):
    pass


class NoConvergence(QPDError, ArithmeticError):
    """An iterative solver ran out of iterations; ``residual`` says how far it got."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
