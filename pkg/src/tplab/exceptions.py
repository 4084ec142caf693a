class CapExceededError(ValueError):
    """Requested size is beyond an enumeration or combinatorial cap."""


class ConvergenceError(ArithmeticError):
    """A series, extrapolation or quadrature did not reach its tolerance."""


class PoleError(ZeroDivisionError):
    """A kernel denominator vanished."""
