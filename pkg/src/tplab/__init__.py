"""tplab: total positivity of the kernel 1/(x^2 + 2 cos(pi alpha) x y + y^2).

High-precision evaluation of the kernel's minors, of its derivative
determinant by five independent routes, of alternating-sign-matrix
generating functions, and scans of the related positivity conjectures.
"""

from .chebyshev import AlphaParam, as_alpha, cheb_u, q_factorial, superfactorial, v_product
from .delta import ROUTES, RouteResult, delta_all, delta_at_origin, delta_diagonal
from .exceptions import CapExceededError, ConvergenceError, PoleError
from .hp import DEFAULT_PRECISION_BITS

__version__ = "0.1.0"

__all__ = [
    "AlphaParam",
    "CapExceededError",
    "ConvergenceError",
    "DEFAULT_PRECISION_BITS",
    "PoleError",
    "ROUTES",
    "RouteResult",
    "as_alpha",
    "cheb_u",
    "delta_all",
    "delta_at_origin",
    "delta_diagonal",
    "q_factorial",
    "superfactorial",
    "v_product",
]
