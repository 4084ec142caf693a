"""Chebyshev quotients U_k = sin(k pi a) / sin(pi a) and friends."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .hp import DEFAULT_PRECISION_BITS, to_fraction, to_hp, workprec


@dataclass(frozen=True)
class AlphaParam:
    """The kernel parameter with its trigonometric data cached.

    ``alpha`` is kept as an exact rational so that ``sin(k pi alpha)`` can be
    reduced modulo 2 before any rounding happens.
    """

    alpha: Fraction
    precision_bits: int
    cos_pi_alpha: mpmath.mpf
    sin_pi_alpha: mpmath.mpf
    q: mpmath.mpc
    omega: mpmath.mpc

    @classmethod
    def make(cls, alpha, precision_bits: int = DEFAULT_PRECISION_BITS) -> "AlphaParam":
        a = to_fraction(alpha)
        if not 0 <= a < 1:
            raise ValueError(f"alpha must lie in [0, 1), got {a}")
        if precision_bits < 64:
            raise ValueError("precision_bits must be at least 64")
        with workprec(precision_bits):
            c, s = _cos_sin_pi(a)
            omega = mpmath.mpc(*_cos_sin_pi(a / 2))
            q = mpmath.mpc(*_cos_sin_pi(2 * a))
        return cls(a, precision_bits, c, s, q, omega)

    def with_precision(self, precision_bits: int) -> "AlphaParam":
        return AlphaParam.make(self.alpha, precision_bits)

    @property
    def value(self) -> mpmath.mpf:
        with workprec(self.precision_bits):
            return to_hp(self.alpha)

    def __float__(self) -> float:
        return float(self.alpha)


def as_alpha(a, precision_bits: int | None = None) -> AlphaParam:
    """Accept an :class:`AlphaParam` or anything :meth:`AlphaParam.make` takes."""
    if isinstance(a, AlphaParam):
        if precision_bits is not None and precision_bits != a.precision_bits:
            return a.with_precision(precision_bits)
        return a
    return AlphaParam.make(a, precision_bits or DEFAULT_PRECISION_BITS)


def _sin_pi_rational(r: Fraction):
    """sin(pi r), reduced exactly to an argument in [0, 1/2] first."""
    r = r % 2
    sign = 1
    if r >= 1:
        r -= 1
        sign = -1
    if r > Fraction(1, 2):
        r = 1 - r
    if r == 0:
        return mpmath.mpf(0)
    if r == Fraction(1, 2):
        return mpmath.mpf(sign)
    v = mpmath.sinpi(to_hp(r))
    return v if sign > 0 else -v


def _cos_sin_pi(r: Fraction):
    return _sin_pi_rational(r + Fraction(1, 2)), _sin_pi_rational(r)


def cheb_u(a: AlphaParam, k: int):
    """U_k at cos(pi alpha); the alpha = 0 limit is ``k``."""
    a = as_alpha(a)
    with workprec(a.precision_bits):
        if a.alpha == 0:
            return mpmath.mpf(k)
        return _sin_pi_rational(k * a.alpha) / a.sin_pi_alpha


def cheb_u_recurrence(a: AlphaParam, k: int):
    """U_k via U_{k+1} = 2 cos(pi alpha) U_k - U_{k-1}, U_0 = 0, U_1 = 1."""
    if k < 0:
        raise ValueError("recurrence evaluation needs k >= 0")
    a = as_alpha(a)
    with workprec(a.precision_bits):
        two_c = 2 * a.cos_pi_alpha
        prev, cur = mpmath.mpf(0), mpmath.mpf(1)
        if k == 0:
            return prev
        for _ in range(k - 1):
            prev, cur = cur, two_c * cur - prev
        return cur


def cheb_u_table(a: AlphaParam, kmax: int) -> list:
    """``[U_0, U_1, ..., U_kmax]`` by direct sine evaluation."""
    a = as_alpha(a)
    return [cheb_u(a, k) for k in range(kmax + 1)]


def v_product(a: AlphaParam, n: int):
    """V_n = U_1 U_2 ... U_n."""
    if n < 1:
        raise ValueError("n must be positive")
    a = as_alpha(a)
    with workprec(a.precision_bits):
        out = mpmath.mpf(1)
        for k in range(1, n + 1):
            out *= cheb_u(a, k)
        return out


@lru_cache(maxsize=None)
def superfactorial(k: int) -> int:
    """sf(k) = 0! 1! ... k!."""
    if k < 0:
        raise ValueError("superfactorial needs k >= 0")
    out = 1
    for i in range(2, k + 1):
        out *= math.factorial(i)
    return out


def q_factorial(q, n: int, precision_bits: int = DEFAULT_PRECISION_BITS):
    """prod_{i=1}^n (1 + q + ... + q^{i-1}), the inversion generating function of S_n.

    Integer and ``Fraction`` arguments are kept exact.
    """
    if n < 1:
        raise ValueError("n must be positive")
    exact = isinstance(q, (int, Fraction))
    with workprec(precision_bits):
        if not exact:
            q = to_hp(q)
        out = 1
        term_sum = 0
        power = 1
        for _ in range(n):
            term_sum = term_sum + power
            out = out * term_sum
            power = power * q
        return out
