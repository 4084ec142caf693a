"""High-precision plumbing shared by every module.

All real and complex quantities are :mod:`mpmath` ``mpf`` / ``mpc`` values.
mpmath arithmetic uses the precision of the *current* context, so every
public function wraps its work in ``mp.workprec(bits)``; callers comparing
results should do the same (or use :func:`rel_diff`).
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

import mpmath
from mpmath import mp

from .exceptions import CapExceededError

DEFAULT_PRECISION_BITS = 256

workprec = mp.workprec


def to_fraction(value) -> Fraction:
    """Exact rational view of a scalar.

    Floats go through their shortest repr, so ``0.4`` becomes ``2/5`` rather
    than the nearest binary fraction; strings are parsed as decimals or
    ``p/q``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, mpmath.mpf):
        man, exp = value.man_exp if value else (0, 0)
        return Fraction(man) * Fraction(2) ** exp
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def to_hp(value):
    """Convert a scalar to ``mpf``/``mpc`` at the current working precision."""
    if isinstance(value, (mpmath.mpf, mpmath.mpc)):
        return +value
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    if isinstance(value, complex):
        return mpmath.mpc(value)
    return mpmath.mpf(value)


def rel_diff(a, b, bits: int = DEFAULT_PRECISION_BITS + 64):
    """|a - b| / max(|a|, |b|), zero when both vanish."""
    with workprec(bits):
        scale = max(abs(to_hp(a)), abs(to_hp(b)))
        if scale == 0:
            return mpmath.mpf(0)
        return abs(to_hp(a) - to_hp(b)) / scale


def det(matrix):
    """Determinant by Gaussian elimination with full pivoting.

    Works over any field whose elements support ``abs`` (``mpf``, ``mpc``,
    ``Fraction``). Arithmetic happens at the caller's working precision.
    """
    a = [list(row) for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    result = 1
    for k in range(n):
        p, q, best = k, k, abs(a[k][k])
        for i in range(k, n):
            row = a[i]
            for j in range(k, n):
                v = abs(row[j])
                if v > best:
                    p, q, best = i, j, v
        if best == 0:
            return a[0][0] * 0
        if p != k:
            a[p], a[k] = a[k], a[p]
            sign = -sign
        if q != k:
            for row in a:
                row[q], row[k] = row[k], row[q]
            sign = -sign
        piv = a[k][k]
        result = result * piv
        pivot_row = a[k]
        for i in range(k + 1, n):
            row = a[i]
            f = row[k] / piv
            if f:
                for j in range(k + 1, n):
                    row[j] -= f * pivot_row[j]
    return result if sign > 0 else -result


def det_int(matrix) -> int:
    """Exact integer determinant (Bareiss fraction-free elimination)."""
    a = [[int(v) for v in row] for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


PERMANENT_MAX_N = 20


def permanent(matrix):
    """Ryser's inclusion-exclusion permanent, Gray-code ordered (2^n * n)."""
    a = [list(row) for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("permanent of a non-square matrix")
    if n > PERMANENT_MAX_N:
        raise CapExceededError(f"permanent size {n} exceeds cap {PERMANENT_MAX_N}")
    if n == 0:
        return 1
    row_sums = [a[i][0] * 0 for i in range(n)]
    total = a[0][0] * 0
    gray_prev = 0
    for s in range(1, 1 << n):
        gray = s ^ (s >> 1)
        changed = gray ^ gray_prev
        j = changed.bit_length() - 1
        if gray & changed:
            for i in range(n):
                row_sums[i] += a[i][j]
        else:
            for i in range(n):
                row_sums[i] -= a[i][j]
        gray_prev = gray
        prod = row_sums[0]
        for i in range(1, n):
            prod *= row_sums[i]
        if bin(gray).count("1") % 2:
            total -= prod
        else:
            total += prod
    return -total if n % 2 else total


def minors_count(rows: int, cols: int, max_order: int) -> int:
    return sum(math.comb(rows, m) * math.comb(cols, m) for m in range(1, max_order + 1))


def iter_minors(matrix, max_order: int):
    """Yield ``(row_subset, col_subset, minor)`` for every square minor up to ``max_order``."""
    rows, cols = len(matrix), len(matrix[0])
    for m in range(1, max_order + 1):
        for rs in combinations(range(rows), m):
            sub_rows = [matrix[i] for i in rs]
            for cs in combinations(range(cols), m):
                yield rs, cs, det([[r[j] for j in cs] for r in sub_rows])


def richardson(values, ratio, powers):
    """Neville-style Richardson table.

    ``values[i]`` was computed at step ``h_0 / ratio**i`` and the error is
    assumed to expand in ``h**powers[0], h**powers[1], ...``. Returns the
    fully extrapolated value and the difference between the last two
    diagonal entries as an error estimate.
    """
    table = [list(values)]
    for k, p in enumerate(powers[: len(values) - 1]):
        prev = table[-1]
        f = mpmath.mpf(ratio) ** p - 1
        table.append([prev[i + 1] + (prev[i + 1] - prev[i]) / f for i in range(len(prev) - 1)])
    best = table[-1][-1]
    if len(table) > 1:
        err = abs(best - table[-2][-1])
    else:
        err = mpmath.mpf(0)
    return best, err


def central_derivative(f, x0, order: int, h0, levels: int = 12):
    """``order``-th derivative of ``f`` at ``x0`` by central differences + Richardson.

    The stencil ``sum_k (-1)^k C(m,k) f(x0 + (m/2 - k) h) / h^m`` has an
    error expansion in even powers of ``h``, so successive halvings are
    combined with factors ``4, 16, 64, ...``. Returns ``(value, error)``.
    """
    if order == 0:
        return f(x0), mpmath.mpf(0)
    weights = [(-1) ** k * math.comb(order, k) for k in range(order + 1)]
    values = []
    h = h0
    for _ in range(levels):
        acc = 0
        for k, w in enumerate(weights):
            acc += w * f(x0 + (mpmath.mpf(order) / 2 - k) * h)
        values.append(acc / h**order)
        h = h / 2
    return richardson(values, 2, [2 * (i + 1) for i in range(levels)])


def hex_float(v) -> str:
    """Bit-exact hexadecimal rendering of an ``mpf`` (``-0x1bp-3`` style)."""
    if not isinstance(v, mpmath.mpf):
        with mpmath.mp.workprec(max(mpmath.mp.prec, 64)):
            v = mpmath.mpf(v)
    if v == 0:
        return "0x0p+0"
    if not mpmath.isfinite(v):
        return str(v)
    sign, man, exp, _ = v._mpf_
    return f"{'-' if sign else ''}0x{man:x}p{exp:+d}"
