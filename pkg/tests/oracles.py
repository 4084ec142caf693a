"""Independent reference implementations used only by the tests.

Nothing here imports the package's algorithms; each oracle is the most
direct (and slowest) reading of a definition.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import mpmath


def frac_det(rows) -> Fraction:
    """Exact determinant by Gaussian elimination over the rationals."""
    m = [[Fraction(v) for v in r] for r in rows]
    n = len(m)
    sign = 1
    out = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        out *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            for k in range(c, n):
                m[r][k] -= f * m[c][k]
    return sign * out


def leibniz_permanent(rows):
    n = len(rows)
    return sum(math.prod(rows[i][p[i]] for i in range(n)) for p in itertools.permutations(range(n)))


def inversions(p) -> int:
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])


def q_factorial_brute(q, n):
    return sum(q ** inversions(p) for p in itertools.permutations(range(n)))


def asm_product_formula(n: int) -> int:
    num = math.prod(math.factorial(3 * j + 1) for j in range(n))
    den = math.prod(math.factorial(n + j) for j in range(n))
    assert num % den == 0
    return num // den


def _valid_line(line) -> bool:
    s = 0
    for v in line:
        s += v
        if s not in (0, 1):
            return False
    return s == 1


def brute_force_asms(n: int) -> list:
    """Every {-1,0,1} matrix whose rows and columns are alternating with sum 1."""
    rows = [r for r in itertools.product((-1, 0, 1), repeat=n) if _valid_line(r)]
    out = []
    for choice in itertools.product(rows, repeat=n):
        if all(_valid_line([choice[i][j] for i in range(n)]) for j in range(n)):
            out.append(tuple(choice))
    return sorted(out)


def inv_brute(A) -> int:
    """sum_{i<k, l<j} a_ij a_kl."""
    n = len(A)
    return sum(
        A[i][j] * A[k][l] for i in range(n) for j in range(n) for k in range(i + 1, n) for l in range(j)
    )


def j_brute(A) -> int:
    """Zero entries whose column sum above-and-including equals the row sum left-and-including."""
    n = len(A)
    count = 0
    for i in range(n):
        for j in range(n):
            if A[i][j] == 0:
                if sum(A[k][j] for k in range(i + 1)) == sum(A[i][l] for l in range(j + 1)):
                    count += 1
    return count


def rotate_anticlockwise(A):
    n = len(A)
    return tuple(tuple(A[j][n - 1 - i] for j in range(n)) for i in range(n))


def ssyt_count(shape, n: int) -> int:
    """Semistandard tableaux of ``shape`` with entries in 1..n, by brute force."""
    cells = [(r, c) for r, length in enumerate(shape) for c in range(length)]
    count = 0
    for filling in itertools.product(range(1, n + 1), repeat=len(cells)):
        t = dict(zip(cells, filling))
        ok = all(
            (c == 0 or t[(r, c - 1)] <= t[(r, c)]) and (r == 0 or t[(r - 1, c)] < t[(r, c)]) for (r, c) in cells
        )
        count += ok
    return count


def partitions_brute(k: int, max_parts: int) -> set:
    out = set()
    for parts in itertools.product(range(k + 1), repeat=max_parts):
        if sum(parts) == k and all(a >= b for a, b in zip(parts, parts[1:])):
            out.add(tuple(p for p in parts if p))
    return out


def quotient_coefficients(alpha: Fraction, n: int, bits: int = 300) -> list:
    """Coefficients of (Qb^{2n} - Q^{2n}) / (Qb^2 - Q^2) in x (y = 1) by long division."""
    with mpmath.workprec(bits):
        w = mpmath.expjpi(mpmath.mpf(alpha.numerator) / alpha.denominator / 2)
        wb = mpmath.conj(w)

        def power(a, b, m):  # (a x + b)^m, ascending in x
            return [math.comb(m, i) * a**i * b ** (m - i) for i in range(m + 1)]

        num = [u - v for u, v in zip(power(wb, w, 2 * n), power(w, wb, 2 * n))]
        den = [u - v for u, v in zip(power(wb, w, 2), power(w, wb, 2))]
        if abs(den[2]) == 0:
            raise ZeroDivisionError("degenerate quotient")
        # divide from the top degree down
        num = num[:]
        quot = [mpmath.mpc(0)] * (2 * n - 1)
        for d in range(2 * n - 2, -1, -1):
            c = num[d + 2] / den[2]
            quot[d] = c
            for t in range(3):
                num[d + t] -= c * den[t]
        return [c.real for c in quot]


def laplace_det(rows):
    """Cofactor expansion along the first row; fine for the small sizes used in tests."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * laplace_det(minor)
    return total
