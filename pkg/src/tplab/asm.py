"""Alternating sign matrices: enumeration, statistics, generating polynomials,
and the two evaluations of the Izergin-Korepin determinant.

Conventions (0-based internally):

* ``inv`` is the generalized inversion number, sum of a_ij a_kl over
  i < k, l < j (an entry paired with the entries below and to its left);
* ``j`` counts the *zero* entries whose inclusive column prefix sum equals
  their inclusive row prefix sum (south-west / north-east molecules);
* ``nu = j / 2 = inv - mu``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import mpmath

from . import hp
from .exceptions import CapExceededError, PoleError
from .hp import DEFAULT_PRECISION_BITS, to_hp, workprec

ASM_MAX_N = 8
PROPP_MAX_N = 7


@dataclass(frozen=True)
class Asm:
    entries: tuple

    def __post_init__(self):
        entries = tuple(tuple(int(v) for v in row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        _validate(entries)

    @classmethod
    def _trusted(cls, entries: tuple) -> "Asm":
        obj = object.__new__(cls)
        object.__setattr__(obj, "entries", entries)
        return obj

    @property
    def n(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def is_permutation(self) -> bool:
        return all(v >= 0 for row in self.entries for v in row)


def _validate(entries):
    n = len(entries)
    if n == 0 or any(len(row) != n for row in entries):
        raise ValueError("an ASM must be a non-empty square array")
    lines = list(entries) + [tuple(row[j] for row in entries) for j in range(n)]
    for line in lines:
        partial = 0
        for v in line:
            if v not in (-1, 0, 1):
                raise ValueError(f"ASM entries must be -1, 0 or 1, got {v}")
            partial += v
            if partial not in (0, 1):
                raise ValueError("nonzero entries must alternate in sign starting with +1")
        if partial != 1:
            raise ValueError("every row and column of an ASM sums to 1")


# --------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def _row_table(n: int) -> dict:
    """For each column-sum state (bitmask), the admissible rows in lexicographic order.

    Each entry is ``(row, new_state, inv_increment, mu_increment, j_increment)``;
    the increments depend only on the state before the row, which is what
    makes the transfer-matrix fold in :func:`group_by_stats` possible.
    """
    table = {}
    for state in range(1 << n):
        col = [(state >> j) & 1 for j in range(n)]
        suffix = [0] * n
        acc = 0
        for l in range(n - 1, -1, -1):
            suffix[l] = acc
            acc += col[l]
        rows = []

        def extend(j, s, row):
            if j == n:
                if s == 1:
                    rows.append(tuple(row))
                return
            if col[j] == 1 and s == 1:
                extend(j + 1, 0, row + [-1])
            extend(j + 1, s, row + [0])
            if col[j] == 0 and s == 0:
                extend(j + 1, 1, row + [1])

        extend(0, 0, [])
        entries = []
        for row in rows:
            new_state = state
            inv = mu = jcount = 0
            s = 0
            for l, v in enumerate(row):
                s += v
                if v:
                    new_state ^= 1 << l
                    inv += v * suffix[l]
                    if v < 0:
                        mu += 1
                elif col[l] == s:
                    jcount += 1
            entries.append((row, new_state, inv, mu, jcount))
        table[state] = entries
    return table


def _check_n(n: int, cap: int = ASM_MAX_N):
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise CapExceededError(f"n = {n} exceeds the enumeration cap {cap}")


def enumerate_asm(n: int) -> Iterator[Asm]:
    """All n x n ASMs, each once, lexicographic by rows (with -1 < 0 < 1).

    Rows are built depth first over the column partial sums, which must stay
    in {0, 1}; that enforces the alternation condition on columns, while the
    row table enforces it on rows.
    """
    _check_n(n)
    table = _row_table(n)
    full = (1 << n) - 1
    rows: list = [None] * n

    def walk(i, state):
        if i == n - 1:
            for row, new_state, *_ in table[state]:
                if new_state == full:
                    rows[i] = row
                    yield Asm._trusted(tuple(rows))
            return
        for row, new_state, *_ in table[state]:
            rows[i] = row
            yield from walk(i + 1, new_state)

    yield from walk(0, 0)


@lru_cache(maxsize=None)
def group_by_stats(n: int) -> dict:
    """Map ``(mu, nu) -> number of ASMs``, folded row by row over column states."""
    _check_n(n)
    table = _row_table(n)
    layer = {0: Counter({(0, 0): 1})}
    for _ in range(n):
        nxt: dict = {}
        for state, counts in layer.items():
            for _row, new_state, inv, mu, _j in table[state]:
                bucket = nxt.setdefault(new_state, Counter())
                for (m0, i0), c in counts.items():
                    bucket[(m0 + mu, i0 + inv)] += c
        layer = nxt
    final = layer[(1 << n) - 1]
    return {(mu, inv - mu): c for (mu, inv), c in sorted(final.items())}


def asm_count(n: int) -> int:
    return sum(group_by_stats(n).values())


# --------------------------------------------------------------------------
# statistics


@dataclass(frozen=True)
class AsmStats:
    mu: int
    nu: int
    inv: int
    j: int
    mu_row: tuple
    mu_col: tuple


def stats(A: Asm) -> AsmStats:
    """mu, nu, I, J and the per-row/per-column -1 counts in one O(n^2) pass."""
    n = A.n
    col = [0] * n
    mu_row = [0] * n
    mu_col = [0] * n
    inv = jcount = 0
    for k, row in enumerate(A.entries):
        suffix = [0] * n
        acc = 0
        for l in range(n - 1, -1, -1):
            suffix[l] = acc
            acc += col[l]
        s = 0
        for l, v in enumerate(row):
            s += v
            if v:
                inv += v * suffix[l]
                if v < 0:
                    mu_row[k] += 1
                    mu_col[l] += 1
            elif col[l] == s:
                jcount += 1
        for l, v in enumerate(row):
            col[l] += v
    mu = sum(mu_row)
    return AsmStats(mu=mu, nu=inv - mu, inv=inv, j=jcount, mu_row=tuple(mu_row), mu_col=tuple(mu_col))


def quarter_turn(A: Asm) -> Asm:
    """Anticlockwise rotation by 90 degrees."""
    n = A.n
    e = A.entries
    return Asm._trusted(tuple(tuple(e[j][n - 1 - i] for j in range(n)) for i in range(n)))


def mu_max(n: int) -> int:
    """Largest number of -1 entries in an n x n ASM."""
    if n < 1:
        raise ValueError("n must be positive")
    return (n - 1) ** 2 // 4 if n % 2 else n * (n - 2) // 4


# --------------------------------------------------------------------------
# generating polynomials


class IntPolynomial:
    """Univariate polynomial with exact integer coefficients (index = degree)."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients=()):
        coeffs = [int(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def __add__(self, other):
        a, b = self.coefficients, other.coefficients
        m = max(len(a), len(b))
        return IntPolynomial([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(m)])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([c * other for c in self.coefficients])
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = IntPolynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def __repr__(self):
        return f"IntPolynomial({list(self.coefficients)})"


class BivarIntPolynomial(dict):
    """Finitely supported map ``(deg_x, deg_y) -> integer coefficient``."""

    def __call__(self, x, y):
        return sum(c * x**i * y**j for (i, j), c in self.items())


def z_n_poly(n: int) -> BivarIntPolynomial:
    """Z_n(x, y) = sum over ASMs of x^nu y^mu."""
    return BivarIntPolynomial({(nu, mu): c for (mu, nu), c in group_by_stats(n).items()})


def z_nk_poly(n: int, k: int) -> IntPolynomial:
    """The mu = k slice of Z_n as a polynomial in x (zero if k is out of range)."""
    if k < 0 or k > mu_max(n):
        return IntPolynomial()
    coeffs: dict = {}
    for (mu, nu), c in group_by_stats(n).items():
        if mu == k:
            coeffs[nu] = coeffs.get(nu, 0) + c
    if not coeffs:
        return IntPolynomial()
    return IntPolynomial([coeffs.get(d, 0) for d in range(max(coeffs) + 1)])


# --------------------------------------------------------------------------
# Izergin-Korepin determinant


def _ik_points(X, Y):
    X = [to_hp(v) for v in X]
    Y = [to_hp(v) for v in Y]
    if len(X) != len(Y):
        raise ValueError("dimension mismatch")
    return X, Y


def ik_direct(q, X, Y, precision_bits: int = DEFAULT_PRECISION_BITS):
    """det[1 / ((x_i + y_j)(q x_i + y_j))] by complex fully pivoted elimination."""
    with workprec(precision_bits):
        q = mpmath.mpc(to_hp(q))
        X, Y = _ik_points(X, Y)
        rows = []
        for x in X:
            row = []
            for y in Y:
                d = (x + y) * (q * x + y)
                if d == 0:
                    raise PoleError(f"pole at x={x}, y={y}")
                row.append(1 / d)
            rows.append(row)
        return hp.det(rows)


def ik_propp_sum(q, X, Y, precision_bits: int = DEFAULT_PRECISION_BITS):
    """The alternating-sign-matrix expansion of the Izergin-Korepin determinant.

    V_X V_Y / P_q(X, Y) times the sum over ASMs of
    (-1)^mu (1-q)^{2 mu} q^{C(n,2) - I} prod_i x_i^{mu_i} y_i^{mu^i}
    prod_{a_ij = 0} (alpha_ij x_i + y_j), where alpha_ij = q exactly when the
    inclusive column and row prefix sums at (i, j) agree.
    """
    with workprec(precision_bits):
        q = mpmath.mpc(to_hp(q))
        X, Y = _ik_points(X, Y)
        n = len(X)
        _check_n(n, PROPP_MAX_N)
        vx = vy = mpmath.mpf(1)
        for i in range(n):
            for j in range(i + 1, n):
                vx *= X[j] - X[i]
                vy *= Y[j] - Y[i]
        pq = mpmath.mpc(1)
        for x in X:
            for y in Y:
                pq *= (x + y) * (q * x + y)
        if pq == 0:
            raise PoleError("P_q(X, Y) vanishes")
        one_minus_q_sq = (1 - q) ** 2
        half = n * (n - 1) // 2
        q_pow = [q**k for k in range(half + 1)]
        # zero entries only ever contribute (x_i + y_j) or (q x_i + y_j)
        plain = [[x + y for y in Y] for x in X]
        twisted = [[q * x + y for y in Y] for x in X]
        total = mpmath.mpc(0)
        for A in enumerate_asm(n):
            st = stats(A)
            w = (-one_minus_q_sq) ** st.mu * q_pow[half - st.inv]
            for i in range(n):
                if st.mu_row[i]:
                    w *= X[i] ** st.mu_row[i]
                if st.mu_col[i]:
                    w *= Y[i] ** st.mu_col[i]
            col = [0] * n
            for i, row in enumerate(A.entries):
                s = 0
                for j, v in enumerate(row):
                    s += v
                    if v == 0:
                        w *= twisted[i][j] if col[j] == s else plain[i][j]
                for j, v in enumerate(row):
                    col[j] += v
            total += w
        return vx * vy / pq * total
