"""Generating kernels F_{n,k}, the band matrices B_{alpha,n}, and the scans
that probe the positivity conjectures.

Two pairs of complex-conjugate linear forms appear here: ``Q = w x + conj(w) y``
with ``w = exp(i pi alpha / 2)`` and its conjugate ``Qb``.  Everything else is
a polynomial in Q, Qb with integer coefficients coming from ASM statistics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable

import mpmath

from . import asm as asm_mod
from . import hp
from .chebyshev import AlphaParam, _cos_sin_pi, as_alpha, cheb_u
from .delta import b_sigma, delta, delta_at_origin, reflect_sigma
from .exceptions import CapExceededError
from .hp import to_hp, workprec
from .serialize import hp_json, plain_number

BAND_MAX_N = 12
CHECK_TP_MAX_MINORS = 10**7


# --------------------------------------------------------------------------
# F_{n,k}


@dataclass(frozen=True)
class FnkValue:
    value: mpmath.mpf
    imag_residue: mpmath.mpf
    n: int
    k: int


def _q_forms(a: AlphaParam, x, y):
    w = a.omega
    Q = w * x + mpmath.conj(w) * y
    return Q, mpmath.conj(Q)


def _check_xy(x, y):
    x, y = to_hp(x), to_hp(y)
    if x <= 0 or y <= 0:
        raise ValueError("x and y must be positive")
    return x, y


def f_nk(a: AlphaParam, n: int, k: int, x, y) -> FnkValue:
    """sum over ASMs with k entries -1 of Q^{2 nu} Qb^{n(n-1) - 2 nu - 2k}.

    Uses the grouped (mu, nu) counts, so a grid of points costs one
    enumeration per ``n``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > asm_mod.PROPP_MAX_N:
        raise CapExceededError(f"f_nk is capped at n = {asm_mod.PROPP_MAX_N}")
    if not 0 <= k <= asm_mod.mu_max(n):
        raise ValueError(f"k must lie in [0, {asm_mod.mu_max(n)}]")
    a = as_alpha(a)
    a_hi = a.with_precision(a.precision_bits + 32)
    with workprec(a_hi.precision_bits):
        x, y = _check_xy(x, y)
        Q, Qb = _q_forms(a_hi, x, y)
        top = n * (n - 1) - 2 * k
        total = mpmath.mpc(0)
        for (mu, nu), c in asm_mod.group_by_stats(n).items():
            if mu == k:
                total += c * Q ** (2 * nu) * Qb ** (top - 2 * nu)
    with workprec(a.precision_bits):
        return FnkValue(+total.real, abs(+total.imag), n, k)


def f_n0_closed(a: AlphaParam, n: int, x, y):
    """prod_{i=1}^n (Qb^{2i} - Q^{2i}) / (Qb^2 - Q^2), the permutation part.

    On the degenerate locus (x = y or alpha = 0) each quotient is replaced by
    its expanded geometric sum.
    """
    if n < 1:
        raise ValueError("n must be positive")
    a = as_alpha(a)
    a_hi = a.with_precision(a.precision_bits + 32)
    with workprec(a_hi.precision_bits):
        x, y = _check_xy(x, y)
        Q, Qb = _q_forms(a_hi, x, y)
        Q2, Qb2 = Q * Q, Qb * Qb
        den = Qb2 - Q2
        degenerate = abs(den) <= abs(Q2) * mpmath.mpf(2) ** (-(a.precision_bits // 2))
        out = mpmath.mpc(1)
        for i in range(1, n + 1):
            if degenerate:
                out *= sum(Q2**j * Qb2 ** (i - 1 - j) for j in range(i))
            else:
                out *= (Qb2**i - Q2**i) / den
    with workprec(a.precision_bits):
        return +out.real


def _cos_pi(r: Fraction):
    return _cos_sin_pi(r)[0]


def c_coefficients(a: AlphaParam, n: int) -> list:
    """Coefficients c_0..c_{2n-2} of (Qb^{2n} - Q^{2n}) / (Qb^2 - Q^2) in x^i y^{2n-2-i}.

    The quotient is sum_{p+q=n-1} Q^{2p} Qb^{2q}; expanding both powers gives

        c_i = sum_{p+q=n-1} sum_{j+k=i} C(2p,j) C(2q,k) cos(pi (j-k+q-p) alpha),

    which is regular at alpha = 0 (where c_i = n C(2n-2, i)).
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    a = as_alpha(a)
    with workprec(a.precision_bits):
        cache: dict = {}
        out = []
        for i in range(2 * n - 1):
            acc = mpmath.mpf(0)
            for p in range(n):
                q = n - 1 - p
                for j in range(max(0, i - 2 * q), min(i, 2 * p) + 1):
                    k = i - j
                    m = j - k + q - p
                    if m not in cache:
                        cache[m] = _cos_pi(m * a.alpha)
                    acc += math.comb(2 * p, j) * math.comb(2 * q, k) * cache[m]
            out.append(acc)
        return out


def c_coefficients_printed(a: AlphaParam, n: int) -> list:
    """(cos(pi (n-1-i) alpha) - cos(pi n alpha)) / sin^2(pi alpha), with its alpha -> 0 limit.

    Kept for comparison: this closed form is not the coefficient list of the
    quotient above (it drops the binomial weights), see :func:`c_coefficients`.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    a = as_alpha(a)
    with workprec(a.precision_bits):
        if a.alpha == 0:
            return [mpmath.mpf(n * n - (n - 1 - i) ** 2) / 2 for i in range(2 * n - 1)]
        s2 = a.sin_pi_alpha**2
        cn = _cos_pi(n * a.alpha)
        return [(_cos_pi((n - 1 - i) * a.alpha) - cn) / s2 for i in range(2 * n - 1)]


def is_unimodal(seq) -> bool:
    """Weakly increasing up to some peak, weakly decreasing after it."""
    if not seq:
        return True
    i = 0
    while i + 1 < len(seq) and seq[i] <= seq[i + 1]:
        i += 1
    while i + 1 < len(seq) and seq[i] >= seq[i + 1]:
        i += 1
    return i == len(seq) - 1


# the four rewritings of F_{4,1}, F_{5,1}, F_{5,2}, F_{5,3}


def _identity_rhs(n, k, Q, Qb, F0):
    m2 = (Q * Qb).real  # |Q|^2
    s2 = (Q * Q + Qb * Qb).real
    s4 = (Q**4 + Qb**4).real
    d2 = ((Q * Q - Qb * Qb) ** 2).real
    if (n, k) == (4, 1):
        return 2 * m2**2 * s2**3
    if (n, k) == (5, 1):
        return (
            3 * m2**2 * F0[5] / F0[3]
            + 8 * m2**4 * F0[4] / F0[2]
            + 10 * m2**6 * F0[4] / F0[3]
            + 2 * m2**8 * F0[2]
        )
    if (n, k) == (5, 2):
        return 2 * m2**2 * F0[4] + 6 * m2**4 * s4**2 + 11 * m2**6 * s4
    if (n, k) == (5, 3):
        return m2**2 * s2 * (3 * m2**4 + s4**2 - m2**2 * d2)
    raise KeyError((n, k))


DECOMPOSITIONS = ((4, 1), (5, 1), (5, 2), (5, 3))


@dataclass
class IdentityCheck:
    n: int
    k: int
    lhs: mpmath.mpf
    rhs: mpmath.mpf
    rel_diff: mpmath.mpf

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "lhs": hp_json(self.lhs),
            "rhs": hp_json(self.rhs),
            "relDiff": hp_json(self.rel_diff),
        }


def decomposition_check(a: AlphaParam, n: int, k: int, x, y) -> IdentityCheck:
    """Compare F_{n,k} with its printed rewriting in F_{m,0} and |Q| at one point."""
    if (n, k) not in DECOMPOSITIONS:
        raise ValueError(f"no rewriting recorded for (n, k) = {(n, k)}")
    a = as_alpha(a)
    lhs = f_nk(a, n, k, x, y).value
    F0 = {m: f_n0_closed(a, m, x, y) for m in range(2, 6)}
    with workprec(a.precision_bits):
        Q, Qb = _q_forms(a, to_hp(x), to_hp(y))
        rhs = _identity_rhs(n, k, Q, Qb, F0)
        return IdentityCheck(n, k, lhs, rhs, hp.rel_diff(lhs, rhs, a.precision_bits))


# --------------------------------------------------------------------------
# band matrices


class ChebCombo:
    """Integer combination sum_m c_m U_m with positive indices only."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        folded: dict = {}
        for m, c in dict(coeffs or {}).items():
            m, c = int(m), int(c)
            if m == 0 or c == 0:
                continue
            if m < 0:
                m, c = -m, -c
            folded[m] = folded.get(m, 0) + c
        self.coeffs = {m: c for m, c in sorted(folded.items()) if c}

    @classmethod
    def u(cls, m: int, c: int = 1) -> "ChebCombo":
        return cls({m: c})

    def __add__(self, other: "ChebCombo") -> "ChebCombo":
        merged = dict(self.coeffs)
        for m, c in other.coeffs.items():
            merged[m] = merged.get(m, 0) + c
        return ChebCombo(merged)

    def __mul__(self, scalar: int) -> "ChebCombo":
        return ChebCombo({m: c * int(scalar) for m, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, ChebCombo):
            return self.coeffs == other.coeffs
        if other == 0:
            return not self.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def evaluate(self, a: AlphaParam):
        a = as_alpha(a)
        with workprec(a.precision_bits):
            return mpmath.fsum(c * cheb_u(a, m) for m, c in self.coeffs.items())

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for m, c in sorted(self.coeffs.items(), reverse=True):
            mag = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else "+"
            parts.append((sign, f"{mag}U{m}"))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"ChebCombo({self.coeffs})"


@dataclass(frozen=True)
class BandMatrix:
    n: int
    entries: tuple

    def __getitem__(self, ik):
        i, k = ik
        return self.entries[i][k]

    @property
    def shape(self) -> tuple:
        return self.n, 2 * self.n - 1

    def is_persymmetric(self) -> bool:
        n = self.n
        return all(
            self.entries[i][k] == self.entries[n - 1 - i][2 * n - 2 - k] for i in range(n) for k in range(2 * n - 1)
        )

    def is_banded(self) -> bool:
        return all(
            not self.entries[i][k] for i in range(self.n) for k in range(2 * self.n - 1) if not i <= k <= self.n - 1 + i
        )

    def evaluate(self, a: AlphaParam) -> list:
        a = as_alpha(a)
        cache: dict = {}
        with workprec(a.precision_bits):
            rows = []
            for row in self.entries:
                out = []
                for e in row:
                    if e not in cache:
                        cache[e] = e.evaluate(a)
                    out.append(cache[e])
                rows.append(out)
            return rows

    def as_strings(self) -> list:
        return [[str(e) for e in row] for row in self.entries]


def horizontal_matrix(n: int) -> list:
    """[C(n, k-i) U_{2i-k}], 1 <= i <= n, 1 <= k <= 2n-1, as ChebCombos (0-based lists)."""
    return [
        [
            ChebCombo.u(2 * i - k, math.comb(n, k - i)) if 0 <= k - i <= n else ChebCombo()
            for k in range(1, 2 * n)
        ]
        for i in range(1, n + 1)
    ]


def transform_matrix(n: int) -> list:
    """Upper-triangular T with T[i][j] = C(n, j) for j >= i (1-based), realising L_i -> sum_{j>=i} C(n,j) L_j."""
    return [[math.comb(n, j) if j >= i else 0 for j in range(1, n + 1)] for i in range(1, n + 1)]


def transform_factor(n: int) -> int:
    """det T = prod_{i=1}^n C(n, i): the positive factor on every n x n minor."""
    return math.prod(math.comb(n, i) for i in range(1, n + 1))


def band_matrix(n: int) -> BandMatrix:
    """B_{alpha,n} = T H, built symbolically; cancellation and persymmetry are asserted."""
    if not 1 <= n <= BAND_MAX_N:
        raise ValueError(f"n must lie in [1, {BAND_MAX_N}]")
    H = horizontal_matrix(n)
    T = transform_matrix(n)
    rows = []
    for i in range(n):
        row = []
        for k in range(2 * n - 1):
            acc = ChebCombo()
            for j in range(i, n):
                if H[j][k]:
                    acc = acc + H[j][k] * T[i][j]
            row.append(acc)
        rows.append(tuple(row))
    for i in range(n - 1):
        if rows[i][n + i]:
            raise AssertionError(f"entry ({i + 1}, {n + i + 1}) does not cancel: {rows[i][n + i]}")
    B = BandMatrix(n, tuple(rows))
    if not B.is_banded():
        raise AssertionError("band structure violated")
    if not B.is_persymmetric():
        raise AssertionError("persymmetry violated")
    return B


def band_entry_formula(n: int, i: int, k: int) -> ChebCombo:
    """sum_{j=i}^n C(n,j) C(n,k-j) U_{2j-k} on the band (1-based i, k), zero off it."""
    if not i <= k <= n - 1 + i:
        return ChebCombo()
    acc = ChebCombo()
    for j in range(i, n + 1):
        if 0 <= k - j <= n:
            acc = acc + ChebCombo.u(2 * j - k, math.comb(n, j) * math.comb(n, k - j))
    return acc


def band_minor(a: AlphaParam, n: int, sigma):
    """n x n minor of B_{alpha,n} on the columns sigma (1-based)."""
    a = as_alpha(a)
    M = band_matrix(n).evaluate(a)
    with workprec(a.precision_bits):
        return hp.det([[row[s - 1] for s in sigma] for row in M])


def b_sigma_from_band(a: AlphaParam, n: int, sigma):
    """b_sigma recovered from the band minor: band(sigma) / prod C(n, i).

    The transposed Lascoux minor on sigma is the horizontal-matrix minor on
    the reflected set, and persymmetry maps that back to sigma.
    """
    a = as_alpha(a)
    value = band_minor(a, n, reflect_sigma(n, sigma))
    with workprec(a.precision_bits):
        return value / transform_factor(n)


# --------------------------------------------------------------------------
# minor scans


@dataclass
class TPCheck:
    min_minor: mpmath.mpf
    rows: tuple
    cols: tuple
    minors_checked: int
    negatives: int
    tol: mpmath.mpf
    rechecked: int = 0

    @property
    def ok(self) -> bool:
        return self.min_minor >= -self.tol

    def to_dict(self) -> dict:
        return {
            "minMinor": hp_json(self.min_minor),
            "witnessRows": [r + 1 for r in self.rows],
            "witnessCols": [c + 1 for c in self.cols],
            "minorsChecked": self.minors_checked,
            "negatives": self.negatives,
            "tol": hp_json(self.tol),
            "rechecked": self.rechecked,
            "totallyPositive": self.ok,
        }


def check_tp(
    M,
    max_order: int | None = None,
    tol=1e-30,
    precision_bits: int = hp.DEFAULT_PRECISION_BITS,
    rebuild: Callable[[int], list] | None = None,
) -> TPCheck:
    """Every square minor of M up to ``max_order``; report the smallest.

    With ``rebuild`` (a callable returning the matrix at a given precision),
    minors with |minor| < 1000 tol are recomputed at doubled precision.
    """
    rows, cols = len(M), len(M[0])
    if max_order is None:
        max_order = min(rows, cols)
    if not 1 <= max_order <= min(rows, cols):
        raise ValueError("max_order must lie in [1, min(rows, cols)]")
    count = hp.minors_count(rows, cols, max_order)
    if count > CHECK_TP_MAX_MINORS:
        raise CapExceededError(f"{count} minors exceeds the guard {CHECK_TP_MAX_MINORS}")
    with workprec(precision_bits):
        tol = to_hp(tol)
        M = [[to_hp(v) for v in row] for row in M]
        near = 1000 * tol
        fine = rebuild(2 * precision_bits) if rebuild else None
        best = None
        negatives = rechecked = 0
        for rs, cs, minor in hp.iter_minors(M, max_order):
            if fine is not None and abs(minor) < near:
                with workprec(2 * precision_bits):
                    minor = hp.det([[fine[i][j] for j in cs] for i in rs])
                minor = +minor
                rechecked += 1
            if minor < -tol:
                negatives += 1
            if best is None or minor < best[0]:
                best = (minor, rs, cs)
        return TPCheck(best[0], best[1], best[2], count, negatives, tol, rechecked)


def check_band_tp(a: AlphaParam, n: int, max_order: int | None = None, tol=1e-30, rigorous: bool = False) -> TPCheck:
    a = as_alpha(a)
    B = band_matrix(n)
    rebuild = (lambda bits: B.evaluate(a.with_precision(bits))) if rigorous else None
    return check_tp(B.evaluate(a), max_order, tol, a.precision_bits, rebuild)


# --------------------------------------------------------------------------
# scans


def ratio_grid(count: int = 13, lo: float = -3.0, hi: float = 3.0) -> list:
    """Points (1, 10^t) for t evenly spaced in [lo, hi]; homogeneity makes x = 1 enough."""
    if count < 1:
        raise ValueError("count must be positive")
    if count == 1:
        return [(Fraction(1), Fraction(0))]
    out = []
    for s in range(count):
        t = Fraction(lo) + (Fraction(hi) - Fraction(lo)) * s / (count - 1)
        out.append((Fraction(1), t))
    return out


def _grid_point(p):
    x, t = p
    return to_hp(x), mpmath.mpf(10) ** to_hp(t)


def _grid_json(grid):
    return [{"x": str(x), "log10y": str(t)} for x, t in grid]


@dataclass
class ScanReport:
    kind: str
    params: dict
    grid: dict
    counterexamples: list = field(default_factory=list)
    min_signed_value: mpmath.mpf | None = None
    witness: dict | None = None
    checks: list = field(default_factory=list)
    table: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "params": self.params,
            "grid": self.grid,
            "counterexamples": self.counterexamples,
            "minSignedValue": None if self.min_signed_value is None else hp_json(self.min_signed_value),
            "witness": self.witness,
            "checks": self.checks,
        }

    def table_csv(self) -> str:
        if not self.table:
            return ""
        header = list(self.table[0])
        lines = [",".join(header)]
        for row in self.table:
            lines.append(",".join(str(row[h]) for h in header))
        return "\n".join(lines) + "\n"


def scan_conjecture1(
    n: int,
    alpha_grid,
    xy_grid=None,
    precision_bits: int = hp.DEFAULT_PRECISION_BITS,
    identity_tol=1e-20,
) -> ScanReport:
    """F_{n,k} > 0 on the grid for every alpha <= 1/n and every k.

    Values are normalised by (x + y)^{deg} so that grid points compare. The
    printed rewritings of F_{4,1}, F_{5,1}, F_{5,2}, F_{5,3} are checked at
    every grid point alongside.
    """
    if not 2 <= n <= 6:
        raise ValueError("n must lie in [2, 6]")
    xy_grid = list(xy_grid or ratio_grid())
    alphas = [as_alpha(v, precision_bits) for v in alpha_grid]
    report = ScanReport(
        "conjecture1",
        {"n": n, "precisionBits": precision_bits, "identityTol": str(identity_tol)},
        {"alpha": [str(a.alpha) for a in alphas], "xy": _grid_json(xy_grid)},
    )
    skipped = []
    worst_identity: dict = {}
    best = None
    for a in alphas:
        in_region = a.alpha <= Fraction(1, n)
        if not in_region:
            skipped.append(str(a.alpha))
        for p in xy_grid:
            x, y = _grid_point(p)
            if in_region:
                for k in range(asm_mod.mu_max(n) + 1):
                    F = f_nk(a, n, k, x, y)
                    with workprec(precision_bits):
                        normed = F.value / (x + y) ** (n * (n - 1) - 2 * k)
                    where = {"alpha": str(a.alpha), "k": k, "x": hp_json(x), "y": hp_json(y)}
                    if best is None or normed < best[0]:
                        best = (normed, where)
                    if F.value <= 0:
                        report.counterexamples.append({**where, "value": hp_json(F.value)})
            for nk in DECOMPOSITIONS:
                chk = decomposition_check(a, *nk, x, y)
                prev = worst_identity.get(nk)
                if prev is None or chk.rel_diff > prev[0].rel_diff:
                    worst_identity[nk] = (chk, str(a.alpha))
    if best is not None:
        report.min_signed_value, report.witness = best
    report.params["skippedAlpha"] = skipped
    with workprec(precision_bits):
        tol = to_hp(identity_tol)
        for nk in DECOMPOSITIONS:
            chk, alpha = worst_identity[nk]
            report.checks.append({"identity": f"F{nk[0]}{nk[1]}", "alpha": alpha, "holds": bool(chk.rel_diff <= tol), **chk.to_dict()})
    return report


def theorem_threshold(n: int) -> Fraction:
    """min(1/n, 1/(n^2-n-6)_+), reading 1/0 as +infinity."""
    m = n * n - n - 6
    return Fraction(1, n) if m <= 0 else min(Fraction(1, n), Fraction(1, m))


def region_of(alpha: Fraction, n: int) -> str:
    if alpha <= theorem_threshold(n):
        return "positive"
    if alpha > Fraction(1, n) and (1 / alpha).denominator != 1:
        return "falsified"
    return "open"


def witness_order(alpha: Fraction) -> int:
    """Smallest k with U_1 ... U_k < 0, namely floor(1/alpha) + 1."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    return math.floor(1 / alpha) + 1


def scan_theorem(
    n: int,
    alpha_grid,
    xy_grid=None,
    route: str = "lascoux",
    precision_bits: int = hp.DEFAULT_PRECISION_BITS,
) -> ScanReport:
    """Sign of the derivative determinant over (alpha, y/x) with the expected region per alpha.

    ``positive``  alpha below the proved threshold: every sampled value must be > 0;
    ``falsified`` alpha > 1/n, not a reciprocal integer: the value at (1, 0+)
                  of order floor(1/alpha) + 1 <= n must be < 0;
    ``open``      anything else; recorded but not asserted.
    """
    if not 1 <= n <= 6:
        raise ValueError("n must lie in [1, 6]")
    if route not in ("lascoux", "asm"):
        raise ValueError("route must be lascoux or asm")
    xy_grid = list(xy_grid or ratio_grid())
    alphas = [as_alpha(v, precision_bits) for v in alpha_grid]
    report = ScanReport(
        "theorem",
        {"n": n, "route": route, "precisionBits": precision_bits, "threshold": str(theorem_threshold(n))},
        {"alpha": [str(a.alpha) for a in alphas], "xy": _grid_json(xy_grid)},
    )
    best = None
    for a in alphas:
        region = region_of(a.alpha, n)
        origin = None
        if region == "falsified":
            k = witness_order(a.alpha)
            origin = delta_at_origin(a, k)
            entry = {"alpha": str(a.alpha), "order": k, "deltaAtOrigin": hp_json(origin), "negative": bool(origin < 0)}
            report.checks.append(entry)
            if not origin < 0:
                report.counterexamples.append({"region": region, **entry})
        for p in xy_grid:
            x, y = _grid_point(p)
            value = delta(a, n, x, y, route).value
            with workprec(precision_bits):
                normed = value * (x + y) ** (n * (n + 1))
            sign = int(mpmath.sign(value))
            report.table.append(
                {
                    "alpha": str(a.alpha),
                    "log10_y_over_x": str(p[1]),
                    "region": region,
                    "sign": sign,
                    "normalized": plain_number(normed, 17),
                }
            )
            where = {"alpha": str(a.alpha), "x": hp_json(x), "y": hp_json(y), "region": region}
            if best is None or normed < best[0]:
                best = (normed, where)
            if region == "positive" and value <= 0:
                report.counterexamples.append({**where, "value": hp_json(value)})
    if best is not None:
        report.min_signed_value, report.witness = best
    return report


def band_minor_signs(a: AlphaParam, n: int):
    """Yield (sigma, b_sigma, band minor on sigma) over all increasing sigma."""
    a = as_alpha(a)
    M = band_matrix(n).evaluate(a)
    for sigma in combinations(range(1, 2 * n), n):
        with workprec(a.precision_bits):
            bm = hp.det([[row[s - 1] for s in sigma] for row in M])
        yield sigma, b_sigma(a, n, sigma), bm
