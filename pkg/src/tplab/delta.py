"""The derivative determinant det[d^{i+j-2} K / dx^{i-1} dy^{j-1}] by five routes.

``fd``        confluent limit of the kernel determinant over Vandermondes;
``wronskian`` Wronskian in x of the y-derivatives T_0, ..., T_{n-1};
``schur``     the Schur-function power series in -y/x;
``lascoux``   the separated rectangular-matrix product A_n(x) B_n(y);
``asm``       the alternating-sign-matrix sum.

The first two are numerical (finite differences + Richardson) and report an
error estimate; the last three are exact up to rounding and truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath

from . import asm as asm_mod
from . import hp
from .chebyshev import AlphaParam, as_alpha, cheb_u, superfactorial, v_product
from .exceptions import CapExceededError, ConvergenceError
from .hp import to_hp, workprec

ROUTES = ("fd", "wronskian", "schur", "lascoux", "asm")
EXACT_ROUTES = ("schur", "lascoux", "asm")


@dataclass
class RouteResult:
    value: mpmath.mpf
    route: str
    error_estimate: mpmath.mpf
    meta: dict = field(default_factory=dict)


class Partition(tuple):
    """Weakly decreasing tuple of positive parts."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts if p)
        if any(p < 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {parts}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    def padded(self, n: int) -> tuple:
        if len(self) > n:
            raise ValueError(f"{self} has more than {n} parts")
        return tuple(self) + (0,) * (n - len(self))

    def increasing(self, n: int) -> tuple:
        """mu_1 <= ... <= mu_n view used by the Schur series."""
        return self.padded(n)[::-1]


def partitions_of(k: int, max_parts: int):
    """Partitions of ``k`` into at most ``max_parts`` parts, largest first part first."""
    if k < 0:
        raise ValueError("k must be non-negative")

    def rec(remaining, cap, slots):
        if remaining == 0:
            yield ()
            return
        if slots == 0:
            return
        for first in range(min(remaining, cap), 0, -1):
            if first * slots < remaining:
                break
            for rest in rec(remaining - first, first, slots - 1):
                yield (first,) + rest

    for parts in rec(k, k, max_parts):
        yield Partition(parts)


def schur_dim(lam, n: int) -> int:
    """s_lambda(1, ..., 1) with n ones, by the product formula."""
    parts = Partition(lam).padded(n)
    num = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= parts[i] - parts[j] + j - i
    q, r = divmod(num, superfactorial(n - 1))
    assert r == 0
    return q


# --------------------------------------------------------------------------
# T kernels


T_MAX_R = 40


def t_kernel(a: AlphaParam, r: int, x, y):
    """T_{alpha,r}(x, y) = d^r K / dy^r, as the finite sums in K and QLin = y + x cos(pi alpha).

    ``y = 0`` is allowed and gives the boundary value at (x, 0+).
    """
    if r < 0 or r > T_MAX_R:
        raise ValueError(f"r must lie in [0, {T_MAX_R}]")
    a = as_alpha(a)
    with workprec(a.precision_bits):
        x, y = to_hp(x), to_hp(y)
        if x <= 0 or y < 0:
            raise ValueError("t_kernel needs x > 0 and y >= 0")
        c = a.cos_pi_alpha
        K = 1 / (x * x + 2 * c * x * y + y * y)
        Q = y + x * c
        four_q2 = 4 * Q * Q
        p, odd = divmod(r, 2)
        total = mpmath.mpf(0)
        if not odd:
            for k in range(p + 1):
                total += (-1) ** (p - k) * math.comb(p + k, p - k) * four_q2**k * K ** (p + k + 1)
            return math.factorial(r) * total
        for k in range(p + 1):
            total += (-1) ** (p + 1 - k) * math.comb(p + 1 + k, p - k) * four_q2**k * K ** (p + k + 2)
        return 2 * math.factorial(r) * Q * total


def _x_derivative(a: AlphaParam, r: int, order: int, x, y, levels: int = 12):
    """order-th x-derivative of T_r at (x, y), with the precision raised to absorb the stencil."""
    h0 = to_hp(x) / 16
    extra = order * (levels + 4 + max(0, math.ceil(-math.log2(float(h0))))) + 64
    a_hi = a.with_precision(a.precision_bits + extra)
    with workprec(a_hi.precision_bits):
        xh, yh = to_hp(x), to_hp(y)
        value, err = hp.central_derivative(lambda t: t_kernel(a_hi, r, t, yh), xh, order, xh / 16, levels)
    with workprec(a.precision_bits):
        return +value, +err


def t_xderiv_check(a: AlphaParam, r: int, j: int):
    """(finite-difference, closed-form) j-th x-derivative of T_r at (1, 0+)."""
    if r + j > 30:
        raise ValueError("r + j must not exceed 30")
    if j < 1:
        raise ValueError("j must be positive")
    a = as_alpha(a)
    fd, _ = _x_derivative(a, r, j, 1, 0)
    with workprec(a.precision_bits):
        factor = math.factorial(r + j + 1) // math.factorial(r + 1)
        closed = (-1) ** j * factor * t_kernel(a, r, 1, 0)
    return fd, closed


# --------------------------------------------------------------------------
# Lascoux matrices


def lascoux_a_matrix(n: int, x=1):
    """A_n(x): n x (2n-1), entry (i, k) = C(n+k-1-i, k-i) x^(k-i)."""
    return [
        [math.comb(n + k - i - 1, k - i) * x ** (k - i) if k >= i else 0 for k in range(2 * n - 1)]
        for i in range(n)
    ]


def lascoux_b_matrix(a: AlphaParam, n: int, y=1):
    """B_n(y): (2n-1) x n, entry (k, j) = C(n, n-k+j-1) U_{k+2-2j} y^(n-k+j-1) (1-based)."""
    a = as_alpha(a)
    with workprec(a.precision_bits):
        rows = []
        for k in range(1, 2 * n):
            row = []
            for j in range(1, n + 1):
                e = n - k + j - 1
                if 0 <= e <= n:
                    row.append(math.comb(n, e) * cheb_u(a, k + 2 - 2 * j) * to_hp(y) ** e)
                else:
                    row.append(mpmath.mpf(0))
            rows.append(row)
        return rows


def _check_sigma(n: int, sigma):
    sigma = tuple(int(s) for s in sigma)
    if len(sigma) != n or any(b <= a for a, b in zip(sigma, sigma[1:])) or sigma[0] < 1 or sigma[-1] > 2 * n - 1:
        raise ValueError(f"sigma must be increasing in [1, {2 * n - 1}] with {n} entries, got {sigma}")
    return sigma


def a_sigma(n: int, sigma) -> int:
    """Minor of A_n(1) on columns sigma, by the Gessel-Viennot product formula."""
    sigma = _check_sigma(n, sigma)
    num = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= sigma[j] - sigma[i]
    q, r = divmod(num, superfactorial(n - 1))
    assert r == 0
    return q


def a_sigma_minor(n: int, sigma) -> int:
    """Same minor extracted directly from the integer matrix A_n(1)."""
    sigma = _check_sigma(n, sigma)
    A = lascoux_a_matrix(n)
    return hp.det_int([[row[s - 1] for s in sigma] for row in A])


def b_sigma(a: AlphaParam, n: int, sigma):
    """Minor of B_n(1) on rows sigma."""
    sigma = _check_sigma(n, sigma)
    a = as_alpha(a)
    B = lascoux_b_matrix(a, n)
    with workprec(a.precision_bits):
        return hp.det([B[s - 1] for s in sigma])


def reflect_sigma(n: int, sigma) -> tuple:
    """sigma~ : i -> 2n - sigma_{n+1-i}."""
    sigma = _check_sigma(n, sigma)
    return tuple(2 * n - s for s in reversed(sigma))


# --------------------------------------------------------------------------
# routes


def _prefactor(a: AlphaParam, n: int, x, y):
    K = 1 / (x * x + 2 * a.cos_pi_alpha * x * y + y * y)
    return superfactorial(n - 1) ** 2 * K ** (n * n)


def _route_lascoux(a, n, x, y):
    a_hi = a.with_precision(a.precision_bits + 32)
    with workprec(a_hi.precision_bits):
        A = lascoux_a_matrix(n, x)
        B = lascoux_b_matrix(a_hi, n, y)
        prod = [[sum(A[i][k] * B[k][j] for k in range(2 * n - 1)) for j in range(n)] for i in range(n)]
        value = _prefactor(a_hi, n, x, y) * hp.det(prod)
    with workprec(a.precision_bits):
        value = +value
        return RouteResult(value, "lascoux", abs(value) * mpmath.mpf(2) ** (-a.precision_bits + 8))


def _route_asm(a, n, x, y):
    if n > asm_mod.PROPP_MAX_N:
        raise CapExceededError(f"asm route is capped at n = {asm_mod.PROPP_MAX_N}")
    groups = asm_mod.group_by_stats(n)
    a_hi = a.with_precision(a.precision_bits + 32)
    with workprec(a_hi.precision_bits):
        w = a_hi.omega
        Q = w * x + mpmath.conj(w) * y
        Qb = mpmath.conj(Q)
        pmix = 4 * a_hi.sin_pi_alpha**2 * x * y
        top = n * (n - 1)
        total = mpmath.mpc(0)
        for (mu, nu), count in groups.items():
            total += count * pmix**mu * Q ** (2 * nu) * Qb ** (top - 2 * nu - 2 * mu)
        pre = _prefactor(a_hi, n, x, y)
        value, imag = pre * total.real, pre * total.imag
    with workprec(a.precision_bits):
        value, imag = +value, abs(imag)
        if value and imag > abs(value) * mpmath.mpf(2) ** (-a.precision_bits // 2):
            raise ConvergenceError(f"asm sum is not real: |Im| = {imag}, Re = {value}")
        err = imag + abs(value) * mpmath.mpf(2) ** (-a.precision_bits + 8)
        return RouteResult(value, "asm", err, {"imag_residue": imag, "groups": len(groups)})


FD_LEVELS = 7


def _route_fd(a, n, x, y):
    """Confluent limit with eps_j = min(x, y) 2^(-8-4j) and Richardson in eps."""
    bits = a.precision_bits
    with workprec(bits):
        scale = min(x, y)
        spread = max(0.0, math.log2(float(max(x, y) / scale)))
    values = []
    eps_list = []
    for j in range(FD_LEVELS):
        e_bits = 8 + 4 * j
        local = bits + math.ceil(n * (n - 1) * (e_bits + spread + 2)) + 64
        a_hi = a.with_precision(local)
        with workprec(local):
            eps = to_hp(scale) * mpmath.mpf(2) ** (-e_bits)
            X = [to_hp(x) + i * eps for i in range(n)]
            Y = [to_hp(y) + i * eps for i in range(n)]
            c2 = 2 * a_hi.cos_pi_alpha
            D = hp.det([[1 / (u * u + c2 * u * v + v * v) for v in Y] for u in X])
            # the Vandermondes of arithmetic progressions are sf(n-1) eps^C(n,2) each
            values.append(D / eps ** (n * (n - 1)))
            eps_list.append(eps)
    with workprec(bits + 64):
        order = 1
        d1, d2 = abs(values[0] - values[1]), abs(values[1] - values[2])
        if d1 and d2:
            order = max(1, round(math.log(float(d1 / d2)) / math.log(16)))
        powers = list(range(order, order + FD_LEVELS))
        best, err = hp.richardson(values, 16, powers)
        if n > 1 and err > d1:
            raise ConvergenceError("fd extrapolation is not contracting")
    with workprec(bits):
        best = +best
        err = +err + abs(best) * mpmath.mpf(2) ** (-bits + 8)
        return RouteResult(best, "fd", err, {"eps": [hp.hex_float(e) for e in eps_list], "leading_order": order})


def _route_wronskian(a, n, x, y, levels: int = 12):
    bits = a.precision_bits
    W = [[None] * n for _ in range(n)]
    E = [[None] * n for _ in range(n)]
    for j in range(n):
        for i in range(n):
            W[i][j], E[i][j] = _x_derivative(a, j, i, x, y, levels)
    with workprec(bits + 32):
        value = hp.det(W)
        err = mpmath.mpf(0)
        if n == 1:
            err = E[0][0]
        else:
            for i in range(n):
                for j in range(n):
                    if E[i][j]:
                        minor = [[W[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
                        err += abs(hp.det(minor)) * E[i][j]
    with workprec(bits):
        value = +value
        err = +err + abs(value) * mpmath.mpf(2) ** (-bits + 8)
        return RouteResult(value, "wronskian", err, {"fd_levels": levels})


# ---- schur


SCHUR_MAX_SHELLS = 4000
SCHUR_SERIES_BUDGET = 20000


def _vandermonde_sq(mu):
    n = len(mu)
    out = 1
    for i in range(n):
        for j in range(i + 1, n):
            d = mu[j] - mu[i] + j - i
            out *= d * d
    return out


def _schur_series(a, n, x, y, tol_bits):
    """Shell-by-shell sum over partitions; returns (series value, error bound, shells).

    The stopping rule looks at shells of the majorant |U_m| <= min(m, 1/sin(pi alpha)),
    whose ratios decrease monotonically, rather than at the oscillating shells
    themselves.
    """
    r = y / x
    t = -r
    U = {}

    def u(k):
        if k not in U:
            U[k] = cheb_u(a, k)
        return U[k]

    inv_sin = 1 / abs(a.sin_pi_alpha) if a.alpha else None

    def u_bound(k):
        return mpmath.mpf(k) if inv_sin is None else min(mpmath.mpf(k), inv_sin)

    total = mpmath.mpf(0)
    prev_bound = None
    tol = mpmath.mpf(2) ** (-tol_bits)
    rounding = mpmath.mpf(0)
    for k in range(SCHUR_MAX_SHELLS):
        shell = mpmath.mpf(0)
        shell_bound = mpmath.mpf(0)
        for lam in partitions_of(k, n):
            mu = lam.increasing(n)
            w = mpmath.mpf(1)
            wb = mpmath.mpf(1)
            for i in range(n):
                w *= u(i + 1 + mu[i])
                wb *= u_bound(i + 1 + mu[i])
            v2 = _vandermonde_sq(mu)
            shell += w * v2
            shell_bound += wb * v2
        rk = r**k
        total += shell * t**k
        cur_bound = shell_bound * rk
        rounding += cur_bound
        if k >= 4 * n and prev_bound:
            rho = cur_bound / prev_bound
            if rho < 1:
                tail = cur_bound * rho / (1 - rho)
                if tail <= tol * max(abs(total), tol * rounding):
                    return total, tail + rounding * mpmath.mpf(2) ** (-mpmath.mp.prec + 4), k + 1
        prev_bound = cur_bound
    raise ConvergenceError(f"Schur series did not reach tolerance within {SCHUR_MAX_SHELLS} shells")


def _theta_powers_closed(c, t, m_max):
    """theta^m G(t), m = 0..m_max, for G(t) = t / (1 - 2ct + t^2) and theta = t d/dt.

    theta^m G = N_m / D^(m+1) with N_{m+1} = theta(N_m) D - (m+1) N_m theta(D).
    """
    D = [mpmath.mpf(1), -2 * c, mpmath.mpf(1)]
    thetaD = [mpmath.mpf(0), -2 * c, mpmath.mpf(2)]

    def mul(p, q):
        out = [mpmath.mpf(0)] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            for j, b in enumerate(q):
                out[i + j] += a * b
        return out

    def theta(p):
        return [i * v for i, v in enumerate(p)]

    def evaluate(p):
        acc = mpmath.mpf(0)
        for v in reversed(p):
            acc = acc * t + v
        return acc

    N = [mpmath.mpf(0), mpmath.mpf(1)]
    d_val = evaluate(D)
    out = []
    for m in range(m_max + 1):
        out.append(evaluate(N) / d_val ** (m + 1))
        a_term = mul(theta(N), D)
        b_term = mul(N, thetaD)
        size = max(len(a_term), len(b_term))
        a_term += [mpmath.mpf(0)] * (size - len(a_term))
        b_term += [mpmath.mpf(0)] * (size - len(b_term))
        N = [p - (m + 1) * q for p, q in zip(a_term, b_term)]
    return out


def _theta_powers_series(a, r, t, m_max, tol):
    """Truncated sums sum_l l^m U_l t^l, m = 0..m_max, with a geometric tail bound."""
    sums = [mpmath.mpf(0)] * (m_max + 1)
    two_c = 2 * a.cos_pi_alpha
    u_prev, u_cur = mpmath.mpf(0), mpmath.mpf(1)
    tl = t
    l = 1
    while True:
        base = u_cur * tl
        lp = mpmath.mpf(1)
        for m in range(m_max + 1):
            sums[m] += lp * base
            lp *= l
        # |U_l| <= l, so the remaining tail is dominated by sum l^(m_max+1) r^l
        L = l + 1
        rho = (mpmath.mpf(L + 1) / L) ** (m_max + 1) * r
        if rho < 1:
            tail = mpmath.mpf(L) ** (m_max + 1) * r**L / (1 - rho)
            if tail < tol:
                return sums, tail, l
        u_prev, u_cur = u_cur, two_c * u_cur - u_prev
        tl *= t
        l += 1
        if l > 10**6:
            raise ConvergenceError("moment series did not converge")


def _schur_moments(a, n, x, y, bits, closed_above):
    """Cauchy-Binet resummation of the Schur series.

    With l_i = mu_i + i, the shell sums become a sum over strictly increasing
    l of prod U_{l_i} t^{l_i} V(l)^2, which by Cauchy-Binet is det[M_{ab}]
    with M_{ab} = sum_l l^(a+b) U_l t^l. Those moment sums are summed as
    series for y/x <= closed_above and through the rational generating
    function t / (1 - 2ct + t^2) beyond (including the diagonal).
    """
    r = y / x
    t = -r
    m_max = 2 * n - 2
    if r > closed_above:
        moments = _theta_powers_closed(a.cos_pi_alpha, t, m_max)
        trunc, terms, how = mpmath.mpf(0), 0, "closed-form"
    else:
        moments, trunc, terms = _theta_powers_series(a, r, t, m_max, mpmath.mpf(2) ** (-bits))
        how = "series"
    M = [[moments[i + j] for j in range(n)] for i in range(n)]
    value = hp.det(M) / t ** (n * (n + 1) // 2)
    return value, trunc, terms, how


def _estimate_series_terms(n, r, bits):
    """Rough count of partition terms the shell-by-shell Schur sum would need."""
    if r <= 0:
        return 1
    deg = n * (n - 1) + n
    k = 4 * n
    while k < SCHUR_MAX_SHELLS and deg * math.log(k + 1) + k * math.log(r) > -bits * math.log(2):
        k += 1
    return (k + 1) ** n / (math.factorial(n) ** 2)


def _route_schur(a, n, x, y, method="auto", closed_above=0.9):
    bits = a.precision_bits
    with workprec(bits):
        if y > x:
            x, y = y, x
        r = float(y / x)
    if method == "auto":
        method = "series" if _estimate_series_terms(n, r, bits) <= SCHUR_SERIES_BUDGET else "moments"
    if method == "series":
        if r >= 1:
            raise ConvergenceError("the Schur series diverges on the diagonal y = x")
        local = bits + 64
        a_hi = a.with_precision(local)
        with workprec(local):
            series, err, shells = _schur_series(a_hi, n, to_hp(x), to_hp(y), bits + 8)
            pre = superfactorial(0) * to_hp(x) ** (-n * (n + 1))
            value, err = pre * series, pre * err
        meta = {"method": "series", "shells": shells}
    elif method == "moments":
        bump = n * (n + 1) // 2 * max(0, math.ceil(-math.log2(max(r, 1e-300)))) + 32 * n + 64
        results = []
        for extra in (0, 64):
            local = bits + bump + extra
            a_hi = a.with_precision(local)
            with workprec(local):
                xs, ys = to_hp(x), to_hp(y)
                v, trunc, terms, how = _schur_moments(a_hi, n, xs, ys, local, closed_above)
                results.append(v * xs ** (-n * (n + 1)))
        with workprec(bits + 64):
            value = results[1]
            err = abs(results[1] - results[0])
        meta = {"method": "moments", "moment_sums": how, "terms": terms}
    else:
        raise ValueError(f"unknown schur method {method!r}")
    with workprec(bits):
        value = +value
        err = +err + abs(value) * mpmath.mpf(2) ** (-bits + 8)
        return RouteResult(value, "schur", err, meta)


def delta(a: AlphaParam, n: int, x, y, route: str = "lascoux", **options) -> RouteResult:
    """Derivative determinant at (x, y) through the requested route."""
    if n < 1:
        raise ValueError("n must be positive")
    if route not in ROUTES:
        raise ValueError(f"route must be one of {ROUTES}")
    a = as_alpha(a)
    with workprec(a.precision_bits):
        xh, yh = to_hp(x), to_hp(y)
        if xh <= 0 or yh <= 0:
            raise ValueError("delta needs x, y > 0")
    if route == "lascoux":
        return _route_lascoux(a, n, xh, yh)
    if route == "asm":
        return _route_asm(a, n, xh, yh)
    if route == "fd":
        return _route_fd(a, n, xh, yh)
    if route == "wronskian":
        return _route_wronskian(a, n, xh, yh, **options)
    return _route_schur(a, n, xh, yh, **options)


def delta_all(a: AlphaParam, n: int, x, y, routes=ROUTES) -> dict:
    return {r: delta(a, n, x, y, r) for r in routes}


def delta_at_origin(a: AlphaParam, n: int):
    """Closed form at (1, 0+): sf(n-1)^2 V_n."""
    if n < 1:
        raise ValueError("n must be positive")
    a = as_alpha(a)
    with workprec(a.precision_bits):
        return superfactorial(n - 1) ** 2 * v_product(a, n)


@lru_cache(maxsize=None)
def _mu_counts(n: int) -> tuple:
    counts = [0] * (asm_mod.mu_max(n) + 1)
    for (mu, _nu), c in asm_mod.group_by_stats(n).items():
        counts[mu] += c
    return tuple(counts)


def delta_diagonal(a: AlphaParam, n: int, x):
    """Closed form on the diagonal y = x from the ASM counts by number of -1 entries."""
    if n > asm_mod.PROPP_MAX_N:
        raise CapExceededError(f"delta_diagonal is capped at n = {asm_mod.PROPP_MAX_N}")
    a = as_alpha(a)
    with workprec(a.precision_bits):
        x = to_hp(x)
        if x <= 0:
            raise ValueError("x must be positive")
        cos_half, sin_half = a.omega.real, a.omega.imag
        weight = 4 * sin_half**2
        total = mpmath.mpf(0)
        for k, c in enumerate(_mu_counts(n)):
            total += c * weight**k
        return superfactorial(n - 1) ** 2 * total / (2 * x * cos_half) ** (n * (n + 1))
