"""The kernel K(x, y) = 1 / (x^2 + 2 cos(pi alpha) x y + y^2) and its determinants."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
import numpy as np

from . import hp
from .chebyshev import AlphaParam, as_alpha
from .exceptions import CapExceededError, ConvergenceError
from .hp import DEFAULT_PRECISION_BITS, to_hp, workprec


class PointTuple(tuple):
    """A strictly increasing tuple of positive reals (stored as ``mpf``)."""

    def __new__(cls, values, precision_bits: int = DEFAULT_PRECISION_BITS):
        if isinstance(values, PointTuple):
            return values
        with workprec(precision_bits):
            pts = tuple(to_hp(v) for v in values)
        if not pts:
            raise ValueError("a point tuple needs at least one value")
        if pts[0] <= 0:
            raise ValueError("points must be strictly positive")
        for lo, hi in zip(pts, pts[1:]):
            if not lo < hi:
                raise ValueError("points must be strictly increasing")
        return super().__new__(cls, pts)


def _check_positive(x, y):
    if x <= 0 or y <= 0:
        raise ValueError(f"kernel arguments must be positive, got ({x}, {y})")


def eval_kernel(a: AlphaParam, x, y):
    """K_alpha(x, y) for x, y > 0."""
    a = as_alpha(a)
    with workprec(a.precision_bits):
        x, y = to_hp(x), to_hp(y)
        _check_positive(x, y)
        return 1 / (x * x + 2 * a.cos_pi_alpha * x * y + y * y)


def _kernel_matrix(a: AlphaParam, X, Y):
    c2 = 2 * a.cos_pi_alpha
    return [[1 / (x * x + c2 * x * y + y * y) for y in Y] for x in X]


def det_kernel_matrix(a: AlphaParam, X, Y):
    """det[K_alpha(x_i, y_j)] by fully pivoted elimination."""
    a = as_alpha(a)
    X, Y = PointTuple(X, a.precision_bits), PointTuple(Y, a.precision_bits)
    if len(X) != len(Y):
        raise ValueError(f"dimension mismatch: {len(X)} x-points vs {len(Y)} y-points")
    with workprec(a.precision_bits):
        return hp.det(_kernel_matrix(a, X, Y))


def cauchy_double_alternant(X, Y, precision_bits: int = DEFAULT_PRECISION_BITS):
    """Closed form of det[1 / (x_i^2 + y_j^2)]."""
    X, Y = PointTuple(X, precision_bits), PointTuple(Y, precision_bits)
    n = len(X)
    if len(Y) != n:
        raise ValueError("dimension mismatch")
    with workprec(precision_bits):
        num = mpmath.mpf(1)
        for i in range(n):
            for j in range(i + 1, n):
                num *= (Y[j] ** 2 - Y[i] ** 2) * (X[j] ** 2 - X[i] ** 2)
        den = mpmath.mpf(1)
        for x in X:
            for y in Y:
                den *= x * x + y * y
        return num / den


def permanent(matrix, precision_bits: int = DEFAULT_PRECISION_BITS):
    """Permanent via Ryser's formula; at most 20 x 20."""
    with workprec(precision_bits):
        return hp.permanent([[to_hp(v) for v in row] for row in matrix])


BORCHARDT_MAX_N = 12


def borchardt_check(X, Y, precision_bits: int = DEFAULT_PRECISION_BITS):
    """Both sides of det[1/(x+y)^2] = det[1/(x+y)] * perm[1/(x+y)].

    Returns ``(lhs, rhs)``; the caller decides what agreement means.
    """
    X, Y = PointTuple(X, precision_bits), PointTuple(Y, precision_bits)
    n = len(X)
    if len(Y) != n:
        raise ValueError("dimension mismatch")
    if n > BORCHARDT_MAX_N:
        raise CapExceededError(f"borchardt_check is capped at n = {BORCHARDT_MAX_N}")
    with workprec(precision_bits):
        cauchy = [[1 / (x + y) for y in Y] for x in X]
        lhs = hp.det([[v * v for v in row] for row in cauchy])
        rhs = hp.det(cauchy) * hp.permanent(cauchy)
        return lhs, rhs


def gram_determinant(a: AlphaParam, X, max_escalations: int = 3):
    """det[K_alpha(x_i, x_j)], recomputed at doubled precision until stable.

    Near alpha -> 1 the matrix is close to singular; the value returned is
    the one from the highest precision tried.
    """
    a = as_alpha(a)
    X = PointTuple(X, a.precision_bits)
    bits = a.precision_bits
    with workprec(bits):
        prev = hp.det(_kernel_matrix(a, X, X))
    for _ in range(max_escalations):
        bits *= 2
        a2 = a.with_precision(bits)
        with workprec(bits):
            cur = hp.det(_kernel_matrix(a2, X, X))
            if prev == cur or abs(cur - prev) <= abs(cur) * mpmath.mpf(2) ** (-a.precision_bits // 2):
                return cur
            prev = cur
    return prev


# --------------------------------------------------------------------------
# total-positivity scan


@dataclass
class TPReport:
    order: int
    samples: int
    min_minor: mpmath.mpf
    witness_x: PointTuple
    witness_y: PointTuple
    seed: int
    sign_pattern: list
    witnesses: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    @property
    def negative(self) -> bool:
        return self.min_minor < 0

    def to_dict(self) -> dict:
        from .serialize import hp_json

        return {
            "order": self.order,
            "samples": self.samples,
            "minMinor": hp_json(self.min_minor),
            "witnessX": [hp_json(v) for v in self.witness_x],
            "witnessY": [hp_json(v) for v in self.witness_y],
            "seed": self.seed,
            "signPattern": [
                {"order": m, "minMinor": hp_json(v)} for m, v in enumerate(self.sign_pattern, start=1)
            ],
            "params": self.params,
        }


SCAN_MODES = ("log-uniform", "clustered", "mixed")


def _draw_tuple(rng, m, log_range, mode, cluster_bits, bits):
    lo, hi = log_range
    if mode == "clustered":
        # geometric progressions with ratio 1 + 2^-u: the confluent regime
        bx, by = rng.uniform(lo, hi, size=2)
        u = rng.uniform(*cluster_bits)
        with workprec(bits + math.ceil(m * (m - 1) * u) + 64):
            ratio = 1 + mpmath.mpf(2) ** (-mpmath.mpf(u))
            X = [mpmath.exp(mpmath.mpf(bx)) * ratio**i for i in range(m)]
            Y = [mpmath.exp(mpmath.mpf(by)) * ratio**i for i in range(m)]
        return X, Y
    while True:
        ux = np.sort(rng.uniform(lo, hi, size=m))
        uy = np.sort(rng.uniform(lo, hi, size=m))
        if np.all(np.diff(ux) > 0) and np.all(np.diff(uy) > 0):
            return [mpmath.mpf(math.exp(v)) for v in ux], [mpmath.mpf(math.exp(v)) for v in uy]


def _guard_bits(points, m):
    """Extra precision covering the Vandermonde-type cancellation of nearly confluent tuples."""
    if m < 2:
        return 32
    worst = 0.0
    for pts in points:
        scale = float(pts[-1])
        gap = min(float(b - a) for a, b in zip(pts, pts[1:]))
        worst = max(worst, math.log2(scale / gap))
    return math.ceil(m * (m - 1) * max(worst, 0.0)) + 64


def tp_scan(
    a: AlphaParam,
    max_order: int,
    samples_per_order: int,
    seed: int = 42,
    log_range=(-4.0, 4.0),
    mode: str = "mixed",
    cluster_bits=(1.0, 30.0),
) -> TPReport:
    """Randomised search for negative minors det[K(x_i, y_j)], orders 1..max_order.

    Sample ``s`` of order ``m`` draws from its own generator seeded with
    ``(seed, m, s)``, so the report does not depend on evaluation order.
    In ``mixed`` mode even samples are log-uniform and odd ones clustered.
    """
    if max_order < 1 or samples_per_order < 1:
        raise ValueError("max_order and samples_per_order must be positive")
    if mode not in SCAN_MODES:
        raise ValueError(f"mode must be one of {SCAN_MODES}")
    a = as_alpha(a)
    bits = a.precision_bits
    seed_key = seed & 0xFFFFFFFFFFFFFFFF
    per_order = []
    witnesses = {}
    best = None
    for m in range(1, max_order + 1):
        order_min = None
        for s in range(samples_per_order):
            rng = np.random.default_rng([seed_key, m, s])
            sample_mode = mode if mode != "mixed" else ("log-uniform", "clustered")[s % 2]
            X, Y = _draw_tuple(rng, m, log_range, sample_mode, cluster_bits, bits)
            local_bits = bits + _guard_bits((X, Y), m)
            a_local = a.with_precision(local_bits) if local_bits != bits else a
            with workprec(local_bits):
                minor = hp.det(_kernel_matrix(a_local, X, Y))
            if order_min is None or minor < order_min[0]:
                order_min = (minor, X, Y)
        per_order.append(order_min[0])
        witnesses[m] = (PointTuple(order_min[1], bits), PointTuple(order_min[2], bits))
        if best is None or order_min[0] < best[0]:
            best = (order_min[0], m)
    wx, wy = witnesses[best[1]]
    return TPReport(
        order=best[1],
        samples=max_order * samples_per_order,
        min_minor=best[0],
        witness_x=wx,
        witness_y=wy,
        seed=seed,
        sign_pattern=per_order,
        witnesses=witnesses,
        params={
            "alpha": str(a.alpha),
            "maxOrder": max_order,
            "samplesPerOrder": samples_per_order,
            "logRange": list(log_range),
            "mode": mode,
            "clusterBits": list(cluster_bits),
            "precisionBits": bits,
        },
    )


# --------------------------------------------------------------------------
# generalized logistic density


def eval_logistic(a: AlphaParam, x):
    """g_alpha(x) = sin(pi alpha) / (2 pi alpha (cosh x + cos pi alpha))."""
    a = as_alpha(a)
    with workprec(a.precision_bits):
        x = to_hp(x)
        if a.alpha == 0:
            weight = 1 / (2 * mpmath.pi)
        else:
            weight = a.sin_pi_alpha / (2 * mpmath.pi * a.value)
        return weight / (mpmath.cosh(x) + a.cos_pi_alpha)


def _adaptive_simpson(f, lo, hi, tol, max_depth=60):
    def simpson(a, fa, b, fb):
        m = 0.5 * (a + b)
        fm = f(m)
        return m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    total = 0.0
    fa, fb = f(lo), f(hi)
    m, fm, whole = simpson(lo, fa, hi, fb)
    stack = [(lo, fa, hi, fb, m, fm, whole, tol, 0)]
    while stack:
        a, fa, b, fb, m, fm, whole, eps, depth = stack.pop()
        lm, flm, left = simpson(a, fa, m, fm)
        rm, frm, right = simpson(m, fm, b, fb)
        delta = left + right - whole
        if abs(delta) <= 15.0 * eps:
            total += left + right + delta / 15.0
        elif depth >= max_depth:
            raise ConvergenceError(f"adaptive Simpson did not converge on [{a}, {b}]")
        else:
            stack.append((a, fa, m, fm, lm, flm, left, eps / 2, depth + 1))
            stack.append((m, fm, b, fb, rm, frm, right, eps / 2, depth + 1))
    return total


def logistic_mgf_check(a: AlphaParam, s, tol: float = 1e-12):
    """Quadrature of int e^{sx} g_alpha(x) dx against sin(pi alpha s) / (alpha sin(pi s)).

    Returns ``(numeric, closed)``. The quadrature runs in double precision
    over ``[-T, T]`` with T large enough that the exponential tail is below
    ``tol``.
    """
    a = as_alpha(a)
    s = float(s)
    if not abs(s) < 1:
        raise ValueError("the transform identity needs |s| < 1")
    if not 0 < a.alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    al = float(a.alpha)
    c = math.cos(math.pi * al)
    weight = math.sin(math.pi * al) / (2 * math.pi * al)
    decay = 1 - abs(s)
    # |g(x)| <= 4 weight e^{-|x|} once e^{|x|} >= 4, hence this tail bound
    tail_T = math.log(8 * weight / (tol * decay)) / decay
    T = max(60 + 10 / decay, tail_T)

    def integrand(x):
        ax = abs(x)
        e = math.exp(-ax)
        return weight * 2.0 * math.exp(s * x - ax) / (1.0 + 2.0 * c * e + e * e)

    pieces = 64
    edges = np.linspace(-T, T, pieces + 1)
    numeric = sum(_adaptive_simpson(integrand, float(lo), float(hi), tol / pieces) for lo, hi in zip(edges, edges[1:]))
    with workprec(a.precision_bits):
        if s == 0:
            closed = mpmath.mpf(1)
        else:
            sm = to_hp(s)
            closed = mpmath.sinpi(a.value * sm) / (a.value * mpmath.sinpi(sm))
        return mpmath.mpf(numeric), closed
