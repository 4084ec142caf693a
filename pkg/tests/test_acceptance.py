"""Exit criteria, one test per criterion, each printing a single PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the lines are printed
even when output capture is on.
"""

from __future__ import annotations

import cmath
import itertools
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from oracles import asm_product_formula, inv_brute, j_brute, quotient_coefficients, rotate_anticlockwise
from tplab import asm, conjectures as cj, delta, kernel
from tplab.chebyshev import as_alpha, cheb_u, q_factorial, superfactorial

F = Fraction
BITS = 256


@pytest.fixture
def verdict(capsys):
    """Collects failures for one criterion and prints its line at the end."""

    class Verdict:
        def __init__(self):
            self.failures = []
            self.checked = 0

        def check(self, ok, what):
            self.checked += 1
            if not ok:
                self.failures.append(what)

        def finish(self, number, title):
            status = "PASS" if not self.failures else "FAIL"
            detail = f"{self.checked} checks"
            if self.failures:
                shown = "; ".join(self.failures[:3])
                more = f" (+{len(self.failures) - 3} more)" if len(self.failures) > 3 else ""
                detail += f", {len(self.failures)} failed: {shown}{more}"
            with capsys.disabled():
                print(f"\nCRITERION {number}: {status} - {title} [{detail}]")
            assert not self.failures, f"criterion {number}: " + "; ".join(self.failures)

    return Verdict()


@pytest.fixture(autouse=True)
def _oracle_precision():
    with mpmath.workprec(BITS + 64):
        yield


def hp(v):
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpf(v)


def rel(a, b):
    a, b = hp(a) if isinstance(a, Fraction) else a, hp(b) if isinstance(b, Fraction) else b
    if a == b:
        return mpmath.mpf(0)
    return abs(a - b) / max(abs(a), abs(b))


def seeded_points(count, seed, lo=0.1, hi=0.9):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        x = mpmath.mpf(float(np.exp(rng.uniform(-1.5, 1.5))))
        out.append((x, x * mpmath.mpf(float(rng.uniform(lo, hi)))))
    return out


# ---------------------------------------------------------------------------


def test_criterion_01_closed_form_anchor(verdict):
    """Delta(1, y) at y = 1e-6, one Richardson step in y, against sf(n-1)^2 V_n.

    Where V_n vanishes exactly (alpha = 1/3, n >= 3) the relative error is
    measured against the scale sf(n-1)^2.
    """
    y = mpmath.mpf(10) ** -6
    for n in range(2, 6):
        for alpha in (F(1, 20), F(3, 20), F(1, 3), F(9, 20)):
            target = delta.delta_at_origin(alpha, n)
            scale = max(abs(target), mpmath.mpf(superfactorial(n - 1) ** 2))
            for route in delta.EXACT_ROUTES:
                v1 = delta.delta(alpha, n, 1, y, route=route).value
                v2 = delta.delta(alpha, n, 1, y / 2, route=route).value
                extrap = 2 * v2 - v1
                err = abs(extrap - target) / scale
                verdict.check(err <= 1e-6, f"n={n} alpha={alpha} {route}: {mpmath.nstr(err, 3)}")
    verdict.finish(1, "closed form at (1, 0+) for exact routes")


def test_criterion_02_route_agreement(verdict):
    alphas = (F(1, 20), F(3, 20), F(1, 3), F(9, 20), F(3, 5))
    for n in range(1, 6):
        for ai, alpha in enumerate(alphas):
            for x, y in seeded_points(20, [2, n, ai]):
                res = delta.delta_all(alpha, n, x, y)
                exact = [res[r].value for r in delta.EXACT_ROUTES]
                worst = max(rel(a, b) for a, b in itertools.combinations(exact, 2))
                verdict.check(worst <= 1e-20, f"n={n} alpha={alpha} exact spread {mpmath.nstr(worst, 3)}")
                ref = res["lascoux"].value
                for route in ("fd", "wronskian"):
                    r = res[route]
                    within = abs(r.value - ref) <= r.error_estimate
                    small = r.error_estimate <= 1e-8 * abs(ref)
                    verdict.check(within and small, f"n={n} alpha={alpha} {route} gap {mpmath.nstr(abs(r.value - ref), 3)} est {mpmath.nstr(r.error_estimate, 3)}")
    verdict.finish(2, "cross-route agreement")


def test_criterion_03_symbolic_anchor(verdict):
    a = F(1, 2)
    pts = seeded_points(10, 3, 0.05, 3.0)
    for x, y in pts:
        expected = 4 * x * y / (x * x + y * y) ** 4
        for route in delta.EXACT_ROUTES:
            d = rel(delta.delta(a, 2, x, y, route=route).value, expected)
            verdict.check(d <= 1e-25, f"{route} at ({mpmath.nstr(x, 5)}, {mpmath.nstr(y, 5)}): {mpmath.nstr(d, 3)}")
        d = rel(delta.delta_diagonal(a, 2, x), 1 / (4 * x**6))
        verdict.check(d <= 1e-25, f"diagonal at {mpmath.nstr(x, 5)}: {mpmath.nstr(d, 3)}")
    verdict.finish(3, "4xy/(x^2+y^2)^4 at alpha = 1/2")


def test_criterion_04_falsification_witness(verdict):
    for n, alpha in ((3, F(2, 5)), (4, F(3, 10)), (5, F(11, 50))):
        origin = delta.delta_at_origin(alpha, n)
        verdict.check(origin < 0, f"n={n} alpha={alpha}: value at origin {mpmath.nstr(origin, 5)}")
        rep = kernel.tp_scan(alpha, n, 40, seed=42, mode="clustered")
        order_n = rep.sign_pattern[n - 1]
        verdict.check(order_n < 0, f"n={n} alpha={alpha}: min order-{n} minor {mpmath.nstr(order_n, 5)}")
        # the certificate replays
        replay = kernel.det_kernel_matrix(alpha, *rep.witnesses[n])
        verdict.check(replay < 0, f"n={n} alpha={alpha}: witness replay {mpmath.nstr(replay, 5)}")
    verdict.finish(4, "negative value at origin and a negative order-n minor")


def test_criterion_05_positive_scans(verdict):
    for alpha in (F(0), F(1, 2), F(1, 3), F(1, 4)):
        rep = kernel.tp_scan(alpha, 5, 200, seed=42)
        verdict.check(rep.min_minor > 0, f"alpha={alpha}: min minor {mpmath.nstr(rep.min_minor, 5)} at order {rep.order}")
    verdict.finish(5, "no negative minor up to order 5 at alpha in {0, 1/2, 1/3, 1/4}")


def test_criterion_06_classical_identities(verdict):
    rng = np.random.default_rng(6)
    for n in range(1, 6):
        for _ in range(10):
            X = sorted(set(float(v) for v in np.round(np.exp(rng.uniform(-2, 2, size=n)), 8)))
            Y = sorted(set(float(v) for v in np.round(np.exp(rng.uniform(-2, 2, size=n)), 8)))
            if len(X) < n or len(Y) < n:
                continue
            d = rel(kernel.det_kernel_matrix(F(1, 2), X, Y), kernel.cauchy_double_alternant(X, Y))
            verdict.check(d <= 1e-20, f"Cauchy n={n}: {mpmath.nstr(d, 3)}")
            lhs, rhs = kernel.borchardt_check(X, Y)
            d = rel(lhs, rhs)
            verdict.check(d <= 1e-20, f"Borchardt n={n}: {mpmath.nstr(d, 3)}")
    verdict.finish(6, "Cauchy double alternant and Borchardt")


def test_criterion_07_asm_suite(verdict):
    for n, expected in zip(range(1, 7), (1, 2, 7, 42, 429, 7436)):
        count = sum(1 for _ in asm.enumerate_asm(n))
        verdict.check(count == expected == asm_product_formula(n) == asm.asm_count(n), f"count n={n}: {count}")
        half = n * (n - 1)
        bad = 0
        for A in asm.enumerate_asm(n):
            s = asm.stats(A)
            R = asm.quarter_turn(A)
            r = asm.stats(R)
            ok = (
                s.j == 2 * s.inv - 2 * s.mu
                and 2 * s.nu == s.j
                and r.mu == s.mu
                and 2 * r.nu == half - 2 * s.nu - 2 * s.mu
                and asm.quarter_turn(asm.quarter_turn(asm.quarter_turn(R))) == A
                and R.entries == rotate_anticlockwise(A.entries)
            )
            if n <= 5:
                ok = ok and s.inv == inv_brute(A.entries) and s.j == j_brute(A.entries)
            bad += not ok
        verdict.check(bad == 0, f"statistics n={n}: {bad} matrices violate an identity")
    verdict.finish(7, "ASM counts and statistic identities")


PRINTED_Z = {
    (4, 1): [0, 2, 6, 6, 2],
    (5, 1): [0, 3, 14, 35, 48, 48, 35, 14, 3],
    (5, 2): [0, 2, 12, 21, 24, 21, 12, 2],
    (5, 3): [0, 1, 0, 6, 6, 0, 1],
}


def test_criterion_08_generating_polynomials(verdict):
    for (n, k), coeffs in PRINTED_Z.items():
        got = list(asm.z_nk_poly(n, k).coefficients)
        verdict.check(got == coeffs, f"Z_{n},{k}: enumerated {got} vs printed {coeffs}")
    for n in range(1, 7):
        total = sum(asm.z_nk_poly(n, k)(1) for k in range(asm.mu_max(n) + 1))
        verdict.check(total == asm.asm_count(n), f"sum Z_{n},k(1) = {total}")
        z0 = asm.z_nk_poly(n, 0)
        expected = asm.IntPolynomial([1])
        for i in range(1, n + 1):
            expected = expected * asm.IntPolynomial([1] * i)
        verdict.check(z0 == expected and z0(3) == q_factorial(3, n), f"Z_{n},0 is not the q-factorial")
    verdict.finish(8, "generating polynomials")


def test_criterion_09_izergin_korepin(verdict):
    rng = np.random.default_rng(9)
    for n in range(1, 5):
        for trial in range(10):
            if trial == 0:
                q = mpmath.mpf(1)
            elif trial % 3 == 0:
                q = mpmath.mpf(float(rng.uniform(0.1, 3)))
            else:
                q = mpmath.expjpi(2 * mpmath.mpf(float(rng.uniform(0.01, 0.99))))
            X = sorted(rng.choice(np.arange(1, 60), size=n, replace=False) / 7.0)
            Y = sorted(rng.choice(np.arange(1, 60), size=n, replace=False) / 11.0)
            d = rel(asm.ik_propp_sum(q, X, Y), asm.ik_direct(q, X, Y))
            verdict.check(d <= 1e-18, f"n={n} q={mpmath.nstr(q, 4)}: {mpmath.nstr(d, 3)}")
    verdict.finish(9, "Izergin-Korepin: ASM sum equals the determinant")


def test_criterion_10_t_kernels(verdict):
    x0, y0 = mpmath.mpf(13) / 10, mpmath.mpf(7) / 10
    for alpha in (F(1, 5), F(1, 2), F(7, 10)):
        c = as_alpha(alpha).cos_pi_alpha
        for r in range(0, 7):
            oracle = mpmath.diff(lambda t: 1 / (x0 * x0 + 2 * c * x0 * t + t * t), y0, r)
            d = rel(delta.t_kernel(alpha, r, x0, y0), oracle)
            verdict.check(d <= 1e-8, f"y-derivative r={r} alpha={alpha}: {mpmath.nstr(d, 3)}")
        for r in range(0, 11):
            got = delta.t_kernel(alpha, r, 1, 0)
            expected = (-1) ** r * math.factorial(r) * cheb_u(alpha, r + 1)
            d = abs(got - expected) / max(1, abs(expected))
            verdict.check(d <= 1e-8, f"boundary r={r} alpha={alpha}: {mpmath.nstr(d, 3)}")
        for r in range(0, 12):
            for j in range(1, 13 - r):
                fd, closed = delta.t_xderiv_check(alpha, r, j)
                d = abs(fd - closed) / max(1, abs(closed))
                verdict.check(d <= 1e-8, f"x-derivative r={r} j={j} alpha={alpha}: {mpmath.nstr(d, 3)}")
    verdict.finish(10, "T kernels: y-derivatives, boundary values, x-derivatives")


def test_criterion_11_f_suite(verdict):
    pts = [(mpmath.mpf(1), mpmath.mpf(1) / 2), (mpmath.mpf("0.3"), mpmath.mpf("2.2")), (mpmath.mpf("1.5"), mpmath.mpf("0.4"))]
    alphas = (F(1, 10), F(1, 5), F(1, 3), F(3, 5))
    for n in range(1, 7):
        for alpha in alphas:
            for x, y in pts:
                d = rel(cj.f_nk(alpha, n, 0, x, y).value, cj.f_n0_closed(alpha, n, x, y))
                verdict.check(d <= 1e-20, f"F_{n},0 closed n={n} alpha={alpha}: {mpmath.nstr(d, 3)}")
                if n <= 5:
                    for k in range(asm.mu_max(n) + 1):
                        v = cj.f_nk(alpha, n, k, x, y)
                        verdict.check(v.imag_residue <= mpmath.mpf(2) ** -128 * max(1, abs(v.value)), f"imag residue n={n} k={k}")
    for nk in cj.DECOMPOSITIONS:
        for alpha in alphas:
            for x, y in pts:
                chk = cj.decomposition_check(alpha, *nk, x, y)
                verdict.check(chk.rel_diff <= 1e-20, f"F_{nk[0]},{nk[1]} rewriting alpha={alpha}: {mpmath.nstr(chk.rel_diff, 3)}")
    for n in range(2, 7):
        for alpha in (F(1, 7), F(1, 3), F(3, 4)):
            got = cj.c_coefficients(alpha, n)
            oracle = quotient_coefficients(alpha, n)
            gap = max(abs(g - o) / max(1, abs(o)) for g, o in zip(got, oracle))
            verdict.check(gap <= 1e-20, f"c_i vs division n={n} alpha={alpha}: {mpmath.nstr(gap, 3)}")
        for s in range(0, 11):
            alpha = F(s, 10 * n)
            c = cj.c_coefficients(alpha, n)
            # an exact zero shows up as rounding noise; anything below 2^-200 is not positive
            low = min(c)
            verdict.check(low > mpmath.mpf(2) ** -200, f"c_i positivity n={n} alpha={alpha}: min {mpmath.nstr(low, 3)}")
    verdict.finish(11, "F_{n,k} suite")


def test_criterion_12_band_matrices(verdict):
    displays = {
        1: [["U1"]],
        2: [["2U1", "U2", "0"], ["0", "U2", "2U1"]],
        3: [["3U1", "3U2", "U3", "0", "0"], ["0", "3U2", "U3 + 9U1", "3U2", "0"], ["0", "0", "U3", "3U2", "3U1"]],
        4: [
            ["4U1", "6U2", "4U3", "U4", "0", "0", "0"],
            ["0", "6U2", "4U3 + 24U1", "U4 + 16U2", "4U3", "0", "0"],
            ["0", "0", "4U3", "U4 + 16U2", "4U3 + 24U1", "6U2", "0"],
            ["0", "0", "0", "U4", "4U3", "6U2", "4U1"],
        ],
    }
    for n, expected in displays.items():
        verdict.check(cj.band_matrix(n).as_strings() == expected, f"display n={n}")
    partial5 = [
        ["5U1", "10U2", "10U3", "5U4", "U5", "0"],
        ["0", "10U2", "10U3 + 50U1", "5U4 + 50U2", "U5 + 25U3", "0"],
        ["0", "0", "10U3", "5U4 + 50U2", "U5 + 25U3 + 100U1", "0"],
        ["0", "0", "0", "5U4", "U5 + 25U3", "0"],
        ["0", "0", "0", "0", "U5", "5U1"],
    ]
    s5 = cj.band_matrix(5).as_strings()
    verdict.check([row[:5] + [row[8]] for row in s5] == partial5, "display n=5 (printed columns)")
    for n in range(1, cj.BAND_MAX_N + 1):
        B = cj.band_matrix(n)
        cancel = all(B[i, n + i] == 0 for i in range(n - 1))
        verdict.check(B.is_persymmetric() and B.is_banded() and cancel, f"structure n={n}")
    for n in range(1, 6):
        rep = cj.check_band_tp(F(9, 10 * n), n)
        verdict.check(rep.min_minor >= -1e-30, f"TP at alpha=0.9/{n}: {mpmath.nstr(rep.min_minor, 3)}")
        for sigma in itertools.combinations(range(1, 2 * n), n):
            verdict.check(delta.a_sigma(n, sigma) == delta.a_sigma_minor(n, sigma), f"A_sigma n={n} {sigma}")
        ident = tuple(range(n, 2 * n))
        verdict.check(delta.a_sigma(n, ident) == 1, f"A_Id n={n}")
        for alpha in (F(1, 7), F(2, 5)):
            prod = math.prod((cheb_u(alpha, i) for i in range(1, n + 1)), start=mpmath.mpf(1))
            d = abs(delta.b_sigma(alpha, n, ident) - prod) / max(1, abs(prod))
            verdict.check(d <= 1e-60, f"B_Id n={n} alpha={alpha}: {mpmath.nstr(d, 3)}")
    verdict.finish(12, "band matrices and Lascoux minors")


def test_criterion_13_homogeneity(verdict):
    for n in range(1, 5):
        for alpha in (F(1, 10), F(1, 3), F(7, 10)):
            for x, y in seeded_points(3, [13, n]):
                for route in delta.EXACT_ROUTES:
                    base = delta.delta(alpha, n, x, y, route=route).value
                    scaled = delta.delta(alpha, n, 2 * x, 2 * y, route=route).value
                    d = rel(scaled, base * mpmath.mpf(2) ** (-n * (n + 1)))
                    verdict.check(d <= 1e-20, f"n={n} alpha={alpha} {route}: {mpmath.nstr(d, 3)}")
    verdict.finish(13, "degree -n(n+1) homogeneity")


def test_criterion_14_logistic(verdict):
    for alpha in (F(3, 10), F(1, 2), F(4, 5)):
        for s in (0, 0.5, -0.5, 0.9, -0.9):
            numeric, closed = kernel.logistic_mgf_check(alpha, s)
            d = rel(numeric, closed)
            verdict.check(d <= 1e-6, f"alpha={alpha} s={s}: {mpmath.nstr(d, 3)}")
    verdict.finish(14, "logistic transform identity")
