from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import q_factorial_brute
from tplab.chebyshev import (
    AlphaParam,
    as_alpha,
    cheb_u,
    cheb_u_recurrence,
    cheb_u_table,
    q_factorial,
    superfactorial,
    v_product,
)

alphas = st.fractions(min_value=0, max_value=Fraction(999, 1000), max_denominator=1000)


@pytest.mark.parametrize(
    "alpha, k, expected",
    [
        (Fraction(1, 2), 1, 1),
        (Fraction(1, 2), 2, 0),
        (Fraction(1, 2), 3, -1),
        (0, 5, 5),
        (Fraction(1, 3), 3, 0),
        (Fraction(1, 3), 2, 1),
        (Fraction(1, 4), 2, "1.4142135623730950488016887242096980785696718753769480731766797379907324784622"),
    ],
)
def test_cheb_u_examples(alpha, k, expected):
    with mpmath.workprec(256):
        assert abs(cheb_u(alpha, k) - mpmath.mpf(expected)) <= mpmath.mpf(2) ** -250


def test_alpha_param_invariants():
    for alpha in (0, Fraction(1, 7), 0.4, Fraction(998, 1000)):
        a = AlphaParam.make(alpha)
        tol = mpmath.mpf(2) ** (-a.precision_bits + 4)
        with mpmath.workprec(a.precision_bits):
            assert abs(abs(a.q) - 1) <= tol
            assert abs(abs(a.omega) - 1) <= tol
            assert abs(a.cos_pi_alpha**2 + a.sin_pi_alpha**2 - 1) <= tol
            assert abs(a.omega**4 - a.q) <= tol


@pytest.mark.parametrize("bad", [-0.1, 1, 1.5])
def test_alpha_range(bad):
    with pytest.raises(ValueError):
        AlphaParam.make(bad)


def test_float_alpha_is_read_as_its_decimal():
    assert as_alpha(0.4).alpha == Fraction(2, 5)
    assert as_alpha(0.4, 128).precision_bits == 128


@given(alphas, st.integers(-60, 60))
def test_antisymmetry(alpha, k):
    with mpmath.workprec(256):
        assert cheb_u(alpha, -k) == -cheb_u(alpha, k)
        assert cheb_u(alpha, 0) == 0


@given(alphas, st.integers(0, 200))
def test_recurrence_agrees_with_quotient(alpha, k):
    a = as_alpha(alpha)
    with mpmath.workprec(256):
        r, d = cheb_u_recurrence(a, k), cheb_u(a, k)
        assert abs(r - d) <= mpmath.mpf(2) ** (-256 + 8) * max(k, 1) * max(1, abs(d)) * 4


def test_recurrence_examples():
    with mpmath.workprec(256):
        assert abs(cheb_u_recurrence(Fraction(1, 3), 2) - 1) < mpmath.mpf(2) ** -250
        assert abs(cheb_u_recurrence(Fraction(1, 2), 4)) < mpmath.mpf(2) ** -250
        assert abs(cheb_u_recurrence(0.1, 7) - cheb_u(0.1, 7)) < mpmath.mpf(2) ** -240


def test_float_oracle_for_table():
    table = cheb_u_table(0.23, 12)
    for k, v in enumerate(table):
        assert float(v) == pytest.approx(math.sin(k * math.pi * 0.23) / math.sin(math.pi * 0.23), rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_v_product_vanishes_at_reciprocal(n):
    assert v_product(Fraction(1, n), n) == 0


def test_v_product_examples():
    assert v_product(0, 4) == 24
    v = v_product(0.4, 3)
    expected = math.prod(math.sin(k * math.pi * 0.4) / math.sin(math.pi * 0.4) for k in (1, 2, 3))
    assert v < 0 and float(v) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_v_product_sign_changes_on_farey_points(n):
    # between consecutive fractions j/k with k <= n the sign is constant
    points = sorted({Fraction(j, k) for k in range(1, n + 1) for j in range(0, k)} | {Fraction(1)})
    for lo, hi in zip(points, points[1:]):
        signs = {mpmath.sign(v_product(lo + (hi - lo) * t / 5, n)) for t in range(1, 5)}
        assert len(signs) == 1 and 0 not in signs


@pytest.mark.parametrize("k, expected", [(0, 1), (1, 1), (2, 2), (3, 12), (4, 288), (5, 34560)])
def test_superfactorial(k, expected):
    assert superfactorial(k) == expected == math.prod(math.factorial(i) for i in range(k + 1))


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("q", [1, -1, 2, Fraction(1, 3)])
def test_q_factorial_counts_inversions(n, q):
    assert q_factorial(q, n) == q_factorial_brute(q, n)


def test_q_factorial_examples():
    assert q_factorial(1, 4) == 24
    assert q_factorial(-1, 3) == 0
    assert q_factorial(mpmath.mpc(0.3, 0.7), 1) == 1


def test_q_factorial_complex_matches_brute():
    q = mpmath.expjpi(mpmath.mpf(2) / 5)
    with mpmath.workprec(256):
        assert abs(q_factorial(q, 5) - q_factorial_brute(q, 5)) < mpmath.mpf(10) ** -60
