"""Catalan, Narayana, Fibonacci and binary-height families."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from treecuts.combinatorics import (
    IntPolynomial,
    binary_height_at_quarter,
    binary_height_jet,
    binary_height_poly,
    catalan,
    fibonacci_poly,
    narayana_assoc_poly,
    narayana_derivative_at_one,
    narayana_number,
)

P = IntPolynomial


def test_catalan_values():
    assert [catalan(n) for n in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]
    with pytest.raises(ValueError):
        catalan(-1)


def test_narayana_numbers():
    assert narayana_number(0, 0) == 1
    assert narayana_number(4, 2) == 6
    assert narayana_number(3, 5) == 0
    assert [narayana_number(5, k) for k in range(1, 6)] == [1, 10, 20, 10, 1]


def test_narayana_assoc_poly_small():
    assert narayana_assoc_poly(0) == P((0, 1))
    assert narayana_assoc_poly(1) == P((0, 1))
    assert narayana_assoc_poly(3) == P((0, 1, 3, 1))
    # the row with coefficients 1, 6, 6, 1 belongs to index 4
    assert narayana_assoc_poly(4) == P((0, 1, 6, 6, 1))


@given(st.integers(0, 40))
def test_narayana_at_one_is_catalan(n):
    assert narayana_assoc_poly(n)(1) == catalan(n)


def test_narayana_derivatives():
    assert narayana_derivative_at_one(4, 1) == 35
    assert narayana_derivative_at_one(4, 2) == 60
    for n in range(1, 20):
        assert narayana_derivative_at_one(n, 0) == catalan(n)
        assert 2 * narayana_derivative_at_one(n, 1) == math.comb(2 * n, n)


def test_fibonacci_polys():
    assert fibonacci_poly(0) == P()
    assert fibonacci_poly(1) == P((1,))
    assert fibonacci_poly(5) == P((1, 3, 1))


@given(st.integers(0, 12), st.integers(0, 12))
def test_docagne(r, s):
    r, s = min(r, s), max(r, s)
    z = P.x()
    F = fibonacci_poly
    assert F(r + 1) * F(s) - F(r) * F(s + 1) == (-z) ** r * F(s - r)


def test_binary_height_polys():
    assert binary_height_poly(0) == P((1,))
    assert binary_height_poly(2) == P((1, 1, 2, 1))
    assert binary_height_poly(3)(1) == 26


@pytest.mark.parametrize("r", range(0, 9))
def test_binary_height_at_quarter_is_exact(r):
    a, e = binary_height_at_quarter(r)
    assert Fraction(a, 4 ** e) == binary_height_poly(r)(Fraction(1, 4))


@pytest.mark.parametrize("r", range(0, 7))
def test_binary_height_jet(r):
    z = Fraction(1, 3)
    b = binary_height_poly(r)
    assert binary_height_jet(r, z) == (b(z), b.derivative()(z), b.derivative(2)(z))


def test_binary_height_gap_values():
    # B_1(1/4) = 5/4, B_2(1/4) = 89/64
    assert binary_height_jet(1, Fraction(1, 4))[:2] == (Fraction(5, 4), 1)
    assert binary_height_jet(2, Fraction(1, 4))[0] == Fraction(89, 64)


def test_polynomial_arithmetic():
    p = P((1, 2))
    assert p * p == P((1, 4, 4))
    assert p ** 3 == P((1, 6, 12, 8))
    assert (p - p).degree == -math.inf
    assert P((0, 1, 2)).reversed_to(3) == P((0, 2, 1))
    assert P((2, 4)).exact_div(2) == P((1, 2))
