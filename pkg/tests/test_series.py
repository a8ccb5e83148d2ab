"""Exact series, generating-function tables and moment tables."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from treecuts.combinatorics import IntPolynomial, catalan
from treecuts.gf import (
    Variant,
    explicit_expectation,
    expansion_operator,
    gf_derivative_coeffs,
    gf_table,
    gf_table_closed,
    moment_table,
    old_path_segments_expectation_table,
    total_paths_expectation_table,
)
from treecuts.reduction import Mode
from treecuts.series import SeriesOrderError, TSeries2, USeries, u_extract

ORDER = 12


def _u(order=ORDER):
    return USeries.monomial(1, order)


def test_u_extract_of_z():
    u = _u()
    z = u / ((1 + u) * (1 + u))
    assert [u_extract(z, n) for n in (1, 2, 3)] == [1, 0, 0]


def test_u_extract_catalan_gf():
    u = _u()
    g = u / (1 + u)
    assert u_extract(g, 3) == 2
    assert [u_extract(g, n) for n in range(1, 10)] == [catalan(n - 1) for n in range(1, 10)]


def test_u_extract_leaf_count_gf():
    u = _u()
    g = u * u / ((1 + u) * (1 - u * u))
    assert u_extract(g, 3) == 3


def test_u_extract_order_guard():
    with pytest.raises(SeriesOrderError):
        u_extract(USeries.one(4), 5)


@settings(max_examples=40)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=8))
def test_series_division_and_sqrt(coeffs):
    order = 8
    a = USeries([1] + coeffs, order)
    b = USeries([1, 2, -1], order)
    assert (a * b) / b == a
    s = a.sqrt()
    assert s * s == a


def test_old_leaf_operator_examples():
    n = 6
    z = TSeries2.var(0, n)
    w = TSeries2.var(1, n)
    assert expansion_operator(Mode.OLD_LEAVES, z) == z + w
    assert expansion_operator(Mode.OLD_LEAVES, w) == 2 * z * w + w * w


def test_leaf_operator_single_leaf():
    n = 8
    z = TSeries2.var(0, n)
    t = TSeries2.var(1, n)
    out = expansion_operator(Mode.LEAVES, t)
    want = TSeries2({(1, k): 1 for k in range(1, n)}, n)
    assert out == want
    assert out == z * t * (1 - t).inverse()


def test_gf_table_examples():
    g1 = gf_table(Mode.LEAVES, Variant.SIZE, 1, 4)
    assert [g1.row(n) for n in (2, 3, 4)] == [IntPolynomial((0, 1)), IntPolynomial((0, 1, 1)),
                                             IntPolynomial((0, 1, 3, 1))]
    assert gf_table(Mode.LEAVES, Variant.SIZE, 3, 7).row(7) == IntPolynomial((0, 57, 33, 9, 1))
    assert gf_table(Mode.OLD_PATHS, Variant.SIZE, 1, 4).row(4) == IntPolynomial((0, 1, 2, 2))


@pytest.mark.parametrize("mode", list(Mode))
def test_closed_table_matches_kernel_table(mode):
    for r in range(3):
        assert gf_table(mode, Variant.SIZE, r, 20).rows == \
            gf_table_closed(mode, Variant.SIZE, r, 20).rows


def test_rows_count_survivors():
    for mode in Mode:
        t = gf_table(mode, Variant.SIZE, 2, 14)
        for n in range(1, 15):
            assert t.survivors(n) <= catalan(n - 1)
            if mode.is_old:
                assert t.survivors(n) == catalan(n - 1)


def test_moment_table_examples():
    assert moment_table(Mode.LEAVES, Variant.SIZE, 1, 1, 6)[3] == Fraction(3, 2)
    assert moment_table(Mode.OLD_PATHS, Variant.SIZE, 1, 1, 6)[4] == Fraction(11, 5)
    assert moment_table(Mode.OLD_PATHS, Variant.OLD_LEAF, 1, 0, 6)[3] == 1
    assert moment_table(Mode.OLD_LEAVES, Variant.SIZE, 1, 1, 6)[3] == 2


# second factorial moments at n = 5, 8, 12 and r = 1, frozen from exhaustive enumeration
SECOND_MOMENTS = {
    Mode.LEAVES: ("30/7", "168/13", "220/7"),
    Mode.PATHS: ("8/7", "686/143", "373131/29393"),
    Mode.OLD_LEAVES: ("66/7", "4116/143", "9350/133"),
    Mode.OLD_PATHS: ("45/7", "3072/143", "1582772/29393"),
}


@pytest.mark.parametrize("mode", list(Mode))
@pytest.mark.parametrize("method", ["closed", "gf"])
def test_second_moments_frozen(mode, method):
    table = moment_table(mode, Variant.SIZE, 2, 1, 12, method)
    assert tuple(str(table[n]) for n in (5, 8, 12)) == SECOND_MOMENTS[mode]


def test_old_leaf_second_moment_uses_squared_factor():
    # the unsquared (2 - B_r) factor would give 3 here; both size-3 trees have size 2 after one round
    assert moment_table(Mode.OLD_LEAVES, Variant.SIZE, 2, 1, 6)[3] == 2


def test_closed_and_gf_moments_agree_to_order_40():
    for mode in Mode:
        for d in (1, 2, 3):
            for r in (1, 2):
                a = moment_table(mode, Variant.SIZE, d, r, 40, "closed")
                b = moment_table(mode, Variant.SIZE, d, r, 40, "gf")
                assert a == b, (mode, d, r)


def test_gf_derivative_counts_trees():
    raw = gf_derivative_coeffs(Mode.LEAVES, Variant.SIZE, 0, 1, 10)
    assert [raw[n] for n in range(2, 8)] == [n * catalan(n - 1) for n in range(2, 8)]


def test_explicit_expectation_examples():
    assert explicit_expectation(Mode.LEAVES, 3, 1) == Fraction(3, 2)
    assert explicit_expectation(Mode.OLD_PATHS, 3, 1) == Fraction(3, 2)
    assert explicit_expectation(Mode.LEAVES, 2, 0) == 2
    with pytest.raises(ValueError):
        explicit_expectation(Mode.PATHS, 3, 1)


def test_total_tables_frozen():
    p = total_paths_expectation_table(10)
    s = old_path_segments_expectation_table(10)
    assert [str(p[n]) for n in range(2, 11)] == [
        "1", "2", "14/5", "24/7", "167/42", "595/132", "2168/429", "4021/715", "1374/221"]
    assert [str(s[n]) for n in range(2, 11)] == [
        "1", "3/2", "11/5", "20/7", "7/2", "547/132", "685/143", "1555/286", "14789/2431"]
