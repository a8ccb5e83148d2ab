"""Cross-check suite behind ``treecuts verify``.

Every check returns a list of human-readable failures; an empty list means
the check passed.  ``quick=True`` shrinks the ranges so the whole suite runs
in well under a minute.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .analysis import (
    brute_distribution,
    gf_distribution,
    paths_rank_distribution,
)
from .combinatorics import (
    IntPolynomial,
    binary_height_at_quarter,
    binary_height_poly,
    catalan,
    fibonacci_poly,
    narayana_assoc_poly,
    narayana_derivative_at_one,
    narayana_number,
)
from .ensemble import enumerate_trees, enumerate_words, random_state, sample_words
from .gf import (
    Variant,
    allowed_variants,
    expansion_operator,
    explicit_expectation,
    gf_table,
    moment_table,
    old_leaf_gf,
    old_path_segments_expectation_table,
    total_paths_expectation_table,
    tree_gf,
)
from .reduction import Mode, reduce_iter, reduce_once, total_old_path_segments, total_paths
from .series import TSeries2, USeries
from .tree import tree_metrics

__all__ = ["CHECKS", "CheckResult", "run_checks", "series_identity_sides"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    module: str
    failures: tuple[str, ...]
    seconds: float

    @property
    def ok(self) -> bool:
        return not self.failures


def _max_n(quick: bool, full: int, small: int) -> int:
    return small if quick else full


# --------------------------------------------------------------------------
# tree_core

def check_metric_identities(quick: bool) -> list[str]:
    bad = []
    for n in range(1, _max_n(quick, 12, 8) + 1):
        for t in enumerate_trees(n):
            m = tree_metrics(t)
            expected_h = 1 + max((tree_metrics(c).node_height for c in t), default=0)
            if m.size != m.leaf_count + m.inner_count or m.node_height != expected_h:
                bad.append(f"{t}: metrics inconsistent")
            if (m.old_leaf_count == 0) != (n == 1) or m.old_leaf_count > m.leaf_count:
                bad.append(f"{t}: old-leaf count {m.old_leaf_count}")
            if m.is_path != (m.node_height == m.size) or (m.is_path and m.leaf_count != 1):
                bad.append(f"{t}: path flags")
    return bad


def check_leaf_censuses(quick: bool) -> list[str]:
    bad = []
    for n in range(2, _max_n(quick, 12, 9) + 1):
        leaves: Counter = Counter()
        old: Counter = Counter()
        for t in enumerate_trees(n):
            m = tree_metrics(t)
            leaves[m.leaf_count] += 1
            old[m.old_leaf_count] += 1
        total_leaves = sum(k * c for k, c in leaves.items())
        if 2 * total_leaves != math.comb(2 * n - 2, n - 1):
            bad.append(f"n={n}: leaves are not half of all nodes")
        for k in range(1, n):
            if leaves[k] != narayana_number(n - 1, k):
                bad.append(f"n={n}, k={k}: leaf census {leaves[k]}")
            formula = (catalan(k - 1) * math.comb(n - 2, n - 2 * k) * 2 ** (n - 2 * k)
                       if n - 2 * k >= 0 else 0)
            if old[k] != formula:
                bad.append(f"n={n}, k={k}: old-leaf census {old[k]} != {formula}")
    return bad


# --------------------------------------------------------------------------
# reduction_engine

def check_reduction_laws(quick: bool) -> list[str]:
    bad = []
    for n in range(1, _max_n(quick, 12, 8) + 1):
        for t in enumerate_trees(n):
            m = tree_metrics(t)
            for mode in Mode:
                if reduce_iter(t, mode, 0).final_size != n:
                    bad.append(f"{t} {mode.value}: zero rounds changed the size")
                nxt = reduce_once(t, mode)
                if nxt:
                    if mode.is_old and n == 1:
                        if nxt != t:
                            bad.append(f"{t} {mode.value}: single node not fixed")
                    elif tree_metrics(nxt).size >= n:
                        bad.append(f"{t} {mode.value}: size did not decrease")
            if n >= 2 and tree_metrics(reduce_once(t, Mode.LEAVES)).node_height != m.node_height - 1:
                bad.append(f"{t}: leaf cut did not lower the height by one")
            for r in range(0, 7):
                if reduce_iter(t, Mode.LEAVES, r).survived != (m.node_height > r):
                    bad.append(f"{t}: survival rule fails at r={r}")
            outcome = reduce_iter(t, Mode.OLD_PATHS, 5)
            for snap in outcome.per_round:
                if snap.size != 2 * snap.old_leaf_count + snap.neither_count:
                    bad.append(f"{t}: split identity fails")
    return bad


def check_path_leaf_multisets(quick: bool) -> list[str]:
    bad = []
    for n in range(1, _max_n(quick, 12, 9) + 1):
        for r in range(3):
            a = Counter(reduce_iter(t, Mode.PATHS, r).final_size for t in enumerate_trees(n))
            b = Counter(reduce_iter(t, Mode.LEAVES, 2 ** (r + 1) - 2).final_size
                        for t in enumerate_trees(n))
            if a != b:
                bad.append(f"n={n}, r={r}: path and leaf multisets differ")
    return bad


# --------------------------------------------------------------------------
# combinatorics

def check_narayana(quick: bool) -> list[str]:
    bad = []
    top = _max_n(quick, 30, 15)
    for n in range(top + 1):
        p = narayana_assoc_poly(n)
        direct = IntPolynomial([0] + [narayana_number(n, k) for k in range(1, n + 1)]) \
            if n else IntPolynomial((0, 1))
        if p != direct:
            bad.append(f"n={n}: recurrence disagrees with the defining formula")
        # t^{n+1} N~_n(1/t) = (1 - t)[n = 0] + N~_n(t)
        reversed_p = p.reversed_to(n + 1)
        rhs = p + (IntPolynomial((1, -1)) if n == 0 else 0)
        if reversed_p != rhs:
            bad.append(f"n={n}: reverse relation fails")
        if p(1) != catalan(n):
            bad.append(f"n={n}: N~_n(1) != C_n")
        if n >= 1:
            if narayana_derivative_at_one(n, 1) * 2 != math.comb(2 * n, n):
                bad.append(f"n={n}: first derivative at 1")
            if narayana_derivative_at_one(n, 2) != (n - 1) * math.comb(2 * n - 2, n - 1):
                bad.append(f"n={n}: second derivative at 1")
            if p.derivative(1)(1) != narayana_derivative_at_one(n, 1):
                bad.append(f"n={n}: derivative of the recurrence polynomial")
    kmax = _max_n(quick, 15, 8)
    for n in range(2, kmax + 1):
        for k in range(1, kmax + 1):
            lhs = narayana_number(n + k - 1, k)
            rhs = sum(math.comb(2 * n + k - l - 2, k - l) * narayana_number(n - 1, l)
                      for l in range(1, k + 1))
            if lhs != rhs:
                bad.append(f"convolution identity fails at n={n}, k={k}")
    return bad


def check_fibonacci(quick: bool) -> list[str]:
    bad = []
    z = IntPolynomial.x()
    top = _max_n(quick, 20, 10)
    for r in range(top + 1):
        for s in range(r, top + 1):
            lhs = fibonacci_poly(r + 1) * fibonacci_poly(s) - fibonacci_poly(r) * fibonacci_poly(s + 1)
            if lhs != (-z) ** r * fibonacci_poly(s - r):
                bad.append(f"d'Ocagne fails at r={r}, s={s}")
    for r in range(_max_n(quick, 30, 12) + 1):
        if fibonacci_poly(r + 1) ** 2 - fibonacci_poly(r) * fibonacci_poly(r + 2) != (-z) ** r:
            bad.append(f"F_(r+1)^2 - F_r F_(r+2) fails at r={r}")
    order = _max_n(quick, 40, 20)
    u = USeries.monomial(1, order)
    arg = -u / ((1 + u) * (1 + u))
    for r in range(1, _max_n(quick, 15, 8) + 1):
        lhs = (1 - u) * (1 + u) ** (r - 1) * fibonacci_poly(r)(arg)
        if lhs != 1 - USeries.monomial(r, order):
            bad.append(f"u-substitution fails at r={r}")
    return bad


def check_binary_height(quick: bool) -> list[str]:
    bad = []
    prev = None
    for r in range(0, _max_n(quick, 22, 21) + 1):
        a, e = binary_height_at_quarter(r)
        if r <= 10 and Fraction(a, 4 ** e) != binary_height_poly(r)(Fraction(1, 4)):
            bad.append(f"B_{r}(1/4) disagrees with the polynomial")
        # gap = 2 - B_r(1/4) = g / 4^e
        g = 2 * 4 ** e - a
        if prev is not None:
            pg, pe = prev
            if not g * 4 ** pe < pg * 4 ** e:
                bad.append(f"2 - B_r(1/4) not decreasing at r={r}")
        if r >= 20:
            # |g/4^e - 4/r| <= (1/4)(4/r)  <=>  |r g - 4^(e+1)| <= 4^e
            if abs(r * g - 4 ** (e + 1)) > 4 ** e:
                bad.append(f"2 - B_r(1/4) not within 25% of 4/r at r={r}")
        prev = (g, e)
    return bad


# --------------------------------------------------------------------------
# series_lab

def check_functional_equations(quick: bool) -> list[str]:
    bad = []
    order = _max_n(quick, 12, 8)
    t_gf = tree_gf(order)
    l_gf = old_leaf_gf(order)
    z = TSeries2.var(0, order)
    t = TSeries2.var(1, order)
    if t_gf != t + expansion_operator(Mode.LEAVES, t_gf):
        bad.append("T = t + Phi_leaves(T) fails")
    paths = t * (1 - z).inverse()
    if t_gf != paths + expansion_operator(Mode.PATHS, t_gf):
        bad.append("T = P + Phi_paths(T) fails")
    if expansion_operator(Mode.OLD_LEAVES, l_gf) != l_gf:
        bad.append("Phi_old_leaves(L) = L fails")
    if expansion_operator(Mode.OLD_PATHS, l_gf) != l_gf:
        bad.append("Phi_old_paths(L) = L fails")
    return bad


def check_gf_against_brute(quick: bool) -> list[str]:
    bad = []
    nmax = _max_n(quick, 12, 8)
    rmax = _max_n(quick, 5, 3)
    for mode in Mode:
        for variant in allowed_variants(mode):
            for r in range(rmax + 1):
                for n in range(1, nmax + 1):
                    a = gf_distribution(mode, n, r, variant)
                    b = brute_distribution(mode, n, r, variant)
                    if a.masses != b.masses:
                        bad.append(f"{mode.value}/{variant.value} n={n} r={r}: gf != brute")
                    if sum(a.masses) != 1:
                        bad.append(f"{mode.value}/{variant.value} n={n} r={r}: masses do not sum to 1")
    return bad


def check_survivor_counts(quick: bool) -> list[str]:
    bad = []
    nmax = _max_n(quick, 12, 9)
    for r in range(0, _max_n(quick, 6, 4) + 1):
        table = gf_table(Mode.LEAVES, Variant.SIZE, r, 16)
        # zF_r(-z)/F_{r+1}(-z) counts trees of node height <= r
        order = 16
        p = USeries([c if i % 2 == 0 else -c for i, c in enumerate(fibonacci_poly(r).coeffs)], order)
        q = USeries([c if i % 2 == 0 else -c for i, c in enumerate(fibonacci_poly(r + 1).coeffs)],
                    order)
        low = USeries.monomial(1, order) * p / q
        for n in range(1, nmax + 1):
            gone = sum(1 for t in enumerate_trees(n) if tree_metrics(t).node_height <= r)
            if catalan(n - 1) - table.survivors(n) != gone or low[n] != gone:
                bad.append(f"r={r}, n={n}: survivor count")
    return bad


def check_inner_shift(quick: bool) -> list[str]:
    bad = []
    order = _max_n(quick, 30, 16)
    for r in range(_max_n(quick, 4, 2) + 1):
        a = gf_table(Mode.LEAVES, Variant.INNER, r, order).rows
        b = gf_table(Mode.LEAVES, Variant.SIZE, r + 1, order).rows
        # weight 0 differs: a lone surviving node has no inner nodes
        if [row[1:] for row in a] != [row[1:] for row in b]:
            bad.append(f"r={r}: inner table != size table at r+1")
    return bad


def check_explicit_expectations(quick: bool) -> list[str]:
    bad = []
    nmax = _max_n(quick, 60, 20)
    for mode in (Mode.LEAVES, Mode.OLD_PATHS):
        for r in range(_max_n(quick, 8, 3) + 1):
            table = moment_table(mode, Variant.SIZE, 1, r, nmax)
            for n in range(2, nmax + 1):
                if table[n] != explicit_expectation(mode, n, r):
                    bad.append(f"{mode.value} r={r} n={n}: closed form != binomial sum")
    return bad


def check_moments_against_distributions(quick: bool) -> list[str]:
    bad = []
    nmax = _max_n(quick, 12, 8)
    for mode in Mode:
        for variant in allowed_variants(mode):
            for r in range(0, 4):
                m1 = moment_table(mode, variant, 1, r, 16)
                m2 = moment_table(mode, variant, 2, r, 16)
                for n in range(2, nmax + 1):
                    dist = brute_distribution(mode, n, r, variant)
                    if dist.mean() != m1[n] or dist.factorial_moment(2) != m2[n]:
                        bad.append(f"{mode.value}/{variant.value} r={r} n={n}: moments")
    return bad


def check_expectation_split(quick: bool) -> list[str]:
    bad = []
    nmax = _max_n(quick, 40, 16)
    for r in range(0, _max_n(quick, 5, 3) + 1):
        size = moment_table(Mode.OLD_PATHS, Variant.SIZE, 1, r, nmax)
        old = moment_table(Mode.OLD_PATHS, Variant.OLD_LEAF, 1, r, nmax)
        rest = moment_table(Mode.OLD_PATHS, Variant.NEITHER, 1, r, nmax)
        for n in range(2, nmax + 1):
            if size[n] != 2 * old[n] + rest[n]:
                bad.append(f"r={r} n={n}: E size != 2 E old + E neither")
    return bad


def check_totals(quick: bool) -> list[str]:
    bad = []
    nmax = _max_n(quick, 12, 9)
    p_table = total_paths_expectation_table(max(nmax, 2))
    s_table = old_path_segments_expectation_table(max(nmax, 2))
    for n in range(2, nmax + 1):
        trees = list(enumerate_trees(n))
        p = Fraction(sum(total_paths(t) for t in trees), len(trees))
        s = Fraction(sum(total_old_path_segments(t) for t in trees), len(trees))
        if p != p_table[n]:
            bad.append(f"n={n}: E P_n table {p_table[n]} != brute {p}")
        if s != s_table[n]:
            bad.append(f"n={n}: E S_n table {s_table[n]} != brute {s}")
    return bad


def check_correspondence(quick: bool) -> list[str]:
    bad = []
    for r in range(3):
        for n in range(1, _max_n(quick, 40, 20) + 1):
            rank = paths_rank_distribution(n, r)
            leaf = gf_distribution(Mode.LEAVES, n, 2 ** (r + 1) - 2)
            gf_paths = gf_distribution(Mode.PATHS, n, r)
            if rank.masses != leaf.masses or gf_paths.masses != leaf.masses:
                bad.append(f"n={n}, r={r}: path law != leaf law at 2^(r+1)-2 rounds")
    return bad


# -- series identities with a formal x -----------------------------------

def _x_series(terms: dict[int, IntPolynomial], order: int) -> USeries:
    return USeries.sparse(terms, order)


def _one_minus_ux_pow(e: int, a: int, order: int) -> USeries:
    """(1 - u^a x)^e as a series in u with polynomial coefficients in x; any integer e."""
    terms: dict[int, IntPolynomial] = {}
    j = 0
    while a * j <= order:
        if e >= 0:
            if j > e:
                break
            c = math.comb(e, j) * (-1) ** j
        else:
            c = math.comb(-e + j - 1, j)
        terms[a * j] = IntPolynomial.monomial(j, c)
        j += 1
    return _x_series(terms, order)


def _one_plus_cu_pow(e: int, sign: int, order: int) -> USeries:
    """(1 + sign*u)^e for any integer e."""
    base = USeries([1, sign], order)
    return base ** e


def series_identity_sides(which: str, d: int, order: int) -> tuple[USeries, USeries]:
    """Both sides of one of the four power-series identities, as series in u
    whose coefficients are polynomials in the formal variable x.

    ``which`` is ``"leaves-1"``, ``"leaves-2"`` (both multiplied through by
    u^(2d) in the second case so that no negative powers remain),
    ``"old-leaves"`` or ``"old-rest"``.
    """
    one_minus_x = IntPolynomial((1, -1))
    lhs = USeries.zero(order)
    if which == "leaves-1":
        for n in range(max(d, 1), order + d + 1):
            base = (_one_minus_ux_pow(2 * n + d - 1, 1, order)
                    * _one_plus_cu_pow(d - 1, -1, order)
                    * _one_minus_ux_pow(-(2 * n - 1), 2, order)).shift(n - d)
            inner = USeries.zero(order)
            for k, nk in enumerate(narayana_assoc_poly(n - 1).coeffs):
                if nk:
                    inner = inner + (_one_plus_cu_pow(2 * k, -1, order)
                                     * _one_minus_ux_pow(-2 * k, 1, order)) * IntPolynomial.monomial(k, nk)
            lhs = lhs + base * inner * math.comb(n, d)
        rhs_poly = narayana_assoc_poly(d - 1)
        rhs = USeries([rhs_poly], order)
        return lhs, rhs
    if which == "leaves-2":
        for n in range(1, order + 1):
            base = (_one_minus_ux_pow(2 * n - d - 1, 1, order)
                    * _one_plus_cu_pow(2 * d - 1, -1, order)
                    * _one_minus_ux_pow(-(2 * n - d - 1), 2, order)).shift(n)
            inner = USeries.zero(order)
            for k, nk in enumerate(narayana_assoc_poly(n - 1).coeffs):
                if nk and k >= d:
                    w = (_one_plus_cu_pow(2 * (k - d), -1, order)
                         * _one_minus_ux_pow(-2 * (k - d), 1, order))
                    falling = math.perm(k, d)
                    inner = inner + w * IntPolynomial.monomial(k - d, nk * falling)
            lhs = lhs + base * inner
        lhs = USeries([c.exact_div(math.factorial(d)) if isinstance(c, IntPolynomial) else
                       Fraction(c, math.factorial(d)) for c in lhs.coeffs], order)
        # u^(2d) N~_{d-1}(1/u) = sum_k N_{d-1,k} u^(2d-k)
        p = narayana_assoc_poly(d - 1)
        rhs = USeries.sparse({2 * d - k: c for k, c in enumerate(p.coeffs) if c}, order)
        return lhs, rhs
    if which in ("old-leaves", "old-rest"):
        for k in range(1, order + 1):
            for n in range(0, order - k + 1):
                weight = math.perm(k, d) if which == "old-leaves" else math.perm(n, d)
                if weight == 0:
                    continue
                coeff = weight * catalan(k - 1) * math.comb(n + 2 * k - 2, n) * 2 ** n
                xpart = IntPolynomial.monomial(k, coeff) * one_minus_x ** n
                term = (_one_plus_cu_pow(2 * k, -1, order)
                        * _one_plus_cu_pow(-(n + 2 * k), 1, order)
                        * _one_minus_ux_pow(-(n + 2 * k), 1, order)).shift(n + k)
                lhs = lhs + term * xpart
        if which == "old-leaves":
            c = math.perm(2 * d - 2, d - 1)
            rhs = (_one_plus_cu_pow(1, -1, order) * _one_plus_cu_pow(-1, 1, order)
                   * _one_minus_ux_pow(-2 * d, 1, order)).shift(d) * IntPolynomial.monomial(d, c)
        else:
            nd = narayana_assoc_poly(d - 1)
            # N~_{d-1}(u x) = sum_k N_{d-1,k} u^k x^k
            nux = USeries.sparse({k: IntPolynomial.monomial(k, c) for k, c in enumerate(nd.coeffs)
                                  if c}, order)
            rhs = (nux * _one_plus_cu_pow(-(d - 1), -1, order) * _one_plus_cu_pow(-1, 1, order)
                   * _one_minus_ux_pow(-2 * d, 1, order)).shift(d) \
                * (one_minus_x ** d * (2 ** d * math.factorial(d)))
        return lhs, rhs
    raise ValueError(f"unknown identity {which!r}")


def check_series_identities(quick: bool) -> list[str]:
    bad = []
    order = _max_n(quick, 15, 8)
    for which in ("leaves-1", "leaves-2", "old-leaves", "old-rest"):
        for d in range(1, _max_n(quick, 4, 2) + 1):
            lhs, rhs = series_identity_sides(which, d, order)
            if lhs != rhs:
                bad.append(f"identity {which} fails for d={d}")
    return bad


# --------------------------------------------------------------------------
# ensemble

def check_enumeration(quick: bool) -> list[str]:
    bad = []
    for n in range(1, _max_n(quick, 13, 10) + 1):
        words = list(enumerate_words(n))
        if len(words) != catalan(n - 1) or len(set(words)) != len(words):
            bad.append(f"n={n}: enumeration count or duplicates")
        if words != sorted(words):
            bad.append(f"n={n}: enumeration not in canonical order")
    return bad


def check_sampler_determinism(quick: bool) -> list[str]:
    a = sample_words(30, 50, random_state(2024))
    b = sample_words(30, 50, random_state(2024))
    c = sample_words(30, 50, random_state(2025))
    bad = []
    if not (a == b).all():
        bad.append("same seed gave different samples")
    if (a == c).all():
        bad.append("different seeds gave identical samples")
    return bad


CHECKS: list[tuple[str, str, Callable[[bool], list[str]]]] = [
    ("metric identities", "tree_core", check_metric_identities),
    ("leaf and old-leaf censuses", "tree_core", check_leaf_censuses),
    ("reduction laws", "reduction_engine", check_reduction_laws),
    ("path/leaf multisets", "reduction_engine", check_path_leaf_multisets),
    ("Narayana identities", "combinatorics", check_narayana),
    ("Fibonacci identities", "combinatorics", check_fibonacci),
    ("binary-height polynomials", "combinatorics", check_binary_height),
    ("functional equations", "series_lab", check_functional_equations),
    ("gf tables vs enumeration", "series_lab", check_gf_against_brute),
    ("survivor counts", "series_lab", check_survivor_counts),
    ("inner-node shift", "series_lab", check_inner_shift),
    ("explicit expectations", "series_lab", check_explicit_expectations),
    ("power-series identities", "series_lab", check_series_identities),
    ("enumeration", "ensemble", check_enumeration),
    ("sampler determinism", "ensemble", check_sampler_determinism),
    ("moments vs distributions", "analysis", check_moments_against_distributions),
    ("expectation split", "analysis", check_expectation_split),
    ("path/leaf correspondence", "analysis", check_correspondence),
    ("expected totals vs enumeration", "analysis", check_totals),
]


def run_checks(quick: bool = False, only: str | None = None) -> list[CheckResult]:
    """Run every check (or those whose name contains ``only``) in a fixed order."""
    out = []
    for name, module, fn in CHECKS:
        if only and only not in name:
            continue
        start = time.perf_counter()
        try:
            failures = tuple(fn(quick))
        except Exception as exc:  # a crash is a failed check, not a crashed suite
            failures = (f"raised {type(exc).__name__}: {exc}",)
        out.append(CheckResult(name, module, failures, time.perf_counter() - start))
    return out
