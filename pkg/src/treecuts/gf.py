"""Generating functions for the reduced tree size and their moments.

Everything here is exact.  Two coordinate systems are used:

* power series in ``z`` (tree size) with integer coefficients, for the
  tables of G_r(z, v) and for the old-leaf moments;
* power series in ``u`` with z = u/(1+u)^2, for the closed moment forms,
  whose coefficients are read off with :func:`~treecuts.series.u_extract`.

The tables of G_r are built by summing monomial kernels over the
(inner, leaf) or (neither, old-leaf) profiles of the reduced tree: the
r-fold expansion of a single profile is an explicit quotient of Fibonacci or
binary-height polynomials, so the whole table costs polynomial time.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .combinatorics import (
    IntPolynomial,
    binary_height_poly,
    catalan,
    falling_factorial,
    fibonacci_poly,
    narayana_assoc_poly,
    narayana_number,
)
from .reduction import Mode
from .series import TSeries2, TruncPoly, USeries, u_extract

__all__ = [
    "Variant",
    "GfTable",
    "allowed_variants",
    "variant_weights",
    "effective_leaf_rounds",
    "expansion_operator",
    "tree_gf",
    "old_leaf_gf",
    "gf_table",
    "gf_table_closed",
    "gf_derivative_coeffs",
    "moment_table",
    "moment_series",
    "has_closed_moment",
    "explicit_expectation",
    "total_paths_expectation_table",
    "old_path_segments_expectation_table",
]


class Variant(enum.Enum):
    """Which statistic of the reduced tree is marked by ``v``."""

    SIZE = "size"
    INNER = "inner"          # inner nodes (leaf and path reductions)
    LEAF = "leaf"            # leaves (leaf and path reductions)
    OLD_LEAF = "old-leaf"    # old leaves (old reductions)
    NEITHER = "neither"      # nodes that are neither old leaves nor parents of one

    @classmethod
    def parse(cls, value: "Variant | str") -> "Variant":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        for v in cls:
            if v.value == key:
                return v
        raise ValueError(f"unknown variant {value!r}; expected one of "
                         + ", ".join(v.value for v in cls))


def allowed_variants(mode: Mode | str) -> tuple[Variant, ...]:
    mode = Mode.parse(mode)
    if mode.is_old:
        return (Variant.SIZE, Variant.OLD_LEAF, Variant.NEITHER)
    return (Variant.SIZE, Variant.INNER, Variant.LEAF)


def variant_weights(mode: Mode | str, variant: Variant | str) -> tuple[int, int]:
    """Exponents of v attached to the two profile variables.

    For the leaf and path reductions the profile is (inner nodes, leaves); for
    the old reductions it is (neither nodes, old leaves), and an old leaf
    stands for itself plus its parent, hence weight 2 in the size variant.
    """
    mode = Mode.parse(mode)
    variant = Variant.parse(variant)
    if variant not in allowed_variants(mode):
        raise ValueError(f"variant {variant.value!r} is not defined for mode {mode.value!r}")
    if variant is Variant.SIZE:
        return (1, 2) if mode.is_old else (1, 1)
    if variant in (Variant.INNER, Variant.NEITHER):
        return (1, 0)
    return (0, 1)


def effective_leaf_rounds(mode: Mode | str, r: int) -> int:
    """Path cuts act like 2^(r+1) - 2 leaf cuts on the whole distribution."""
    mode = Mode.parse(mode)
    if mode is Mode.PATHS:
        return 2 ** (r + 1) - 2
    return r


# --------------------------------------------------------------------------
# bivariate closed forms and expansion operators

def tree_gf(order: int) -> TSeries2:
    """T(z, t) with z marking inner nodes and t marking leaves."""
    z = TSeries2.var(0, order)
    t = TSeries2.var(1, order)
    disc = 1 - 2 * (z + t) + (z - t) * (z - t)
    return (1 - (z - t) - disc.sqrt()) * Fraction(1, 2)


def old_leaf_gf(order: int) -> TSeries2:
    """L(z, w) with w marking old leaves and z marking nodes that are neither
    old leaves nor parents of old leaves."""
    z = TSeries2.var(0, order)
    w = TSeries2.var(1, order)
    disc = 1 - 4 * z - 4 * w + 4 * z * z
    return (1 - disc.sqrt()) * Fraction(1, 2)


def expansion_operator(mode: Mode | str, f: TSeries2) -> TSeries2:
    """Generating function of all trees whose one-round reduction lies in ``f``."""
    mode = Mode.parse(mode)
    n = f.order
    z = TSeries2.var(0, n)
    t = TSeries2.var(1, n)
    if mode is Mode.LEAVES:
        inv = (1 - t).inverse()
        inv2 = inv * inv
        return (1 - t) * f.substitute(z * inv2, z * t * inv2)
    if mode is Mode.PATHS:
        p = t * (1 - z).inverse()
        inv = (1 - p).inverse()
        inv2 = inv * inv
        return (1 - p) * f.substitute(z * inv2, z * p * p * inv2)
    if mode is Mode.OLD_LEAVES:
        return f.substitute(z + t, (2 * z + t) * t)
    p = t * (1 - z).inverse()
    return f.substitute(z + p, z * p + p * p)


# --------------------------------------------------------------------------
# tables of G_r(z, v)

def _zseries(poly: IntPolynomial, order: int, negate_arg: bool = False) -> USeries:
    coeffs = poly.coeffs
    if negate_arg:
        coeffs = [c if i % 2 == 0 else -c for i, c in enumerate(coeffs)]
    return USeries(coeffs, order)


@lru_cache(maxsize=None)
def _kernel(mode: Mode, r: int, order: int):
    """(prefactor, X, Y, family) with G_r = prefactor * K(X v^a, Y v^b), K = T or L."""
    z = USeries.monomial(1, order)
    if mode in (Mode.LEAVES, Mode.PATHS):
        R = effective_leaf_rounds(mode, r)
        p = _zseries(fibonacci_poly(R + 1), order, negate_arg=True)
        q = _zseries(fibonacci_poly(R + 2), order, negate_arg=True)
        q2 = q * q
        pre = q / p
        x = z * p * p / q2
        y = USeries.monomial(R + 1, order) / q2
        return pre, x, y, "T"
    if mode is Mode.OLD_LEAVES:
        b0 = _zseries(binary_height_poly(r), order)
        b1 = _zseries(binary_height_poly(r + 1), order)
        return USeries.one(order), z * b0, z * (b1 - b0), "L"
    p = _zseries(fibonacci_poly(r + 1), order, negate_arg=True)
    q = _zseries(fibonacci_poly(r + 2), order, negate_arg=True)
    x = z * p / q
    y = USeries.monomial(r + 2, order) / (q * q)
    return USeries.one(order), x, y, "L"


def _profiles(family: str, max_i: int, max_j: int):
    """Yield (i, j, count): trees with i inner (neither) nodes and j leaves (old leaves)."""
    if family == "T":
        yield 0, 1, 1
        for j in range(1, max_j + 1):
            for i in range(1, max_i + 1):
                yield i, j, narayana_number(i + j - 1, j)
    else:
        yield 1, 0, 1
        for j in range(1, max_j + 1):
            cj = catalan(j - 1)
            for i in range(0, max_i + 1):
                yield i, j, cj * math.comb(i + 2 * j - 2, i) * 2 ** i


@dataclass(frozen=True)
class GfTable:
    """Coefficients [z^n] G_r(z, v) for n = 0..order as integer v-coefficient tuples."""

    mode: Mode
    variant: Variant
    rounds: int
    order: int
    rows: tuple[tuple[int, ...], ...]

    def row(self, n: int) -> IntPolynomial:
        return IntPolynomial(self.rows[n])

    def survivors(self, n: int) -> int:
        return sum(self.rows[n])


@lru_cache(maxsize=None)
def gf_table(mode: Mode | str, variant: Variant | str, r: int, order: int) -> GfTable:
    """Exact table of G_r(z, v) up to z^order via the profile-kernel sum."""
    mode = Mode.parse(mode)
    variant = Variant.parse(variant)
    if r < 0 or order < 1:
        raise ValueError("need r >= 0 and order >= 1")
    wx, wy = variant_weights(mode, variant)
    pre, x, y, family = _kernel(mode, r, order)
    vx = x.valuation() or order + 1
    vy = y.valuation() or order + 1
    max_i = order // vx
    max_j = order // vy
    xp = [USeries.one(order)]
    for _ in range(max_i):
        xp.append(xp[-1] * x)
    yp = [USeries.one(order)]
    for _ in range(max_j):
        yp.append(yp[-1] * y)
    buckets: dict[int, list[int]] = {}
    for i, j, cnt in _profiles(family, max_i, max_j):
        if i * vx + j * vy > order or cnt == 0:
            continue
        term = xp[i] * yp[j]
        e = wx * i + wy * j
        acc = buckets.setdefault(e, [0] * (order + 1))
        for m, c in enumerate(term.coeffs):
            if c:
                acc[m] += cnt * c
    rows = [[0] for _ in range(order + 1)]
    for e, coeffs in buckets.items():
        scaled = pre * USeries(coeffs, order)
        for m, c in enumerate(scaled.coeffs):
            if c:
                row = rows[m]
                if len(row) <= e:
                    row.extend([0] * (e + 1 - len(row)))
                row[e] += c
    frozen = tuple(tuple(IntPolynomial(row).coeffs) for row in rows)
    return GfTable(mode, variant, r, order, frozen)


def _closed_form(family: str, x: USeries, y: USeries) -> USeries:
    if family == "T":
        disc = 1 - 2 * (x + y) + (x - y) * (x - y)
        return (1 - (x - y) - disc.sqrt()) / 2
    disc = 1 - 4 * x - 4 * y + 4 * x * x
    return (1 - disc.sqrt()) / 2


def gf_table_closed(mode: Mode | str, variant: Variant | str, r: int, order: int) -> GfTable:
    """Same table as :func:`gf_table`, computed from the algebraic closed form.

    Slower (square root of a series with polynomial coefficients); it exists
    as an independent cross-check of the profile sum.
    """
    mode = Mode.parse(mode)
    variant = Variant.parse(variant)
    wx, wy = variant_weights(mode, variant)
    pre, x, y, family = _kernel(mode, r, order)
    vx = IntPolynomial.monomial(wx)
    vy = IntPolynomial.monomial(wy)
    g = pre * _closed_form(family, x * vx, y * vy)
    rows = []
    for c in g.coeffs:
        poly = c if isinstance(c, IntPolynomial) else IntPolynomial((c,))
        rows.append(tuple(int(a) for a in poly.coeffs))
    return GfTable(mode, variant, r, order, tuple(rows))


def gf_derivative_coeffs(mode: Mode | str, variant: Variant | str, r: int, d: int,
                         order: int) -> list[int]:
    """[z^n] d-th v-derivative of G_r(z, v) at v = 1, for n = 0..order.

    Works for every mode and variant: v is replaced by 1 + q and the closed
    form is expanded with coefficients truncated after q^d.
    """
    mode = Mode.parse(mode)
    variant = Variant.parse(variant)
    if d < 1:
        raise ValueError("derivative order must be >= 1")
    wx, wy = variant_weights(mode, variant)
    pre, x, y, family = _kernel(mode, r, order)

    def one_plus_q_pow(k: int) -> TruncPoly:
        return TruncPoly([math.comb(k, j) for j in range(d + 1)], d)

    xq = x * one_plus_q_pow(wx)
    yq = y * one_plus_q_pow(wy)
    g = pre * _closed_form(family, xq, yq)
    out = []
    fact = math.factorial(d)
    for c in g.coeffs:
        val = c.c[d] if isinstance(c, TruncPoly) else 0
        out.append(val * fact)
    return out


# --------------------------------------------------------------------------
# closed moment forms in u

def _u(order: int) -> USeries:
    return USeries.monomial(1, order)


def _one_minus_pow(k: int, order: int) -> USeries:
    """1 - u^k."""
    return USeries.sparse({0: 1, k: -1}, order)


def _narayana_at_power(n: int, k: int, order: int) -> USeries:
    """Ñ_n(u^k) as a sparse series."""
    poly = narayana_assoc_poly(n)
    terms: dict[int, int] = {}
    for i, c in enumerate(poly.coeffs):
        if c:
            terms[i * k] = terms.get(i * k, 0) + c
    return USeries.sparse(terms, order)


def _leaves_x_series(R: int, d: int, order: int) -> USeries:
    u = _u(order)
    num = u ** d * _narayana_at_power(d - 1, R, order) * math.factorial(d)
    den = (1 + u) * _one_minus_pow(R + 1, order) ** d * _one_minus_pow(1, order) ** (d - 1)
    return num / den


def _leaves_l_series(R: int, d: int, order: int) -> USeries:
    poly = narayana_assoc_poly(d - 1)
    deg = int(poly.degree)
    rev = USeries.from_poly(poly.reversed_to(deg), order).shift(d * (R + 2) - deg)
    u = _u(order)
    num = rev * (1 - u) * math.factorial(d)
    den = (1 + u) * _one_minus_pow(R + 2, order) ** d * _one_minus_pow(R + 1, order) ** d
    return num / den


def _old_paths_size_series(r: int, d: int, order: int) -> USeries:
    u = _u(order)
    if d == 1:
        return (u * USeries.sparse({0: 1, r + 1: 1}, order)
                / ((1 + u) * _one_minus_pow(r + 2, order)))
    if d == 2:
        return (2 * (1 + u) * USeries.monomial(r + 2, order)
                / ((1 - u) * _one_minus_pow(r + 2, order) ** 2))
    return _old_paths_size_general(r, d, order)


def _old_paths_size_general(r: int, d: int, order: int) -> USeries:
    """d! (1-u)/(1+u) * alpha^d Ñ_{d-1}(beta/alpha) (+ the d = 1 boundary term)."""
    u = _u(order)
    one_minus_u = 1 - u
    a_part = u * USeries.sparse({0: 1, r + 1: 1}, order) / (one_minus_u * _one_minus_pow(r + 2, order))
    if r == 0:
        s_part = USeries.zero(order)
    else:
        s = (_one_minus_pow(r, order) / _one_minus_pow(r + 2, order)).sqrt()
        s_part = u * s / one_minus_u
    alpha = a_part + s_part
    beta = a_part - s_part
    total = USeries.zero(order)
    for k in range(1, d + 1):
        c = narayana_number(d - 1, k) if d > 1 else (1 if k == 1 else 0)
        if c:
            total = total + alpha ** (d - k) * beta ** k * c
    if d == 1:
        total = total + (alpha - beta) / 2
    return total * (one_minus_u / (1 + u)) * math.factorial(d)


def _old_paths_old_leaf_series(r: int, d: int, order: int) -> USeries:
    u = _u(order)
    coef = falling_factorial(2 * d - 2, d - 1)
    return ((1 - u) / (1 + u) * USeries.monomial(r * d + 2 * d, order)
            / _one_minus_pow(r + 2, order) ** (2 * d) * coef)


def _old_paths_neither_series(r: int, d: int, order: int) -> USeries:
    u = _u(order)
    if d == 1:
        return (u * _one_minus_pow(r + 1, order) * USeries.sparse({0: 1, r + 2: 1}, order)
                / ((1 + u) * _one_minus_pow(r + 2, order) ** 2))
    num = (_one_minus_pow(r + 1, order) ** d * u ** d * (2 ** d * math.factorial(d))
           * _narayana_at_power(d - 1, r + 2, order))
    den = (_one_minus_pow(1, order) ** (d - 1) * (1 + u)
           * _one_minus_pow(r + 2, order) ** (2 * d))
    return num / den


def has_closed_moment(mode: Mode | str, variant: Variant | str, d: int) -> bool:
    mode = Mode.parse(mode)
    variant = Variant.parse(variant)
    variant_weights(mode, variant)
    if mode is Mode.OLD_LEAVES:
        return variant is Variant.SIZE and d in (1, 2)
    return True


def moment_series(mode: Mode | str, variant: Variant | str, d: int, r: int, order: int) -> USeries:
    """The u-series whose [z^n] divided by C_{n-1} is the d-th factorial moment.

    Not available for the old-leaf reduction, whose closed forms live in z.
    """
    mode = Mode.parse(mode)
    variant = Variant.parse(variant)
    variant_weights(mode, variant)
    if d < 1:
        raise ValueError("moment order must be >= 1")
    if mode in (Mode.LEAVES, Mode.PATHS):
        R = effective_leaf_rounds(mode, r)
        if variant is Variant.SIZE:
            return _leaves_x_series(R, d, order)
        if variant is Variant.INNER:
            return _leaves_x_series(R + 1, d, order)
        return _leaves_l_series(R, d, order)
    if mode is Mode.OLD_PATHS:
        if variant is Variant.SIZE:
            return _old_paths_size_series(r, d, order)
        if variant is Variant.OLD_LEAF:
            return _old_paths_old_leaf_series(r, d, order)
        return _old_paths_neither_series(r, d, order)
    raise ValueError("the old-leaf reduction has no closed u-form; use the z-forms")


def _old_leaves_z_series(r: int, d: int, order: int) -> list[int]:
    """z-coefficients of the first two v-derivatives of G_r at v = 1.

    d = 1: z (2 - B) / sqrt(1 - 4z).
    d = 2: 2 z^2 (2 - B)^2 / (1 - 4z)^(3/2) + 2 z (1 - B) / sqrt(1 - 4z).
    The square on (2 - B) comes from differentiating the square root twice.
    """
    b = binary_height_poly(r)
    half = [math.comb(2 * m, m) for m in range(order + 1)]           # (1-4z)^(-1/2)
    three_half = [(2 * m + 1) * math.comb(2 * m, m) for m in range(order + 1)]  # (1-4z)^(-3/2)
    two_minus_b = [(2 if i == 0 else 0) - b[i] for i in range(order + 1)]
    one_minus_b = [(1 if i == 0 else 0) - b[i] for i in range(order + 1)]

    def conv(p, s, shift, scale):
        out = [0] * (order + 1)
        for i, pi in enumerate(p):
            if pi == 0:
                continue
            for m in range(order + 1 - i - shift):
                out[i + shift + m] += scale * pi * s[m]
        return out

    if d == 1:
        return conv(two_minus_b, half, 1, 1)
    sq = (IntPolynomial(two_minus_b) ** 2).coeffs[: order + 1]
    first = conv(sq, three_half, 2, 2)
    second = conv(one_minus_b, half, 1, 2)
    return [a + c for a, c in zip(first, second)]


def moment_table(mode: Mode | str, variant: Variant | str, d: int, r: int, order: int,
                 method: str = "closed") -> dict[int, Fraction]:
    """E of the d-th falling factorial of the statistic, for n = 2..order.

    ``method="closed"`` uses the closed forms where they exist and falls back
    to gf differentiation otherwise (old-leaf variants, old-leaf d >= 3);
    ``method="gf"`` always differentiates the generating function.
    """
    mode = Mode.parse(mode)
    variant = Variant.parse(variant)
    if method not in ("closed", "gf"):
        raise ValueError("method must be 'closed' or 'gf'")
    if order < 2:
        raise ValueError("tables start at n = 2")
    if method == "gf" or not has_closed_moment(mode, variant, d):
        raw = gf_derivative_coeffs(mode, variant, r, d, order)
        return {n: Fraction(raw[n], catalan(n - 1)) for n in range(2, order + 1)}
    if mode is Mode.OLD_LEAVES:
        raw = _old_leaves_z_series(r, d, order)
        return {n: Fraction(raw[n], catalan(n - 1)) for n in range(2, order + 1)}
    g = moment_series(mode, variant, d, r, order)
    return {n: Fraction(u_extract(g, n)) / catalan(n - 1) for n in range(2, order + 1)}


def _binom(n: int, k: int) -> int:
    return math.comb(n, k) if 0 <= k <= n else 0


def explicit_expectation(mode: Mode | str, n: int, r: int) -> Fraction:
    """E X_{n,r} from the alternating binomial sums (leaf and old-path reductions)."""
    mode = Mode.parse(mode)
    if n < 1 or r < 0:
        raise ValueError("need n >= 1 and r >= 0")
    m = n - 1
    if mode is Mode.LEAVES:
        step = r + 1
        total = 0
        ell = 1
        while m + 1 - ell * step >= 0:
            total += _binom(2 * m, m + 1 - ell * step) - _binom(2 * m, m - ell * step)
            ell += 1
        return Fraction(total, catalan(m))
    if mode is Mode.OLD_PATHS:
        step = r + 2
        total = _binom(2 * m, m)
        j = 0
        while m - j * step - 1 >= 0 or m - (j + 1) * step + 1 >= 0:
            total += _binom(2 * m, m - (j + 1) * step + 1) - _binom(2 * m, m - j * step - 1)
            j += 1
        return Fraction(total, catalan(m))
    raise ValueError("explicit binomial sums exist only for the leaf and old-path reductions")


# --------------------------------------------------------------------------
# expected totals

@lru_cache(maxsize=None)
def _total_paths_series(order: int, leading_shift: int = -1) -> USeries:
    """(1-u)/(1+u) * sum_{k = 2, 4, 8, ...} u^(k + shift) / ((1 - u^k)(1 - u^(k-1))).

    Each summand is the expected leaf count after one more round of path
    cuts.  The leaf moment of the reduced tree carries u^(k-1), so the
    default shift is -1; ``leading_shift=0`` gives the variant with u^k in
    the numerator, kept only for comparison.
    """
    coeffs = [0] * (order + 1)
    k = 2
    while k - 1 <= order:
        a, b = k, k - 1
        # u^(a + shift) / ((1 - u^a)(1 - u^b)) = sum_{i,j >= 0} u^(a + shift + a i + b j)
        start = a + leading_shift
        i = 0
        while start + a * i <= order:
            for e in range(start + a * i, order + 1, b):
                coeffs[e] += 1
            i += 1
        k *= 2
    u = _u(order)
    return USeries(coeffs, order) * (1 - u) / (1 + u)


@lru_cache(maxsize=None)
def _old_segments_series(order: int) -> USeries:
    # sum_{r>=0} u^{r+2}/(1-u^{r+2})^2 = sum_m (sigma(m) - m) u^m
    coeffs = [0] * (order + 1)
    for dv in range(2, order + 1):
        for m in range(dv, order + 1, dv):
            coeffs[m] += m // dv
    u = _u(order)
    return USeries(coeffs, order) * (1 - u) / (1 + u)


def total_paths_expectation_table(order: int) -> dict[int, Fraction]:
    """E P_n, the expected number of paths building a random tree, n = 2..order."""
    g = _total_paths_series(order)
    return {n: Fraction(u_extract(g, n), catalan(n - 1)) for n in range(2, order + 1)}


def old_path_segments_expectation_table(order: int) -> dict[int, Fraction]:
    """E S_n, the expected number of old-path segments, n = 2..order."""
    g = _old_segments_series(order)
    return {n: Fraction(u_extract(g, n), catalan(n - 1)) for n in range(2, order + 1)}
