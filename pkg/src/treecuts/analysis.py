"""Distributions, asymptotic predictions, CLT experiments and constants.

This module joins the exact machinery (enumeration, generating functions,
moment series) with the asymptotic theorems about the reductions.  Exact
values are ``Fraction``; predictions are floats.

The asymptotic formulas are hard-coded theorem statements.  Where the
displayed statements are inconsistent with exact data the corrected form is
used and the printed form is kept next to it for comparison (see
:func:`printed_old_paths_factorial`).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy import stats

from .combinatorics import IntPolynomial, binary_height_jet, catalan
from .ensemble import DEFAULT_ENUMERATION_CAP, EnumerationCapError, enumerate_trees, sample_final_sizes
from .gf import (
    Variant,
    allowed_variants,
    gf_table,
    moment_table,
    old_path_segments_expectation_table,
    total_paths_expectation_table,
)
from .reduction import Mode, reduce_iter
from .series import USeries

__all__ = [
    "Distribution",
    "MomentReport",
    "CLTReport",
    "UnsupportedStatistic",
    "brute_distribution",
    "gf_distribution",
    "paths_rank_distribution",
    "asymptotic_prediction",
    "printed_old_paths_factorial",
    "error_exponent",
    "clt_parameters",
    "clt_experiment",
    "constant_alpha",
    "CONSTANTS",
    "c0_paths",
    "total_asymptotics",
    "fluctuation_delta",
    "exact_statistic",
    "comparison_report",
    "totals_report",
]


# --------------------------------------------------------------------------
# distributions

@dataclass(frozen=True)
class Distribution:
    """Exact law of a statistic of the r-fold reduced tree of a uniform size-n tree.

    ``masses[k]`` is the probability of the value k, for k = 0..n.  For the
    size variant of the old reductions the mass at 0 is zero because these
    reductions never delete the root.
    """

    mode: Mode
    variant: Variant
    n: int
    rounds: int
    masses: tuple[Fraction, ...]

    def support(self) -> dict[int, Fraction]:
        return {k: p for k, p in enumerate(self.masses) if p}

    def factorial_moment(self, d: int) -> Fraction:
        return sum((p * _falling(k, d) for k, p in enumerate(self.masses)), Fraction(0))

    def mean(self) -> Fraction:
        return self.factorial_moment(1)

    def variance(self) -> Fraction:
        m1 = self.mean()
        return self.factorial_moment(2) + m1 - m1 * m1


def _falling(k: int, d: int) -> int:
    out = 1
    for i in range(d):
        out *= k - i
    return out


def _stat_index(variant: Variant) -> int:
    return {
        Variant.SIZE: 0,
        Variant.INNER: 1,
        Variant.LEAF: 2,
        Variant.OLD_LEAF: 3,
        Variant.NEITHER: 4,
    }[variant]


@lru_cache(maxsize=None)
def _census(n: int, rounds: int, cap: int) -> dict[tuple[Mode, int], Counter]:
    """Counter of (size, inner, leaves, old leaves, neither) per (mode, r), r = 0..rounds."""
    out: dict[tuple[Mode, int], Counter] = {
        (mode, r): Counter() for mode in Mode for r in range(rounds + 1)}
    zero = (0, 0, 0, 0, 0)
    for tree in enumerate_trees(n, cap):
        for mode in Mode:
            outcome = reduce_iter(tree, mode, rounds)
            for r in range(rounds + 1):
                if r <= outcome.rounds_applied:
                    m = outcome.per_round[r]
                    key = (m.size, m.inner_count, m.leaf_count, m.old_leaf_count,
                           m.neither_count)
                else:
                    key = zero
                out[(mode, r)][key] += 1
    return out


def brute_distribution(mode: Mode | str, n: int, r: int, variant: Variant | str = Variant.SIZE,
                       cap: int = DEFAULT_ENUMERATION_CAP) -> Distribution:
    """Exhaustive census over all C_{n-1} trees; non-survivors count as 0."""
    mode = Mode.parse(mode)
    variant = Variant.parse(variant)
    if variant not in allowed_variants(mode):
        raise ValueError(f"variant {variant.value!r} is not defined for mode {mode.value!r}")
    if n > cap:
        raise EnumerationCapError(f"size {n} exceeds the enumeration cap {cap}")
    if r < 0:
        raise ValueError("rounds must be nonnegative")
    census = _census(n, max(5, r), cap)[(mode, r)]
    idx = _stat_index(variant)
    counts = [0] * (n + 1)
    for key, c in census.items():
        counts[key[idx]] += c
    total = catalan(n - 1)
    return Distribution(mode, variant, n, r, tuple(Fraction(c, total) for c in counts))


def _table_order(n: int) -> int:
    # round up so that neighbouring sizes share one cached table
    return max(16, -(-n // 16) * 16)


def gf_distribution(mode: Mode | str, n: int, r: int,
                    variant: Variant | str = Variant.SIZE) -> Distribution:
    """The same law read off the coefficient table of G_r(z, v).

    Trees that do not survive are absent from G_r; their number
    C_{n-1} - [z^n] G_r(z, 1) is added to the mass at 0.
    """
    mode = Mode.parse(mode)
    variant = Variant.parse(variant)
    if n < 1 or r < 0:
        raise ValueError("need n >= 1 and r >= 0")
    total = catalan(n - 1)
    if n == 1:
        # the table starts at z^1 only for the old reductions; handle the
        # single node by its definition
        return brute_distribution(mode, 1, r, variant)
    table = gf_table(mode, variant, r, _table_order(n))
    row = table.rows[n]
    counts = [0] * (n + 1)
    for k, c in enumerate(row):
        counts[k] += c
    counts[0] += total - sum(row)
    return Distribution(mode, variant, n, r, tuple(Fraction(c, total) for c in counts))


def paths_rank_distribution(n: int, r: int) -> Distribution:
    """Law of the size after r path cuts, from a recursion on removal ranks.

    The rank of a node is the round in which path cuts delete it: 1 for a
    leaf, otherwise the largest child rank if it is attained once and one
    more if it is attained at least twice.  After r rounds exactly the nodes
    of rank > r remain.  With F_j the generating function of trees whose root
    has rank j (v marking nodes of rank > r), S_j = F_1 + ... + F_j and
    Q_j = 1/(1 - S_j):

        F_1 = z w_1 / (1 - z w_1)          (rank 1 means the subtree is a path),
        F_j = z w_j A_j / (1 - z w_j Q_{j-1}^2),
        A_j = Q_{j-1} - Q_{j-2} - F_{j-1} Q_{j-2}^2,

    where w_j = v for j > r and 1 otherwise.  This is independent of the
    leaf-cut kernels, so it checks the path/leaf correspondence honestly.
    """
    if n < 1 or r < 0:
        raise ValueError("need n >= 1 and r >= 0")
    order = n
    v = IntPolynomial.x()
    one = IntPolynomial((1,))

    def weight(j: int) -> IntPolynomial:
        return v if j > r else one

    z = USeries.monomial(1, order)
    f_prev = (z * weight(1)) / (1 - z * weight(1))
    q_prevprev = USeries.one(order)                 # Q_0 = 1/(1 - 0)
    s = f_prev
    q_prev = USeries.one(order) / (1 - s)           # Q_1
    total = f_prev
    j = 2
    # a root of rank j needs at least 2^j - 1 nodes
    while 2 ** j - 1 <= n:
        w = weight(j)
        a = q_prev - q_prevprev - f_prev * q_prevprev * q_prevprev
        f = (z * w * a) / (1 - z * w * q_prev * q_prev)
        total = total + f
        s = s + f
        q_prevprev, q_prev, f_prev = q_prev, USeries.one(order) / (1 - s), f
        j += 1
    row = total.coeffs[n]
    row = row if isinstance(row, IntPolynomial) else IntPolynomial((row,))
    denom = catalan(n - 1)
    masses = tuple(Fraction(row[k], denom) for k in range(n + 1))
    if sum(masses) != 1:
        raise ArithmeticError("rank recursion lost trees")
    return Distribution(Mode.PATHS, Variant.SIZE, n, r, masses)


# --------------------------------------------------------------------------
# asymptotic theorem statements

class UnsupportedStatistic(ValueError):
    """No theorem covers the requested (mode, variant, statistic)."""


def _b_at_quarter(r: int) -> tuple[Fraction, Fraction]:
    b, b1, _ = binary_height_jet(r, Fraction(1, 4))
    return b, b1


def _leaf_cut_prediction(R: int, statistic: str, n: float, d: int) -> float:
    if statistic == "mean":
        return n / (R + 1) - R * (R - 1) / (6 * (R + 1))
    if statistic == "variance":
        return R * (R + 2) * n / (6 * (R + 1) ** 2)
    lead = n ** d / (R + 1) ** d
    second = d * (d * R * R - 4 * d * R - 3 * R * R - 6 * d + 6 * R + 6) / (12 * (R + 1) ** d)
    return lead + second * n ** (d - 1)


def _path_cut_prediction(r: int, statistic: str, n: float, d: int) -> float:
    a = 2 ** (r + 1) - 1
    if statistic == "mean":
        return n / a - (2 ** r - 1) * (2 ** (r + 1) - 3) / (3 * a)
    if statistic == "variance":
        return 2 ** (r + 1) * (2 ** r - 1) * n / (3 * a * a)
    second = d * (4 ** (r + 1) * d - 2 ** (r + 4) * d - 3 * 4 ** (r + 1) + 9 * 2 ** (r + 2)
                  + 6 * d - 18) / (12 * a ** d)
    return n ** d / a ** d + second * n ** (d - 1)


def asymptotic_prediction(mode: Mode | str, variant: Variant | str, statistic: str, n: float,
                          r: int, d: int = 1) -> float:
    """Evaluate the theorem's expansion for the statistic, dropping the error term.

    ``statistic`` is ``"mean"``, ``"variance"`` or ``"factorial"`` (with order
    ``d``).  Covered combinations:

    * leaves: size (all three), inner (via I_{n,r} = X_{n,r+1} in law) and the
      mean of the leaf count (as a difference of the two);
    * paths: size;
    * old-leaves: size mean and variance;
    * old-paths: size mean, variance and factorial moments d >= 3 (leading
      term), old-leaf and neither counts (mean, variance, factorial d >= 2).
    """
    mode = Mode.parse(mode)
    variant = Variant.parse(variant)
    if statistic not in ("mean", "variance", "factorial"):
        raise ValueError("statistic must be 'mean', 'variance' or 'factorial'")
    if variant not in allowed_variants(mode):
        raise ValueError(f"variant {variant.value!r} is not defined for mode {mode.value!r}")
    if statistic == "factorial":
        if d < 1:
            raise ValueError("factorial moment order must be >= 1")
        if d == 1:
            statistic = "mean"
    if r < 0:
        raise ValueError("rounds must be nonnegative")

    def missing(what: str):
        return UnsupportedStatistic(
            f"no theorem gives the {what} for mode {mode.value!r}, variant {variant.value!r}")

    if mode is Mode.LEAVES:
        if variant is Variant.SIZE:
            return _leaf_cut_prediction(r, statistic, n, d)
        if variant is Variant.INNER:
            return _leaf_cut_prediction(r + 1, statistic, n, d)
        if statistic == "mean":
            return _leaf_cut_prediction(r, "mean", n, 1) - _leaf_cut_prediction(r + 1, "mean", n, 1)
        raise missing(f"{statistic} of the leaf count")

    if mode is Mode.PATHS:
        if variant is Variant.SIZE:
            return _path_cut_prediction(r, statistic, n, d)
        raise missing(statistic)

    if mode is Mode.OLD_LEAVES:
        if variant is not Variant.SIZE:
            raise missing(statistic)
        b, b1 = _b_at_quarter(r)
        if statistic == "mean":
            return float(2 - b) * n - float(b1 / 8)
        if statistic == "variance":
            return float(b - b * b + (2 - b) * b1 / 2) * n
        raise missing(f"factorial moment of order {d}")

    # old paths
    k = r + 2
    if variant is Variant.SIZE:
        if statistic == "mean":
            return 2 * n / k - r * (r + 1) / (3 * k)
        if statistic == "variance":
            return 2 * r * (r + 1) * n / (3 * k * k)
        if d == 2:
            raise missing("second factorial moment")
        return (2 * n / k) ** d
    if variant is Variant.OLD_LEAF:
        if statistic == "mean":
            return n / k ** 2 + (r + 3) * (r + 1) / (6 * k ** 2)
        if statistic == "variance":
            return (r + 3) * (r + 1) * n / (3 * k ** 4)
        return (n / k ** 2) ** d
    if statistic == "mean":
        return 2 * (r + 1) * n / k ** 2 - (r * r + 3 * r + 3) * (r + 1) / (3 * k ** 2)
    if statistic == "variance":
        return 2 * (r ** 3 + 4 * r * r + 6 * r + 6) * (r + 1) * n / (3 * k ** 4)
    return (2 * (r + 1) * n / k ** 2) ** d


def printed_old_paths_factorial(d: int, r: int, n: float) -> float:
    """The two-term old-path size expansion for d >= 3 exactly as displayed.

    Exact moments contradict it: the leading coefficient behaves like
    (2/(r+2))^d, as concentration around 2n/(r+2) forces, and there is no
    n^(d - 1/2) term.  Kept only so the discrepancy can be shown.
    """
    if d < 3:
        raise ValueError("the displayed expansion is stated for d >= 3")
    lead = 2 ** (d - 1) * d / ((2 * d - 3) * (r + 2) ** d)
    second = (math.comb(2 * d - 5, d - 2) * math.sqrt(r * math.pi) * d
              / (2 ** (d - 3) * (r + 2) ** (d - 0.5)))
    return lead * n ** d + second * n ** (d - 0.5)


def error_exponent(mode: Mode | str, statistic: str, d: int = 1) -> float:
    """Exponent e of the theorem's error term O(n^e) for the statistic."""
    mode = Mode.parse(mode)
    if statistic == "factorial" and d == 1:
        statistic = "mean"
    if statistic == "mean":
        return -1.0
    if statistic == "variance":
        return 0.0
    if mode in (Mode.LEAVES, Mode.PATHS):
        return d - 1.5
    return d - 1.0


# --------------------------------------------------------------------------
# exact statistics

def _order_for(n: int) -> int:
    return max(16, -(-n // 50) * 50)


def exact_statistic(mode: Mode | str, variant: Variant | str, statistic: str, n: int, r: int,
                    d: int = 1, method: str = "closed") -> Fraction:
    """Exact mean, variance or d-th factorial moment from the moment tables.

    ``method`` is passed to :func:`~treecuts.gf.moment_table` (``"closed"``
    or ``"gf"``).
    """
    mode = Mode.parse(mode)
    variant = Variant.parse(variant)
    if n < 2:
        raise ValueError("exact tables start at n = 2")
    order = _order_for(n)
    if statistic == "mean" or (statistic == "factorial" and d == 1):
        return moment_table(mode, variant, 1, r, order, method)[n]
    if statistic == "variance":
        m1 = moment_table(mode, variant, 1, r, order, method)[n]
        m2 = moment_table(mode, variant, 2, r, order, method)[n]
        return m2 + m1 - m1 * m1
    if statistic == "factorial":
        return moment_table(mode, variant, d, r, order, method)[n]
    raise ValueError("statistic must be 'mean', 'variance' or 'factorial'")


@dataclass(frozen=True)
class MomentReport:
    n: int
    r: int | None
    mode: str
    variant: str
    statistic: str
    exact_value: Fraction
    asymptotic_value: float
    residual: float
    residual_scaled: float


def comparison_report(mode: Mode | str, variant: Variant | str, statistic: str, r: int,
                      sizes: Sequence[int], d: int = 1,
                      method: str = "closed") -> list[MomentReport]:
    """Exact value, theorem value and residual (scaled by n^(-e)) for each size."""
    mode = Mode.parse(mode)
    variant = Variant.parse(variant)
    e = error_exponent(mode, statistic, d)
    label = statistic if statistic != "factorial" else f"factorial({d})"
    out = []
    for n in sizes:
        exact = exact_statistic(mode, variant, statistic, n, r, d, method)
        pred = asymptotic_prediction(mode, variant, statistic, n, r, d)
        res = float(exact - Fraction(pred))
        out.append(MomentReport(n, r, mode.value, variant.value, label, exact, pred, res,
                                res * n ** (-e)))
    return out


# --------------------------------------------------------------------------
# constants and the expected totals

# 30-digit literals; tests re-derive each one independently.
CONSTANTS = {
    "gamma": Decimal("0.577215664901532860606512090082"),
    "zeta_prime_minus_1": Decimal("-0.165421143700450929213919660243"),
    "pi_squared": Decimal("9.86960440108935861883449099988"),
    "log2": Decimal("0.693147180559945309417232121458"),
}


def constant_alpha(precision: int = 30) -> Decimal:
    """alpha = sum_{k >= 1} 1/(2^k - 1), rounded to ``precision`` decimals.

    Partial sums stop once the tail bound 2 * 2^(-k) is below the target.
    """
    if not 0 <= precision <= 50:
        raise ValueError("precision must be between 0 and 50 digits")
    with localcontext() as ctx:
        ctx.prec = precision + 20
        target = Decimal(10) ** (-(precision + 5))
        total = Decimal(0)
        k = 1
        while True:
            total += Decimal(1) / (Decimal(2) ** k - 1)
            if Decimal(2) * Decimal(2) ** (-k) < target:
                break
            k += 1
        return total.quantize(Decimal(10) ** -precision)


def c0_paths() -> float:
    """Constant term of the E P_n expansion."""
    g = float(CONSTANTS["gamma"])
    zp = float(CONSTANTS["zeta_prime_minus_1"])
    log2 = float(CONSTANTS["log2"])
    a = float(constant_alpha(30))
    return -(g + 4 * (a - 1) * log2 + log2 + 24 * zp + 2) / (12 * log2)


def total_asymptotics(kind: str, n: float) -> float:
    """Deterministic part of the expansion of E P_n or E S_n."""
    if n < 2:
        raise ValueError("need n >= 2")
    kind = kind.strip().lower().replace("_", "-")
    if kind == "paths":
        a = float(constant_alpha(30))
        return (a - 1) * n + math.log(n) / (6 * math.log(4)) + c0_paths()
    if kind == "old-path-segments":
        p2 = float(CONSTANTS["pi_squared"])
        return (p2 / 6 - 1) * n - p2 / 36 - 1 / 12 - p2 / (120 * n)
    raise ValueError("kind must be 'paths' or 'old-path-segments'")


def fluctuation_delta(x: float, terms: int = 12) -> float:
    """The periodic fluctuation of the E P_n expansion, evaluated at x = log_4 n.

    delta(x) = (1/log 2) sum_{k != 0} (chi_k - 1) Gamma(chi_k/2) zeta(chi_k - 1) e^{2k pi i x}
    with chi_k = 2 k pi i / log 2.  Terms decay like exp(-pi^2 k / (2 log 2)),
    so a dozen terms give full double precision.  Diagnostic only.
    """
    import mpmath

    with mpmath.workdps(30):
        log2 = mpmath.log(2)
        s = mpmath.mpf(0)
        for k in range(1, terms + 1):
            chi = 2j * k * mpmath.pi / log2
            term = (chi - 1) * mpmath.gamma(chi / 2) * mpmath.zeta(chi - 1) \
                * mpmath.exp(2j * k * mpmath.pi * x)
            s += 2 * mpmath.re(term)     # the k and -k terms are conjugate
        return float(s / log2)


@lru_cache(maxsize=None)
def _totals_table(kind: str, order: int) -> dict[int, Fraction]:
    if kind == "paths":
        return total_paths_expectation_table(order)
    return old_path_segments_expectation_table(order)


def totals_report(kind: str, sizes: Sequence[int]) -> list[MomentReport]:
    """Exact E P_n or E S_n against the deterministic expansion.

    For E S_n the residual is scaled by n^2 (error O(n^-2)); for E P_n the
    bounded fluctuation dominates, so the residual is reported unscaled.
    """
    kind = kind.strip().lower().replace("_", "-")
    if kind not in ("paths", "old-path-segments"):
        raise ValueError("kind must be 'paths' or 'old-path-segments'")
    table = _totals_table(kind, max(sizes))
    scale = 2 if kind == "old-path-segments" else 0
    out = []
    for n in sizes:
        exact = table[n]
        pred = total_asymptotics(kind, n)
        res = float(exact - Fraction(pred))
        out.append(MomentReport(n, None, kind, "total", "mean", exact, pred, res, res * n ** scale))
    return out


# --------------------------------------------------------------------------
# central limit theorems

@dataclass(frozen=True)
class CLTReport:
    mode: str
    n: int
    rounds: int
    samples: int
    seed: int
    mu: float
    sigma2: float
    standardized_mean: float
    standardized_variance: float
    ks_distance: float
    theorem: bool


def clt_parameters(mode: Mode | str, r: int) -> tuple[float, float]:
    """(mu, sigma^2) with E X ~ mu n and V X ~ sigma^2 n, from the theorems."""
    mode = Mode.parse(mode)
    mu = asymptotic_prediction(mode, Variant.SIZE, "mean", 1.0, r) \
        - asymptotic_prediction(mode, Variant.SIZE, "mean", 0.0, r)
    sigma2 = asymptotic_prediction(mode, Variant.SIZE, "variance", 1.0, r)
    return mu, sigma2


def clt_experiment(mode: Mode | str, n: int, r: int, samples: int, seed: int,
                   exploratory: bool = False) -> CLTReport:
    """Standardize sampled reduced sizes with the theorem's mu and sigma^2.

    The old-path reduction has no central limit theorem; it is refused unless
    ``exploratory`` is set, and then the report says ``theorem=False``.
    """
    mode = Mode.parse(mode)
    if mode is Mode.OLD_PATHS and not exploratory:
        raise UnsupportedStatistic("no central limit theorem is stated for the old-path reduction")
    if n < 1 or samples < 1:
        raise ValueError("need n >= 1 and samples >= 1")
    mu, sigma2 = clt_parameters(mode, r)
    if sigma2 <= 0:
        raise ValueError(f"sigma^2 = 0 for mode {mode.value!r} with r = {r}; nothing to standardize")
    sizes = sample_final_sizes(mode, n, r, samples, seed)
    z = (sizes - mu * n) / math.sqrt(sigma2 * n)
    ks = stats.kstest(z, "norm").statistic
    return CLTReport(mode.value, n, r, samples, int(seed), mu, sigma2, float(np.mean(z)),
                     float(np.mean(z * z) - np.mean(z) ** 2), float(ks),
                     mode is not Mode.OLD_PATHS)
