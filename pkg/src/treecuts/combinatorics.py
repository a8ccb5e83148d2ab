"""Catalan and Narayana numbers, Fibonacci and binary-height polynomials.

Everything is exact: coefficients are Python ints (or ``Fraction`` when a
caller mixes them in).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

__all__ = [
    "IntPolynomial",
    "catalan",
    "narayana_number",
    "narayana_assoc_poly",
    "narayana_derivative_at_one",
    "fibonacci_poly",
    "binary_height_poly",
    "binary_height_at_quarter",
    "binary_height_jet",
    "falling_factorial",
]


class IntPolynomial:
    """Dense univariate polynomial; ``coeffs[i]`` is the coefficient of x**i.

    Trailing zeros are stripped, so the zero polynomial has no coefficients
    and ``degree == -inf``.  Evaluation uses Horner's scheme and works for any
    argument supporting ``+`` and ``*`` (numbers, other polynomials, series).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "IntPolynomial":
        return cls([0] * degree + [coeff])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == IntPolynomial((other,)).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "IntPolynomial(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{i}")
        return "IntPolynomial(" + " + ".join(terms) + ")"

    @staticmethod
    def _lift(other) -> "IntPolynomial":
        if isinstance(other, IntPolynomial):
            return other
        return IntPolynomial((other,))

    def __add__(self, other):
        if not isinstance(other, (IntPolynomial, int, Fraction)):
            return NotImplemented
        o = self._lift(other).coeffs
        a = self.coeffs
        n = max(len(a), len(o))
        return IntPolynomial((a[i] if i < len(a) else 0) + (o[i] if i < len(o) else 0)
                             for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, (IntPolynomial, int, Fraction)):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return IntPolynomial(c * other for c in self.coeffs)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = IntPolynomial((1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        if not self.coeffs:
            return 0 * x if not isinstance(x, (int, Fraction)) else 0
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def exact_div(self, d) -> "IntPolynomial":
        """Divide every coefficient by ``d``, keeping ints when the division is exact."""
        out = []
        for c in self.coeffs:
            if isinstance(c, int) and isinstance(d, int) and c % d == 0:
                out.append(c // d)
            else:
                out.append(Fraction(c) / d)
        return IntPolynomial(out)

    def derivative(self, k: int = 1) -> "IntPolynomial":
        c = self.coeffs
        return IntPolynomial(falling_factorial(i, k) * c[i] for i in range(k, len(c)))

    def reversed_to(self, degree: int) -> "IntPolynomial":
        """Coefficients of x**degree * p(1/x); requires ``degree >= self.degree``."""
        if self.coeffs and degree < self.degree:
            raise ValueError("degree too small for reversal")
        c = list(self.coeffs) + [0] * (degree + 1 - len(self.coeffs))
        return IntPolynomial(reversed(c))


def falling_factorial(k: int, d: int) -> int:
    out = 1
    for i in range(d):
        out *= k - i
    return out


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("catalan index must be nonnegative")
    return math.comb(2 * n, n) // (n + 1)


def narayana_number(n: int, k: int) -> int:
    """N(n, k) = binom(n, k-1) binom(n, k) / n, with N(0, 0) = 1 and zero elsewhere."""
    if n == 0 and k == 0:
        return 1
    if n < 1 or k < 1 or k > n:
        return 0
    return math.comb(n, k - 1) * math.comb(n, k) // n


@lru_cache(maxsize=None)
def _narayana_table(n_max: int) -> tuple[IntPolynomial, ...]:
    t = IntPolynomial.x()
    one_plus = IntPolynomial((1, 1))
    minus_sq = IntPolynomial((1, -2, 1))  # (t - 1)^2
    polys = [t, t]
    for m in range(0, n_max - 1):
        num = (2 * m + 3) * one_plus * polys[m + 1] - m * minus_sq * polys[m]
        coeffs = []
        for c in num.coeffs:
            q, rem = divmod(c, m + 3)
            if rem:
                raise ArithmeticError("Narayana recurrence produced a non-integer")
            coeffs.append(q)
        polys.append(IntPolynomial(coeffs))
    return tuple(polys[: n_max + 1])


def narayana_assoc_poly(n: int) -> IntPolynomial:
    """Associated Narayana polynomial t * N_n(t), built by the three-term recurrence."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    # grow the cached table in blocks so repeated calls stay cheap
    size = max(16, 1 << max(n, 1).bit_length())
    return _narayana_table(size)[n]


def narayana_derivative_at_one(n: int, d: int) -> int:
    """d-th derivative of the associated Narayana polynomial at 1.

    Summed directly from the Narayana numbers, independently of the recurrence
    used by :func:`narayana_assoc_poly`.
    """
    if n == 0:
        # the associated polynomial of index 0 is t
        return 1 if d <= 1 else 0
    return sum(narayana_number(n, k) * falling_factorial(k, d) for k in range(1, n + 1))


@lru_cache(maxsize=None)
def fibonacci_poly(r: int) -> IntPolynomial:
    """F_0 = 0, F_1 = 1, F_r = F_{r-1} + z F_{r-2}."""
    if r < 0:
        raise ValueError("index must be nonnegative")
    a, b = IntPolynomial(), IntPolynomial((1,))
    if r == 0:
        return a
    z = IntPolynomial.x()
    for _ in range(r - 1):
        a, b = b, b + z * a
    return b


@lru_cache(maxsize=None)
def binary_height_poly(r: int) -> IntPolynomial:
    """B_0 = 1, B_r = 1 + z B_{r-1}^2 (binary trees of height <= r by internal nodes)."""
    if r < 0:
        raise ValueError("index must be nonnegative")
    b = IntPolynomial((1,))
    z = IntPolynomial.x()
    for _ in range(r):
        b = 1 + z * b * b
    return b


def binary_height_at_quarter(r: int) -> tuple[int, int]:
    """B_r(1/4) as (a, e) with B_r(1/4) = a / 4^e, e = 2^r - 1.

    Uses b_r = 1 + b_{r-1}^2 / 4 on integer numerators, which avoids both the
    degree 2^r - 1 polynomial and gcd reductions.
    """
    if r < 0:
        raise ValueError("index must be nonnegative")
    a, e = 1, 0
    for _ in range(r):
        a, e = 4 ** (2 * e + 1) + a * a, 2 * e + 1
    return a, e


def binary_height_jet(r: int, z: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    """(B_r(z), B_r'(z), B_r''(z)) by differentiating B_r = 1 + z B_{r-1}^2."""
    if r < 0:
        raise ValueError("index must be nonnegative")
    b, b1, b2 = Fraction(1), Fraction(0), Fraction(0)
    for _ in range(r):
        b, b1, b2 = (1 + z * b * b,
                     b * b + 2 * z * b * b1,
                     4 * b * b1 + 2 * z * (b1 * b1 + b * b2))
    return b, b1, b2
