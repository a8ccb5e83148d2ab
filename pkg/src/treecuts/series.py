"""Truncated power series with exact coefficients.

:class:`USeries` is univariate (the variable is usually ``u`` from the
substitution z = u/(1+u)^2, but nothing depends on the name).  Coefficients
may be ints, Fractions or :class:`~treecuts.combinatorics.IntPolynomial`;
multiplication skips zero coefficients, so products with sparse factors like
1 - u^k stay linear in the order.

:class:`TSeries2` is bivariate with total-degree truncation, used for the
expansion operators acting on f(z, t) or f(z, w).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .combinatorics import IntPolynomial

__all__ = [
    "SeriesOrderError",
    "TruncPoly",
    "USeries",
    "TSeries2",
    "u_extract",
    "binomial_series_coeffs",
]


class SeriesOrderError(ValueError):
    """Requested coefficient lies beyond the truncation order."""


def _is_zero(c) -> bool:
    return c == 0


def _exact_div(a, b):
    if b == 1:
        return a
    if b == -1:
        return -a
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    if hasattr(a, "exact_div"):
        return a.exact_div(b)
    return a / b


def binomial_series_coeffs(exponent: Fraction | int, order: int, scale=1) -> list:
    """Coefficients of (1 + scale*x)^exponent up to x^order."""
    exponent = Fraction(exponent)
    out = [Fraction(1)]
    for m in range(order):
        out.append(out[-1] * (exponent - m) / (m + 1) * scale)
    return [int(c) if c.denominator == 1 else c for c in out]


class TruncPoly:
    """Polynomial in an auxiliary variable q, truncated after q^degree.

    Used as a coefficient ring for :class:`USeries` when only the first few
    derivatives with respect to a marking variable are needed.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable, degree: int):
        c = list(coeffs)[: degree + 1]
        c.extend([0] * (degree + 1 - len(c)))
        self.c = c

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def _lift(self, other) -> "TruncPoly":
        if isinstance(other, TruncPoly):
            return other
        return TruncPoly([other], self.degree)

    def __eq__(self, other) -> bool:
        o = self._lift(other) if isinstance(other, (int, Fraction, TruncPoly)) else None
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __repr__(self) -> str:
        return f"TruncPoly({self.c})"

    def __add__(self, other):
        o = self._lift(other)
        return TruncPoly((a + b for a, b in zip(self.c, o.c)), self.degree)

    __radd__ = __add__

    def __neg__(self):
        return TruncPoly((-a for a in self.c), self.degree)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncPoly((a * other for a in self.c), self.degree)
        if not isinstance(other, TruncPoly):
            return NotImplemented
        d = self.degree
        out = [0] * (d + 1)
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j in range(d + 1 - i):
                b = other.c[j]
                if b:
                    out[i + j] += a * b
        return TruncPoly(out, d)

    __rmul__ = __mul__

    def exact_div(self, d) -> "TruncPoly":
        return TruncPoly((_exact_div(a, d) for a in self.c), self.degree)


class USeries:
    """Truncated univariate power series: ``coeffs[i]`` for i = 0..order."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int):
        c = list(coeffs)[: order + 1]
        if len(c) < order + 1:
            c.extend([0] * (order + 1 - len(c)))
        self.order = order
        self.coeffs = c

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, order: int) -> "USeries":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "USeries":
        return cls([1], order)

    @classmethod
    def monomial(cls, k: int, order: int, coeff=1) -> "USeries":
        if k > order:
            return cls.zero(order)
        return cls([0] * k + [coeff], order)

    @classmethod
    def from_poly(cls, poly: IntPolynomial | Sequence, order: int) -> "USeries":
        coeffs = poly.coeffs if isinstance(poly, IntPolynomial) else poly
        return cls(coeffs, order)

    @classmethod
    def sparse(cls, terms: dict[int, object], order: int) -> "USeries":
        c = [0] * (order + 1)
        for k, v in terms.items():
            if k <= order:
                c[k] += v
        return cls(c, order)

    @classmethod
    def geometric(cls, k: int, order: int, sign: int = 1) -> "USeries":
        """1/(1 - sign*u^k)."""
        c = [0] * (order + 1)
        coef = 1
        for i in range(0, order + 1, k):
            c[i] = coef
            coef *= sign
        return cls(c, order)

    # -- access -------------------------------------------------------
    def __getitem__(self, i: int):
        if i > self.order:
            raise SeriesOrderError(f"coefficient {i} beyond order {self.order}")
        return self.coeffs[i] if i >= 0 else 0

    def __len__(self) -> int:
        return self.order + 1

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if self.order >= 8 else ""
        return f"USeries([{shown}{more}], order={self.order})"

    def __eq__(self, other) -> bool:
        if isinstance(other, USeries):
            n = min(self.order, other.order)
            return all(self.coeffs[i] == other.coeffs[i] for i in range(n + 1))
        return NotImplemented

    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return i
        return None

    def truncate(self, order: int) -> "USeries":
        if order > self.order:
            raise SeriesOrderError("cannot extend a truncated series")
        return USeries(self.coeffs[: order + 1], order)

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "USeries":
        if isinstance(other, USeries):
            return other
        return USeries([other], self.order)

    def __add__(self, other):
        o = self._coerce(other)
        n = min(self.order, o.order)
        return USeries((self.coeffs[i] + o.coeffs[i] for i in range(n + 1)), n)

    __radd__ = __add__

    def __neg__(self):
        return USeries((-c for c in self.coeffs), self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, USeries):
            if isinstance(other, (int, Fraction, IntPolynomial, TruncPoly)):
                return USeries((c * other for c in self.coeffs), self.order)
            return NotImplemented
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        nz_a = [(i, c) for i, c in enumerate(a[: n + 1]) if not _is_zero(c)]
        nz_b = [(j, c) for j, c in enumerate(b[: n + 1]) if not _is_zero(c)]
        if len(nz_a) > len(nz_b):
            nz_a, nz_b = nz_b, nz_a
        out = [0] * (n + 1)
        for i, ai in nz_a:
            for j, bj in nz_b:
                if i + j > n:
                    break
                out[i + j] += ai * bj
        return USeries(out, n)

    def __rmul__(self, other):
        return self.__mul__(other)

    def inverse(self) -> "USeries":
        return USeries.one(self.order) / self

    def __truediv__(self, other):
        if not isinstance(other, USeries):
            return USeries((_exact_div(c, other) for c in self.coeffs), self.order)
        n = min(self.order, other.order)
        b = other.coeffs
        b0 = b[0]
        if _is_zero(b0):
            raise ZeroDivisionError("series division needs a nonzero constant term")
        nz_b = [(j, c) for j, c in enumerate(b[1: n + 1], start=1) if not _is_zero(c)]
        out = list(self.coeffs[: n + 1])
        for i in range(n + 1):
            acc = out[i]
            for j, bj in nz_b:
                if j > i:
                    break
                qc = out[i - j]
                if not _is_zero(qc):
                    acc = acc - bj * qc
            out[i] = _exact_div(acc, b0)
        return USeries(out, n)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int) -> "USeries":
        if k < 0:
            return USeries.one(self.order) / (self ** (-k))
        result = USeries.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, k: int) -> "USeries":
        """Multiply by u^k (k may be negative if the low coefficients vanish)."""
        if k >= 0:
            return USeries([0] * k + self.coeffs, self.order)
        if any(not _is_zero(c) for c in self.coeffs[:-k]):
            raise ValueError("negative shift would drop nonzero coefficients")
        return USeries(self.coeffs[-k:], self.order + k)

    def sqrt(self) -> "USeries":
        """Square root of a series with constant term 1."""
        if self.coeffs[0] != 1:
            raise ValueError("sqrt needs constant term 1")
        a = self.coeffs
        n = self.order
        s = [0] * (n + 1)
        s[0] = 1
        for m in range(1, n + 1):
            acc = a[m]
            for i in range(1, m):
                if not _is_zero(s[i]) and not _is_zero(s[m - i]):
                    acc = acc - s[i] * s[m - i]
            s[m] = _exact_div(acc, 2)
        return USeries(s, n)

    def compose_poly(self, poly: IntPolynomial) -> "USeries":
        """poly(self), truncated."""
        return poly(self) if poly.coeffs else USeries.zero(self.order)

    def map(self, fn: Callable) -> "USeries":
        return USeries((fn(c) for c in self.coeffs), self.order)


def u_extract(g: USeries, n: int):
    """[z^n] g(u(z)) where z = u/(1+u)^2, computed as [u^n] g(u) (1-u) (1+u)^(2n-1)."""
    if n < 0:
        return 0
    if n > g.order:
        raise SeriesOrderError(f"need order >= {n}, series has order {g.order}")
    if n == 0:
        return g.coeffs[0]
    m = 2 * n - 1
    total = 0
    coeffs = g.coeffs
    for k in range(n + 1):
        gk = coeffs[k]
        if gk == 0:
            continue
        j = n - k
        w = math.comb(m, j) - (math.comb(m, j - 1) if j >= 1 else 0)
        total += gk * w
    return total


class TSeries2:
    """Bivariate series truncated at total degree ``order``.

    Stored sparsely as ``{(i, j): coeff}`` for x^i y^j.
    """

    __slots__ = ("order", "terms")

    def __init__(self, terms: dict[tuple[int, int], object] | None, order: int):
        self.order = order
        self.terms = {k: v for k, v in (terms or {}).items()
                      if v != 0 and k[0] + k[1] <= order}

    @classmethod
    def var(cls, which: int, order: int) -> "TSeries2":
        return cls({(1, 0) if which == 0 else (0, 1): 1}, order)

    @classmethod
    def const(cls, c, order: int) -> "TSeries2":
        return cls({(0, 0): c}, order)

    def __repr__(self) -> str:
        items = sorted(self.terms.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0]))
        body = " + ".join(f"{c}*x^{i}y^{j}" for (i, j), c in items[:10])
        return f"TSeries2({body or 0}{' + ...' if len(items) > 10 else ''}, order={self.order})"

    def __eq__(self, other) -> bool:
        if isinstance(other, TSeries2):
            n = min(self.order, other.order)
            a = {k: v for k, v in self.terms.items() if k[0] + k[1] <= n}
            b = {k: v for k, v in other.terms.items() if k[0] + k[1] <= n}
            return a == b
        return NotImplemented

    def coeff(self, i: int, j: int):
        return self.terms.get((i, j), 0)

    def constant(self):
        return self.terms.get((0, 0), 0)

    def _coerce(self, other) -> "TSeries2":
        if isinstance(other, TSeries2):
            return other
        return TSeries2.const(other, self.order)

    def __add__(self, other):
        o = self._coerce(other)
        n = min(self.order, o.order)
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out.get(k, 0) + v
        return TSeries2(out, n)

    __radd__ = __add__

    def __neg__(self):
        return TSeries2({k: -v for k, v in self.terms.items()}, self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, TSeries2):
            if isinstance(other, (int, Fraction)):
                return TSeries2({k: v * other for k, v in self.terms.items()}, self.order)
            return NotImplemented
        n = min(self.order, other.order)
        out: dict[tuple[int, int], object] = {}
        for (i1, j1), a in self.terms.items():
            d1 = i1 + j1
            for (i2, j2), b in other.terms.items():
                if d1 + i2 + j2 > n:
                    continue
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + a * b
        return TSeries2(out, n)

    __rmul__ = __mul__

    def inverse(self) -> "TSeries2":
        c = self.constant()
        if c == 0:
            raise ZeroDivisionError("inverse needs a nonzero constant term")
        # self = c (1 - h), so 1/self = (1/c) sum h^k
        h = TSeries2({k: -_exact_div(v, c) for k, v in (self - c).terms.items()}, self.order)
        result = TSeries2.const(1, self.order)
        power = TSeries2.const(1, self.order)
        for _ in range(self.order):
            power = power * h
            if not power.terms:
                break
            result = result + power
        return result * _inv_scalar(c)

    def __truediv__(self, other):
        if isinstance(other, TSeries2):
            return self * other.inverse()
        return self * _inv_scalar(other)

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "TSeries2":
        if k < 0:
            return self.inverse() ** (-k)
        result = TSeries2.const(1, self.order)
        for _ in range(k):
            result = result * self
        return result

    def sqrt(self) -> "TSeries2":
        """Square root of a series with constant term 1 via the binomial series."""
        if self.constant() != 1:
            raise ValueError("sqrt needs constant term 1")
        h = self - 1
        coeffs = binomial_series_coeffs(Fraction(1, 2), self.order)
        result = TSeries2.const(1, self.order)
        power = TSeries2.const(1, self.order)
        for k in range(1, self.order + 1):
            power = power * h
            if not power.terms:
                break
            result = result + power * coeffs[k]
        return result

    def substitute(self, x: "TSeries2", y: "TSeries2") -> "TSeries2":
        """self(x, y); x and y must have zero constant term."""
        if x.constant() != 0 or y.constant() != 0:
            raise ValueError("substituted series need zero constant term")
        n = min(self.order, x.order, y.order)
        max_i = max((i for i, _ in self.terms), default=0)
        max_j = max((j for _, j in self.terms), default=0)
        xp = [TSeries2.const(1, n)]
        for _ in range(max_i):
            xp.append(xp[-1] * x)
        yp = [TSeries2.const(1, n)]
        for _ in range(max_j):
            yp.append(yp[-1] * y)
        out = TSeries2({}, n)
        for (i, j), c in self.terms.items():
            out = out + xp[i] * yp[j] * c
        return out


def _inv_scalar(c):
    if c in (1, -1):
        return int(c)
    return Fraction(1) / c
