"""
Truncated series used by the polylogarithm engine.

``AnnulusElement`` holds a Laurent series in ``w`` (with ``u = 1/w``) over
degrees ``[-N, N]``; it stands in for rigid functions on the complement of
the residue disk about ``t = 1`` after the substitution ``t = w + 1``.
``PowerSeries`` is an ordinary truncated power series over ``[0, N]``.

Coefficients are ``PadicNumber`` values, with ``None`` meaning exact zero.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .padic import INF, PadicNumber, PrecisionError


def _plus(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a + b


def _minus(a, b):
    if b is None:
        return a
    if a is None:
        return -b
    return a - b


class AnnulusElement:
    """Laurent polynomial in w with degrees in [-order, order]."""

    __slots__ = ("prime", "order", "coeffs")

    def __init__(self, prime: int, order: int, coeffs=None):
        self.prime = prime
        self.order = order
        if coeffs is None:
            coeffs = [None] * (2 * order + 1)
        if len(coeffs) != 2 * order + 1:
            raise ValueError("expected %d coefficients" % (2 * order + 1))
        self.coeffs = coeffs

    @classmethod
    def monomial(cls, prime, order, degree, value):
        out = cls(prime, order)
        out[degree] = value
        return out

    @classmethod
    def from_dict(cls, prime, order, terms, prec):
        """Build from ``{degree: rational}`` at relative precision ``prec``."""
        out = cls(prime, order)
        for k, c in terms.items():
            if abs(k) > order:
                raise ValueError("degree %d outside truncation %d" % (k, order))
            if c != 0:
                out[k] = c if isinstance(c, PadicNumber) else PadicNumber.from_rational(c, prime, prec)
        return out

    def __getitem__(self, k):
        if -self.order <= k <= self.order:
            return self.coeffs[k + self.order]
        return None

    def __setitem__(self, k, value):
        if not -self.order <= k <= self.order:
            raise ValueError("degree %d outside truncation %d" % (k, self.order))
        self.coeffs[k + self.order] = value

    def degrees(self):
        return range(-self.order, self.order + 1)

    def items(self):
        for k, c in zip(self.degrees(), self.coeffs):
            if c is not None:
                yield k, c

    def copy(self):
        return AnnulusElement(self.prime, self.order, list(self.coeffs))

    def _same(self, other):
        if other.prime != self.prime or other.order != self.order:
            raise ValueError("incompatible annulus elements")

    def __add__(self, other):
        self._same(other)
        return AnnulusElement(self.prime, self.order,
                              [_plus(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._same(other)
        return AnnulusElement(self.prime, self.order,
                              [_minus(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return AnnulusElement(self.prime, self.order,
                              [None if a is None else -a for a in self.coeffs])

    def scale(self, c):
        if isinstance(c, PadicNumber) and c.is_exact_zero():
            return AnnulusElement(self.prime, self.order)
        return AnnulusElement(self.prime, self.order,
                              [None if a is None else a * c for a in self.coeffs])

    def shift(self, k: int):
        """Multiply by w**k, dropping anything pushed past the truncation."""
        out = AnnulusElement(self.prime, self.order)
        for d, c in self.items():
            if -self.order <= d + k <= self.order:
                out[d + k] = c
        return out

    def mul_geometric_w(self):
        """Multiply by (1 + w)**-1 expanded as sum of (-w)**k."""
        out = [None] * len(self.coeffs)
        prev = None
        for i, a in enumerate(self.coeffs):
            prev = _minus(a, prev)
            out[i] = prev
        return AnnulusElement(self.prime, self.order, out)

    def mul_poly_w(self, poly):
        """Multiply by a polynomial in w given as a list of coefficients."""
        out = AnnulusElement(self.prime, self.order)
        for j, c in enumerate(poly):
            if c == 0:
                continue
            for d, a in self.items():
                if d + j <= self.order:
                    out[d + j] = _plus(out[d + j], a * c)
        return out

    def div_poly_u(self, poly):
        """Solve y * D(u) = self where D(u) = sum poly[j] u**j and poly[0] = 1."""
        if poly[0] != 1:
            raise ValueError("leading coefficient of D must be 1")
        n = self.order
        y = AnnulusElement(self.prime, n)
        for m in range(n, -n - 1, -1):
            acc = self[m]
            for j in range(1, len(poly)):
                if m + j > n or poly[j] == 0:
                    continue
                term = y[m + j]
                if term is not None:
                    acc = _minus(acc, term * poly[j])
            y[m] = acc
        return y

    def residue(self):
        return self[-1]

    def derivative(self):
        out = AnnulusElement(self.prime, self.order)
        for d, a in self.items():
            if d != 0:
                out[d - 1] = a * d
        return out

    def primitive(self, working_prec=None):
        """Antiderivative in w with zero constant term; degree order+1 is dropped."""
        res = self.residue()
        if res is not None and not res.is_zero():
            if working_prec is None or res.val < working_prec:
                raise PrecisionError("form has residue %r and no primitive" % (res,))
        out = AnnulusElement(self.prime, self.order)
        for d, a in self.items():
            if d == -1 or d + 1 > self.order:
                continue
            out[d + 1] = a / (d + 1)
        return out

    def min_valuation(self, degrees=None):
        vals = []
        for d in degrees if degrees is not None else self.degrees():
            c = self[d]
            if c is not None:
                vals.append(c.val)
        return min(vals) if vals else INF

    def tail_bound(self, band=None):
        """Valuation estimate for the part of the series lost to truncation."""
        n = self.order
        if band is None:
            band = max(2, n // 8)
        outer = list(range(-n, -n + band)) + list(range(n - band + 1, n + 1))
        return self.min_valuation(outer)

    def evaluate(self, x, half_weight=0):
        """Value at t = x, i.e. at w = x - 1, with |x - 1| = 1."""
        w = x - 1
        if w.is_zero() or w.val != 0:
            raise ValueError("evaluation point must satisfy |x - 1| = 1")
        tail = self.tail_bound()
        if tail != INF and half_weight:
            tail -= half_weight * math.log(max(self.order, 2), self.prime)
            tail = math.floor(tail)
        winv = w.inverse()
        acc = None
        pw = None
        for d in range(0, self.order + 1):
            pw = w ** 0 if pw is None else pw * w
            c = self[d]
            if c is not None:
                acc = _plus(acc, c * pw)
        pw = None
        for d in range(-1, -self.order - 1, -1):
            pw = winv if pw is None else pw * winv
            c = self[d]
            if c is not None:
                acc = _plus(acc, c * pw)
        if acc is None:
            acc = PadicNumber.exact_zero(self.prime)
        if tail != INF:
            acc = acc.cap(tail)
        return acc

    def __repr__(self):
        terms = ["(%r)w^%d" % (c, d) for d, c in self.items()]
        return " + ".join(terms) if terms else "0"


class AnnulusForm:
    """The 1-form f dw with f an AnnulusElement."""

    __slots__ = ("coefficient",)

    def __init__(self, coefficient: AnnulusElement):
        self.coefficient = coefficient

    def __add__(self, other):
        return AnnulusForm(self.coefficient + other.coefficient)

    def __sub__(self, other):
        return AnnulusForm(self.coefficient - other.coefficient)

    def scale(self, c):
        return AnnulusForm(self.coefficient.scale(c))


def recenter(terms, prime, order, prec):
    """Pull back f(t, u) dt/t along t = w + 1, with u = 1/(t - 1) = 1/w.

    ``terms`` maps (i, j) to the coefficient of t**i u**j, i, j >= 0.
    """
    f = AnnulusElement(prime, order)
    for (i, j), c in terms.items():
        if c == 0:
            continue
        if i < 0 or j < 0:
            raise ValueError("only nonnegative powers of t and u are supported")
        if j > order or i - j > order:
            raise ValueError("term t^%d u^%d exceeds truncation %d" % (i, j, order))
        # t**i = sum binom(i, k) w**k
        for k in range(i + 1):
            d = k - j
            if d > order:
                raise ValueError("term t^%d u^%d exceeds truncation %d" % (i, j, order))
            f[d] = _plus(f[d], PadicNumber.from_rational(Fraction(c) * math.comb(i, k), prime, prec))
    return AnnulusForm(f.mul_geometric_w())


def res_disk1(form: AnnulusForm):
    r = form.coefficient.residue()
    return PadicNumber.exact_zero(form.coefficient.prime) if r is None else r


def primitive(form: AnnulusForm, working_prec=None) -> AnnulusElement:
    return form.coefficient.primitive(working_prec)


def evaluate_annulus(f: AnnulusElement, x, half_weight=0):
    return f.evaluate(x, half_weight)


class PowerSeries:
    """Truncated power series sum a_k T**k for 0 <= k <= order."""

    __slots__ = ("prime", "order", "coeffs")

    def __init__(self, prime: int, order: int, coeffs=None):
        self.prime = prime
        self.order = order
        if coeffs is None:
            coeffs = [None] * (order + 1)
        coeffs = list(coeffs)[: order + 1]
        coeffs += [None] * (order + 1 - len(coeffs))
        self.coeffs = coeffs

    @classmethod
    def constant(cls, prime, order, value):
        out = cls(prime, order)
        out.coeffs[0] = value
        return out

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k <= self.order else None

    def __add__(self, other):
        return PowerSeries(self.prime, self.order,
                           [_plus(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return PowerSeries(self.prime, self.order,
                           [_minus(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return PowerSeries(self.prime, self.order, [None if a is None else -a for a in self.coeffs])

    def scale(self, c):
        return PowerSeries(self.prime, self.order, [None if a is None else a * c for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return self.scale(other)
        n = self.order
        out = [None] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a is None:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b is not None:
                    out[i + j] = _plus(out[i + j], a * b)
        return PowerSeries(self.prime, n, out)

    def derivative(self):
        out = [None if a is None else a * k for k, a in enumerate(self.coeffs)][1:]
        return PowerSeries(self.prime, self.order, out)

    def integrate(self, constant=None):
        out = [constant] + [None if a is None else a / (k + 1) for k, a in enumerate(self.coeffs[:-1])]
        return PowerSeries(self.prime, self.order, out)

    def evaluate(self, T):
        acc = None
        for a in reversed(self.coeffs):
            acc = a if acc is None else _plus(acc * T, a)
        return PadicNumber.exact_zero(self.prime) if acc is None else acc

    def to_json(self):
        return [None if a is None else a.to_json() for a in self.coeffs]
