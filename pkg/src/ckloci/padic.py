"""
Fixed-precision p-adic numbers.

A nonzero value is stored as ``p**val * unit`` where ``unit`` is a residue
modulo ``p**prec`` prime to ``p``; ``prec`` is the relative precision. Two
kinds of zero exist: the exact zero (valuation infinite) and the inexact
zero ``O(p**k)`` which only says the value is divisible by ``p**k``.  The
latter is stored with ``val = k``, ``unit = 0`` and ``prec = 0``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

INF = math.inf


class PrecisionError(ArithmeticError):
    """Raised when a result would need digits that are not tracked."""


def valuation(n, p: int):
    """p-adic valuation of an integer or rational; infinite for zero."""
    if n == 0:
        return INF
    if isinstance(n, int):
        num, den = n, 1
    else:
        n = Fraction(n)
        num, den = n.numerator, n.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PadicNumber:
    __slots__ = ("prime", "val", "unit", "prec")

    def __init__(self, prime: int, val, unit: int, prec):
        # raw constructor; strips factors of p from the unit
        if val == INF:
            self.prime, self.val, self.unit, self.prec = prime, INF, 0, INF
            return
        if prec <= 0:
            self.prime, self.val, self.unit, self.prec = prime, val, 0, 0
            return
        unit %= prime ** prec
        if unit == 0:
            self.prime, self.val, self.unit, self.prec = prime, val + prec, 0, 0
            return
        while unit % prime == 0:
            unit //= prime
            val += 1
            prec -= 1
        self.prime, self.val, self.unit, self.prec = prime, val, unit, prec

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_rational(cls, q, prime: int, prec: int) -> "PadicNumber":
        """Rational ``q`` to relative precision ``prec``."""
        if prec < 1:
            raise ValueError("relative precision must be positive")
        q = Fraction(q)
        if q == 0:
            return cls.exact_zero(prime)
        v = valuation(q, prime)
        num, den = q.numerator, q.denominator
        if v > 0:
            num //= prime ** v
        elif v < 0:
            den //= prime ** (-v)
        m = prime ** prec
        return cls(prime, v, num * pow(den, -1, m) % m, prec)

    @classmethod
    def exact_zero(cls, prime: int) -> "PadicNumber":
        return cls(prime, INF, 0, INF)

    @classmethod
    def inexact_zero(cls, prime: int, abs_prec: int) -> "PadicNumber":
        return cls(prime, abs_prec, 0, 0)

    # -- inspection -----------------------------------------------------

    @property
    def abs_prec(self):
        return self.val + self.prec if self.prec else self.val

    def is_exact_zero(self) -> bool:
        return self.val == INF

    def is_zero(self) -> bool:
        """True when the value is indistinguishable from zero."""
        return self.unit == 0

    def norm(self) -> Fraction:
        """|x|_p; an inexact zero reports its upper bound p**-abs_prec."""
        if self.val == INF:
            return Fraction(0)
        return Fraction(1, self.prime ** self.val) if self.val >= 0 else Fraction(self.prime ** -self.val)

    def to_fraction(self) -> Fraction:
        """Rational representative with unit in [0, p**prec)."""
        if self.unit == 0:
            return Fraction(0)
        if self.val >= 0:
            return Fraction(self.unit * self.prime ** self.val)
        return Fraction(self.unit, self.prime ** -self.val)

    def rational_reconstruction(self) -> Fraction:
        """Smallest-height fraction in the known residue class, if one exists.

        Falls back to ``to_fraction`` when no a/b with |a|, |b| <= sqrt(M/2)
        represents the class modulo M = p**abs_prec.
        """
        if self.unit == 0:
            return Fraction(0)
        k = self.abs_prec
        if k == INF or k <= 0:
            return self.to_fraction()
        m = self.prime ** k
        target = self.residue(k) if self.val >= 0 else None
        if target is None:
            shifted = PadicNumber(self.prime, 0, self.unit, self.prec)
            return shifted.rational_reconstruction() / self.prime ** -self.val
        r0, r1 = m, int(target) % m
        s0, s1 = 0, 1
        bound = math.isqrt(m // 2)
        while r1 > bound:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
        if s1 == 0 or abs(s1) > bound or math.gcd(r1, abs(s1)) != 1:
            return self.to_fraction()
        return Fraction(r1, s1)

    def residue(self, k: int) -> Fraction:
        """Representative of the class modulo p**k (needs abs_prec >= k)."""
        if self.abs_prec < k:
            raise PrecisionError("only %s digits known, %s requested" % (self.abs_prec, k))
        if self.unit == 0 or self.val >= k:
            return Fraction(0)
        keep = k - self.val
        u = self.unit % self.prime ** keep
        return Fraction(u * self.prime ** self.val) if self.val >= 0 else Fraction(u, self.prime ** -self.val)

    def cap(self, abs_prec) -> "PadicNumber":
        """Forget digits beyond absolute precision ``abs_prec``."""
        if abs_prec >= self.abs_prec:
            return self
        if self.unit == 0 or self.val >= abs_prec:
            return PadicNumber(self.prime, abs_prec, 0, 0)
        return PadicNumber(self.prime, self.val, self.unit, abs_prec - self.val)

    def close_to(self, other, k) -> bool:
        """Certified |self - other| <= p**-k."""
        d = self - other
        return d.val >= k

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, q) -> "PadicNumber":
        if isinstance(q, PadicNumber):
            if q.prime != self.prime:
                raise ValueError("prime mismatch: %d vs %d" % (self.prime, q.prime))
            return q
        if not isinstance(q, (int, Rational)):
            return NotImplemented
        q = Fraction(q)
        if q == 0:
            return PadicNumber.exact_zero(self.prime)
        v = valuation(q, self.prime)
        if self.val == INF:
            prec = 40
        else:
            prec = max(self.prec, self.abs_prec - v, 1)
        return PadicNumber.from_rational(q, self.prime, prec)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.val == INF:
            return other
        if other.val == INF:
            return self
        p = self.prime
        absp = min(self.abs_prec, other.abs_prec)
        v = min(self.val, other.val)
        if v >= absp:
            return PadicNumber(p, absp, 0, 0)
        s = self.unit * p ** (self.val - v) + other.unit * p ** (other.val - v)
        return PadicNumber(p, v, s, absp - v)

    __radd__ = __add__

    def __neg__(self):
        if self.unit == 0:
            return self
        return PadicNumber(self.prime, self.val, -self.unit, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.val == INF or other.val == INF:
            return PadicNumber.exact_zero(self.prime)
        prec = min(self.prec, other.prec)
        if prec == 0:
            return PadicNumber(self.prime, self.val + other.val, 0, 0)
        return PadicNumber(self.prime, self.val + other.val, self.unit * other.unit, prec)

    __rmul__ = __mul__

    def inverse(self) -> "PadicNumber":
        if self.val == INF:
            raise ZeroDivisionError("division by exact zero")
        if self.unit == 0:
            raise PrecisionError("division by a value indistinguishable from zero")
        m = self.prime ** self.prec
        return PadicNumber(self.prime, -self.val, pow(self.unit, -1, m), self.prec)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return PadicNumber.from_rational(1, self.prime, max(self.prec, 1) if self.prec != INF else 40)
        if self.val == INF:
            return self
        if self.prec == 0:
            return PadicNumber(self.prime, self.val * n, 0, 0)
        m = self.prime ** self.prec
        return PadicNumber(self.prime, self.val * n, pow(self.unit, n, m), self.prec)

    def __eq__(self, other):
        try:
            d = self - other
        except (ValueError, TypeError):
            return False
        if d is NotImplemented:
            return NotImplemented
        return d.unit == 0

    __hash__ = None

    def __repr__(self):
        if self.val == INF:
            return "0"
        if self.unit == 0:
            return "O(%d^%d)" % (self.prime, self.val)
        return "%d*%d^%d + O(%d^%d)" % (self.unit, self.prime, self.val, self.prime, self.abs_prec)

    # -- external form --------------------------------------------------

    def to_json(self) -> dict:
        if self.val == INF:
            return {"p": self.prime, "val": "inf", "mantissa": "0", "prec": 0}
        return {"p": self.prime, "val": self.val, "mantissa": str(self.unit), "prec": self.prec}

    @classmethod
    def from_json(cls, d: dict) -> "PadicNumber":
        p = int(d["p"])
        if d["val"] == "inf":
            return cls.exact_zero(p)
        return cls(p, int(d["val"]), int(d["mantissa"]), int(d["prec"]))


def padic(q, p: int, prec: int) -> PadicNumber:
    return PadicNumber.from_rational(q, p, prec)


def iwasawa_log(u: PadicNumber) -> PadicNumber:
    """Iwasawa logarithm of a unit, via log(u) = log(u^(p-1)) / (p-1)."""
    if u.val != 0 or u.unit == 0:
        raise ValueError("iwasawa_log needs a unit, got %r" % (u,))
    p, r = u.prime, u.prec
    z = 1 - u ** (p - 1)
    if z.unit == 0:
        return PadicNumber.inexact_zero(p, r)
    vz = z.val
    # terms z^k/k have valuation >= k*vz - log_p(k); stop once past r
    kmax = 1
    while True:
        k = kmax + 1
        if k * vz - math.log(k, p) >= r + 1 and (k + 1) * vz - math.log(k + 1, p) >= r + 1:
            break
        kmax = k
    e = max(valuation(k, p) for k in range(1, kmax + 1))
    mod = p ** (r + e)
    zi = (z.unit * p ** vz) % mod
    acc, power = 0, 1
    for k in range(1, kmax + 1):
        power = power * zi % mod
        vk = valuation(k, p)
        acc += power * p ** (e - vk) * pow(k // p ** vk, -1, mod)
    s = PadicNumber(p, -e, acc, r + e).cap(r)
    return -s / (p - 1)
