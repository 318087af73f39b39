"""
Local power-series expansions of loci polynomials about a point y of good
reduction, in the variable T = t - y.

log and Li_k are expanded from d log = dt/t, d Li_1 = dt/(1 - t) and
d Li_k = Li_{k-1} dt/t, seeded with their values at y from the Frobenius
engine; basis symbols are replaced by their p-adic periods.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .frobenius import engine
from .padic import PadicNumber, valuation
from .series import PowerSeries


class ForbiddenDisk(ValueError):
    pass


@dataclass
class LocalExpansion:
    center: Fraction
    prime: int
    coeffs: list
    r: int = 1
    half_weight: int = 1
    scale_exponent: int = 0      # the series is p**scale_exponent * F

    @property
    def order(self):
        return len(self.coeffs) - 1

    def evaluate(self, t):
        T = PadicNumber.from_rational(Fraction(t) - self.center, self.prime, _prec(self.coeffs))
        return PowerSeries(self.prime, self.order, self.coeffs).evaluate(T)

    def rational_coeffs(self, abs_prec=None):
        out = []
        for c in self.coeffs:
            if c is None or c.is_zero():
                out.append(Fraction(0))
            else:
                out.append((c if abs_prec is None else c.cap(abs_prec)).to_fraction())
        return out

    def to_json(self):
        return {"center": str(self.center), "p": self.prime, "r": self.r,
                "coeffs": [None if c is None else c.to_json() for c in self.coeffs]}


def _prec(coeffs):
    vals = [c.prec for c in coeffs if c is not None and c.prec]
    return max(vals) if vals else 20


def _check_center(y, p):
    y = Fraction(y)
    if valuation(y, p) != 0 or valuation(1 - y, p) != 0:
        raise ForbiddenDisk("center %s lies in a residue disk of 0, 1 or infinity" % y)
    return y


def _geometric(a, p, N, prec, sign):
    """Series of 1/(a + sign*T) about T = 0."""
    inv = PadicNumber.from_rational(1 / a, p, prec)
    out = []
    cur = inv
    q = PadicNumber.from_rational(-sign / a, p, prec)
    for _ in range(N + 1):
        out.append(cur)
        cur = cur * q
    return PowerSeries(p, N, out)


def function_expansions(y, p, n, N, prec):
    """{"log": series, "Li1": ..., ..., "Lin": ...} about y."""
    y = _check_center(y, p)
    vals = engine(p, max(n, 1), prec).values(y)
    inv_t = _geometric(y, p, N, prec, 1)            # 1/(y + T)
    inv_1mt = _geometric(1 - y, p, N, prec, -1)     # 1/(1 - y - T)
    out = {"log": inv_t.integrate(vals[(0,)])}
    prev = inv_1mt.integrate(vals[(1,)])
    out["Li1"] = prev
    for k in range(2, n + 1):
        prev = (prev * inv_t).integrate(vals[(0,) * (k - 1) + (1,)])
        out["Li%d" % k] = prev
    return out


def expand_polylog(F, label_values, y, p, N, prec=20, r=1):
    """Expansion of a PolylogPolynomial about y to order N.

    The result is rescaled by a power of p so that its coefficients obey
    v(a_k) >= -h log_p k with h the weight of F in log and Li_k.  Each
    function series satisfies that bound with h its own weight, shifted by the
    least valuation m of the function values at y; a monomial with d
    function factors is shifted by d*m plus the valuation of its constant.
    """
    y = _check_center(y, p)
    series = function_expansions(y, p, F.depth, N, prec)
    m = min([0] + [s.coeffs[0].val for s in series.values() if not s.coeffs[0].is_zero()])
    one = PadicNumber.from_rational(1, p, prec)
    total = PowerSeries(p, N)
    shift = 0
    for c, mon in F.terms():
        term = PowerSeries.constant(p, N, one * c)
        offset = valuation(c, p)
        for name, e in mon.items():
            if name in series:
                offset += e * m
                for _ in range(e):
                    term = term * series[name]
            else:
                if name not in label_values:
                    raise KeyError("no period bound for %s" % name)
                v = label_values[name]
                offset += e * (v.val if not v.is_zero() else 0)
                for _ in range(e):
                    term = term.scale(v)
        shift = min(shift, offset)
        total = total + term
    if shift < 0:
        total = total.scale(PadicNumber.from_rational(Fraction(p) ** -shift, p, prec))
    coeffs = [c if c is not None else PadicNumber.exact_zero(p) for c in total.coeffs]
    return LocalExpansion(y, p, coeffs, r, max(1, F.function_weight()), -shift)


def evaluate_polylog(F, label_values, x, p, prec=20):
    """Direct value of F at a point x of good reduction."""
    x = _check_center(x, p)
    vals = engine(p, max(F.depth, 1), prec).values(x)
    env = dict(label_values)
    env["log"] = vals[(0,)]
    for k in range(1, F.depth + 1):
        env["Li%d" % k] = vals[(0,) * (k - 1) + (1,)]
    total = PadicNumber.exact_zero(p)
    for c, mon in F.terms():
        t = PadicNumber.from_rational(c, p, prec) if c else PadicNumber.exact_zero(p)
        for name, e in mon.items():
            t = t * env[name] ** e
        total = total + t
    return total
