"""
Root criterion: certify from a truncated expansion that a power series has at
most b in {0, 1} roots in the disk |T| <= p**-r.

The series is assumed to satisfy the growth bound v(a_k) >= -h log_p(k) for
k >= 1.  The line through (0, v(a_0)) of slope -r (or through (1, v(a_1)) for
the one-root cases) meets the curve -h log_p(t) in at most two points t_L <=
t_R; beyond t_R the growth bound keeps every coefficient above the line, so
only the indices up to t_R need checking.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .padic import INF, valuation


class RootCriterionContextError(ValueError):
    """The ambient assumptions of the one-root, nonzero-constant case fail."""


@dataclass
class RootCriterionInput:
    b: int
    N: int
    r: int
    h: int
    coeffs: list
    p: int

    def __post_init__(self):
        if self.b not in (0, 1):
            raise ValueError("root budget must be 0 or 1")
        if self.N <= 0 or self.r <= 0 or self.h <= 0:
            raise ValueError("N, r and h must be positive")
        self.coeffs = [Fraction(c) for c in self.coeffs]
        if len(self.coeffs) < self.N + 1:
            self.coeffs += [Fraction(0)] * (self.N + 1 - len(self.coeffs))

    def v(self, k):
        if k >= len(self.coeffs):
            return INF
        return valuation(self.coeffs[k], self.p)

    @classmethod
    def from_json(cls, data):
        return cls(int(data["b"]), int(data["N"]), int(data["r"]), int(data["h"]),
                   [Fraction(c) for c in data["coeffs"]], int(data["p"]))


@dataclass
class RootCriterionResult:
    certified: bool
    case: str
    t_left: float = None
    t_right: float = None
    checked: list = field(default_factory=list)
    reason: str = ""

    def __bool__(self):
        return self.certified

    def to_json(self):
        return {"certified": self.certified, "case": self.case, "t_left": self.t_left,
                "t_right": self.t_right, "checked": self.checked, "reason": self.reason}


def solve_line_curve(c, r, h, p, t_max, shift=0, low=1e-6):
    """Solutions of c - r (t - shift) = -h log_p t on [low, t_max].

    Returns (t_L, t_R) located to within 0.5 with t_R rounded outward, or None
    when the line stays below the curve.  A tangency gives t_L = t_R.  If the
    right solution lies beyond t_max, t_R is reported as math.inf.
    """
    lnp = math.log(p)

    def g(t):
        return c - r * (t - shift) + h * math.log(t) / lnp

    # g is concave with maximum at t* = h / (r ln p)
    t_star = h / (r * lnp)
    t_star = min(max(t_star, low), t_max)
    peak = g(t_star)
    tol = 1e-12 * max(1.0, abs(c))
    if peak < -tol:
        return None
    if abs(peak) <= tol:
        return t_star, t_star
    # left solution
    if g(low) >= 0:
        t_left = low
    else:
        a, b = low, t_star
        while b - a > 0.25:
            m = (a + b) / 2
            if g(m) >= 0:
                b = m
            else:
                a = m
        t_left = a
    if g(t_max) >= 0:
        return t_left, math.inf
    a, b = t_star, t_max
    while b - a > 0.25:
        m = (a + b) / 2
        if g(m) >= 0:
            a = m
        else:
            b = m
    return t_left, b


def root_criterion(inp: RootCriterionInput) -> RootCriterionResult:
    p, r, h, N = inp.p, inp.r, inp.h, inp.N
    a0 = inp.coeffs[0]
    if inp.b == 0:
        if a0 == 0:
            return RootCriterionResult(False, "1", reason="constant term is zero")
        v0 = inp.v(0)
        sol = solve_line_curve(v0, r, h, p, N + 1)
        if sol is None:
            return RootCriterionResult(True, "1", reason="line below the growth curve")
        t_left, t_right = sol
        if t_right > N:
            return RootCriterionResult(False, "1", t_left, t_right, reason="t_R exceeds truncation")
        checked = []
        for k in range(1, math.floor(t_right) + 1):
            checked.append(k)
            if not inp.v(k) > v0 - r * k:
                return RootCriterionResult(False, "1", t_left, t_right, checked,
                                           "coefficient %d reaches the line" % k)
        return RootCriterionResult(True, "1", t_left, t_right, checked)

    a1 = inp.coeffs[1]
    if a0 == 0:
        if a1 == 0:
            return RootCriterionResult(False, "2.1", reason="linear coefficient is zero")
        v1 = inp.v(1)
        sol = solve_line_curve(v1, r, h, p, N + 1, shift=1)
        if sol is None:
            return RootCriterionResult(True, "2.1", reason="line below the growth curve")
        t_left, t_right = sol
        if t_right > N:
            return RootCriterionResult(False, "2.1", t_left, t_right, reason="t_R exceeds truncation")
        checked = []
        for k in range(2, math.floor(t_right) + 1):
            checked.append(k)
            if not inp.v(k) > -r * (k - 1) + v1:
                return RootCriterionResult(False, "2.1", t_left, t_right, checked,
                                           "coefficient %d reaches the line" % k)
        return RootCriterionResult(True, "2.1", t_left, t_right, checked)

    # one root, nonzero constant term
    v0, v1 = inp.v(0), inp.v(1)
    if v1 != v0 - r:
        raise RootCriterionContextError("expected v(a_1) = v(a_0) - r, got %s and %s" % (v1, v0))
    sol = solve_line_curve(v0, r, h, p, N + 1)
    if sol is None or sol[0] == sol[1]:
        raise RootCriterionContextError("the comparison equation needs two solutions")
    t_left, t_right = sol
    if t_right > N:
        return RootCriterionResult(False, "2.2", t_left, t_right, reason="t_R exceeds truncation")
    checked = []
    for k in range(2, math.floor(t_right) + 1):
        checked.append(k)
        if not inp.v(k) > v0 - r * k:
            return RootCriterionResult(False, "2.2", t_left, t_right, checked,
                                       "coefficient %d reaches the line" % k)
    return RootCriterionResult(True, "2.2", t_left, t_right, checked)


# -- brute-force root counting (independent oracle) ---------------------------

def _poly_eval(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _taylor_shift(coeffs, s, scale):
    """Coefficients of f(s + scale * X)."""
    n = len(coeffs)
    out = [0] * n
    # Horner-style composition
    for c in reversed(coeffs):
        # out = out * (s + scale X) + c
        new = [0] * n
        for i, a in enumerate(out):
            if a:
                new[i] += a * s
                if i + 1 < n:
                    new[i + 1] += a * scale
        new[0] += c
        out = new
    return out


def _content_free(coeffs, p):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    nz = [c for c in coeffs if c]
    if not nz:
        return coeffs
    m = min(valuation(c, p) for c in nz)
    return [c // p ** m if m >= 0 else c * p ** -m for c in coeffs]


def count_zp_roots(coeffs, p, depth=0, max_depth=200):
    """Number of roots in Z_p of a squarefree integer polynomial."""
    f = _content_free(coeffs, p)
    if len(f) <= 1:
        return 0
    if depth > max_depth:
        raise RuntimeError("root refinement did not separate the roots")
    df = [k * c for k, c in enumerate(f)][1:]
    total = 0
    for s in range(p):
        if _poly_eval(f, s) % p:
            continue
        if _poly_eval(df, s) % p:
            total += 1          # Hensel: a unique lift
            continue
        total += count_zp_roots(_taylor_shift(f, s, p), p, depth + 1, max_depth)
    return total


def count_roots_in_disk(coeffs, p, r):
    """Roots with multiplicity of a rational polynomial in |T| <= p**-r."""
    import sympy
    T = sympy.Symbol("T")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction)
                       else sympy.Rational(c) for c in reversed(list(coeffs))], T)
    if poly.is_zero:
        raise ValueError("zero polynomial has infinitely many roots")
    _, factors = poly.sqf_list()
    total = 0
    for fac, mult in factors:
        c = [Fraction(int(sympy.Rational(x).p), int(sympy.Rational(x).q))
             for x in reversed(fac.all_coeffs())]
        # T = p**r S with S in Z_p
        scaled = [ci * Fraction(p) ** (r * i) for i, ci in enumerate(c)]
        den = math.lcm(*[x.denominator for x in scaled])
        ints = [int(x * den) for x in scaled]
        total += mult * count_zp_roots(ints, p)
    return total


def load_input(path):
    with open(path) as fh:
        return RootCriterionInput.from_json(json.load(fh))
