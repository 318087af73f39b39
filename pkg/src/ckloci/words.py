"""
Words in e0, e1 and formal iterated-integral symbols.

A word is a tuple over {0, 1}, outermost letter first: ``(0, 1)`` is e0e1.
The letter e0 stands for the form dt/t and e1 for dt/(t - 1), so

    I(1_0; W; x) = (-1)**wt1(W) * Li_W(x),   I(1_0; e1; x) = log(1 - x).

Two kinds of atom exist: ``I(1_0; W; x)`` for a rational x not in {0, 1}
and the zeta kind ``I(1_0; W; -1_1)``.  A ``FormalIntegrand`` is a rational
combination of monomials in atoms, kept in a normal form where each monomial
has at most one atom per endpoint (products at a common endpoint are
linearized with the shuffle product) and zeta words are shuffle-regularized
to convergent words (first letter e0, last letter e1).
"""

from __future__ import annotations

import re
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

TANGENT_0 = "1_0"
TANGENT_1 = "-1_1"
ZETA = "zeta"


def wt(w):
    return len(w)


def wt0(w):
    return w.count(0)


def wt1(w):
    return w.count(1)


@lru_cache(maxsize=None)
def _shuffle(u, v):
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out = Counter()
    for w, m in _shuffle(u[1:], v):
        out[(u[0],) + w] += m
    for w, m in _shuffle(u, v[1:]):
        out[(v[0],) + w] += m
    return tuple(out.items())


def shuffle(u, v) -> Counter:
    """Shuffle product as a multiset of words."""
    return Counter(dict(_shuffle(tuple(u), tuple(v))))


def left_divide(w, prefix):
    """The word r with w = prefix + r, or None."""
    w, prefix = tuple(w), tuple(prefix)
    if w[: len(prefix)] == prefix:
        return w[len(prefix):]
    return None


def right_divide(w, suffix):
    w, suffix = tuple(w), tuple(suffix)
    if not suffix:
        return w
    if w[-len(suffix):] == suffix:
        return w[: -len(suffix)]
    return None


def is_subsequence(v, w):
    it = iter(w)
    return all(a in it for a in v)


def words_of_weight(n):
    out = [()]
    for _ in range(n):
        out = [w + (a,) for w in out for a in (0, 1)]
    return out


# -- zeta regularization ---------------------------------------------------

@lru_cache(maxsize=None)
def regularize_zeta(w):
    """Express a zeta word through convergent words, with zeta(e0) = zeta(e1) = 0.

    Returns a tuple of (word, coefficient) pairs.
    """
    w = tuple(w)
    if not w:
        return (((), Fraction(1)),)
    if all(a == 0 for a in w) or all(a == 1 for a in w):
        return ()
    out = Counter()
    if w[-1] == 0:
        k = _trailing(w, 0)
        shorter = w[:-1]
        for v, m in _shuffle((0,), shorter):
            if v == w:
                continue
            for u, c in regularize_zeta(v):
                out[u] -= Fraction(m, k) * c
    elif w[0] == 1:
        k = _leading(w, 1)
        shorter = w[1:]
        for v, m in _shuffle((1,), shorter):
            if v == w:
                continue
            for u, c in regularize_zeta(v):
                out[u] -= Fraction(m, k) * c
    else:
        return ((w, Fraction(1)),)
    return tuple((u, c) for u, c in out.items() if c)


def _trailing(w, a):
    k = 0
    for b in reversed(w):
        if b != a:
            break
        k += 1
    return k


def _leading(w, a):
    k = 0
    for b in w:
        if b != a:
            break
        k += 1
    return k


# -- monomials and formal integrands --------------------------------------

def _endpoint_key(e):
    return (1, 0) if e == ZETA else (0, e)


def _atom_key(atom):
    return (_endpoint_key(atom[0]), atom[1])


def _as_endpoint(x):
    if x == ZETA:
        return ZETA
    x = Fraction(x)
    if x == 0 or x == 1:
        raise ValueError("endpoint must avoid 0 and 1")
    return x


class FormalIntegrand:
    """Rational combination of monomials in iterated-integral atoms."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for m, c in (terms or {}).items():
            if c:
                self.terms[m] = self.terms.get(m, 0) + Fraction(c)
        self.terms = {m: c for m, c in self.terms.items() if c}

    @classmethod
    def one(cls):
        return cls({(): 1})

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def atom(cls, x, word):
        """I(1_0; word; x), or the zeta kind when x == 'zeta'."""
        x = _as_endpoint(x)
        word = tuple(word)
        if not word:
            return cls.one()
        if x == ZETA:
            return cls({((ZETA, u),): c for u, c in regularize_zeta(word)})
        return cls({((x, word),): 1})

    # algebra
    def __add__(self, other):
        out = dict(self.terms)
        for m, c in _lift(other).terms.items():
            out[m] = out.get(m, 0) + c
        return FormalIntegrand(out)

    __radd__ = __add__

    def __neg__(self):
        return FormalIntegrand({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FormalIntegrand({m: c * other for m, c in self.terms.items()})
        out = Counter()
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                for m, c in monomial_product(m1, m2).items():
                    out[m] += c1 * c2 * c
        return FormalIntegrand(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _lift(other)
        if not isinstance(other, FormalIntegrand):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def weights(self):
        return {monomial_weight(m) for m in self.terms}

    def weight(self):
        ws = self.weights()
        if len(ws) > 1:
            raise ValueError("integrand is not homogeneous: weights %s" % sorted(ws))
        return ws.pop() if ws else 0

    def component(self, n):
        return FormalIntegrand({m: c for m, c in self.terms.items() if monomial_weight(m) == n})

    def endpoints(self):
        return {a[0] for m in self.terms for a in m}

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda mc: [_atom_key(a) for a in mc[0]]):
            parts.append("%s*%s" % (c, monomial_str(m)))
        return " + ".join(parts)


def _lift(x):
    if isinstance(x, FormalIntegrand):
        return x
    return FormalIntegrand({(): x})


def monomial_weight(m):
    return sum(len(a[1]) for a in m)


def atom_str(a):
    x, w = a
    end = TANGENT_1 if x == ZETA else str(x)
    return "I(1_0; %s; %s)" % (",".join(str(b) for b in w), end)


def monomial_str(m):
    return "*".join(atom_str(a) for a in m) if m else "1"


@lru_cache(maxsize=None)
def _monomial_product(m1, m2):
    by_end = {}
    for a in m1:
        by_end[a[0]] = [a[1]]
    for a in m2:
        by_end.setdefault(a[0], []).append(a[1])
    # each endpoint: shuffle the (at most two) words together
    per_end = []
    for e, ws in by_end.items():
        if len(ws) == 1:
            per_end.append([((e, ws[0]), Fraction(1))])
            continue
        lin = Counter()
        for w, m in _shuffle(ws[0], ws[1]):
            if e == ZETA:
                for u, c in regularize_zeta(w):
                    lin[u] += m * c
            else:
                lin[w] += m
        per_end.append([((e, w), Fraction(c)) for w, c in lin.items() if c])
    out = Counter()
    _expand(per_end, 0, (), Fraction(1), out)
    return tuple((m, c) for m, c in out.items() if c)


def _expand(per_end, i, acc, coef, out):
    if i == len(per_end):
        out[tuple(sorted((a for a in acc if a[1]), key=_atom_key))] += coef
        return
    for a, c in per_end[i]:
        _expand(per_end, i + 1, acc + (a,), coef * c, out)


def monomial_product(m1, m2) -> Counter:
    return Counter(dict(_monomial_product(m1, m2)))


# -- generalized symbols I(a; w; b) ----------------------------------------

def _point(a):
    """Map an endpoint spelling to 0, 1 or a rational."""
    if a in (TANGENT_0, 0, "0"):
        return 0
    if a in (TANGENT_1, 1, "1"):
        return 1
    if a == ZETA:
        return 1
    return Fraction(a)


@lru_cache(maxsize=None)
def _normalize(a, w, b):
    n = len(w)
    if n == 0:
        return FormalIntegrand.one()
    if a == b:
        return FormalIntegrand.zero()
    sign = -1 if n % 2 else 1
    if a == 0:
        return FormalIntegrand.atom(ZETA if b == 1 else b, w)
    if b == 0:
        return _normalize(0, tuple(reversed(w)), a) * sign
    if a == 1:
        # compose 1 -> 0 -> b: outer part near b, inner part near 1
        acc = FormalIntegrand.zero()
        for cut in range(n + 1):
            outer = _normalize(0, w[:cut], b)
            if outer.is_zero():
                continue
            inner = _normalize(1, w[cut:], 0)
            if inner.is_zero():
                continue
            acc = acc + outer * inner
        return acc
    if b == 1:
        return _normalize(1, tuple(reversed(w)), a) * sign
    raise ValueError("symbol with two finite endpoints %s, %s is not supported" % (a, b))


def normalize(a, w, b) -> FormalIntegrand:
    """Rewrite I(a; w; b) with a, b in {1_0, -1_1, 0, 1, x} in normal form."""
    return _normalize(_point(a), tuple(w), _point(b))


def symbol(a, w, b):
    return normalize(a, w, b)


def log_symbol(x):
    return FormalIntegrand.atom(x, (0,))


def li_symbol(x, n):
    """Li_n(x) = (-1) * I(1_0; e0^(n-1) e1; x)."""
    return FormalIntegrand.atom(x, (0,) * (n - 1) + (1,)) * -1


_SYMBOL_RE = re.compile(r"^\s*I\(\s*([^;]+);\s*([^;]*);\s*([^;]+)\)\s*$")


def parse_symbol(text):
    """Parse 'I(1_0; 0,1; 3)' into a FormalIntegrand."""
    m = _SYMBOL_RE.match(text)
    if not m:
        raise ValueError("cannot parse symbol %r" % text)
    a, w, b = (g.strip() for g in m.groups())
    letters = [s for s in re.split(r"[,\s]+", w) if s]
    if any(s not in ("0", "1") for s in letters):
        raise ValueError("word letters must be 0 or 1 in %r" % text)
    return normalize(a, tuple(int(s) for s in letters), b)


# -- Goncharov coproduct ---------------------------------------------------

class Tensor:
    """Rational combination of (monomial, monomial) pairs."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: Fraction(c) for k, c in (terms or {}).items() if c}

    def __add__(self, other):
        out = Counter(self.terms)
        for k, c in other.terms.items():
            out[k] += c
        return Tensor(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return Tensor({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        out = Counter()
        for (l1, r1), c1 in self.terms.items():
            for (l2, r2), c2 in other.terms.items():
                left = monomial_product(l1, l2)
                right = monomial_product(r1, r2)
                for ml, cl in left.items():
                    for mr, cr in right.items():
                        out[(ml, mr)] += c1 * c2 * cl * cr
        return Tensor(out)

    def __eq__(self, other):
        return isinstance(other, Tensor) and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def bidegree(self, i, j):
        return Tensor({(l, r): c for (l, r), c in self.terms.items()
                       if monomial_weight(l) == i and monomial_weight(r) == j})

    def bidegrees(self):
        return {(monomial_weight(l), monomial_weight(r)) for l, r in self.terms}

    @classmethod
    def pure(cls, left: FormalIntegrand, right: FormalIntegrand):
        return cls({(l, r): cl * cr for l, cl in left.terms.items() for r, cr in right.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join("%s*[%s (x) %s]" % (c, monomial_str(l), monomial_str(r))
                          for (l, r), c in self.terms.items())


@lru_cache(maxsize=None)
def _atom_coproduct(atom):
    """Full coproduct of one atom by the subsequence formula."""
    x, w = atom
    end = 1 if x == ZETA else x
    pts = (0,) + tuple(reversed(w)) + (end,)
    n = len(w)
    out = Tensor()
    for k in range(n + 1):
        for idx in combinations(range(1, n + 1), k):
            chosen = (0,) + idx + (n + 1,)
            main = _normalize(0, tuple(reversed([pts[i] for i in idx])), end)
            if main.is_zero():
                continue
            gaps = FormalIntegrand.one()
            for s, t in zip(chosen, chosen[1:]):
                seg = tuple(reversed(pts[s + 1:t]))
                g = _normalize(pts[s], seg, pts[t])
                gaps = gaps * g
                if gaps.is_zero():
                    break
            if gaps.is_zero():
                continue
            out = out + Tensor.pure(main, gaps)
    return out


def _monomial_coproduct(m):
    out = Tensor({((), ()): 1})
    for a in m:
        out = out * _atom_coproduct(a)
    return out


def coproduct(s: FormalIntegrand) -> Tensor:
    out = Tensor()
    for m, c in s.terms.items():
        out = out + _monomial_coproduct(m).scale(c)
    return out


def goncharov_reduced_coproduct(s: FormalIntegrand) -> Tensor:
    """Coproduct with the weight-(0, r) and (r, 0) parts removed."""
    full = coproduct(s)
    return Tensor({(l, r): c for (l, r), c in full.terms.items() if l and r})


def tensor_left(t: Tensor, f):
    """Apply a linear map on FormalIntegrands to the left factors."""
    out = Tensor()
    for (l, r), c in t.terms.items():
        out = out + Tensor.pure(f(FormalIntegrand({l: 1})), FormalIntegrand({r: 1})).scale(c)
    return out
