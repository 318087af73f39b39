"""
Graded free Hopf algebra bookkeeping.

The synthetic model used for exact checks is the shuffle algebra on a finite
alphabet of weighted letters, with the deconcatenation coproduct.  Its
primitives are the letters, its Lyndon words are free polynomial generators,
and the dual generators are the coefficient-of-a-letter functionals.

``change_of_basis`` is written against an abstract interface (labelled
bases per weight plus a coproduct-coordinates callback) so the same code
runs on the shuffle model and on iterated-integral data.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from functools import lru_cache

import sympy

from .padic import valuation


# -- dimension bookkeeping ------------------------------------------------

def dims(e, n):
    """d_1..d_n for generator counts e[i-1] in weight i."""
    e = list(e)
    d = [1]
    for k in range(1, n + 1):
        d.append(sum(e[i - 1] * d[k - i] for i in range(1, min(k, len(e)) + 1)))
    return d[1:]


def abstract_words(e, n):
    """Words in generators (weight, index) of total weight n, first letter outermost."""
    e = list(e)

    @lru_cache(maxsize=None)
    def build(k):
        if k == 0:
            return ((),)
        out = []
        for l in range(1, min(k, len(e)) + 1):
            for i in range(e[l - 1]):
                for w in build(k - l):
                    out.append(((l, i),) + w)
        return tuple(out)

    return list(build(n))


# -- exact linear algebra helpers ------------------------------------------

def _matrix(rows):
    return sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Rational(c)
                          for c in row] for row in rows])


def _frac(x):
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def rank(rows):
    if not rows:
        return 0
    return _matrix(rows).rank()


# -- the synthetic shuffle model -------------------------------------------

class ShuffleModel:
    """Shuffle algebra over letters 0..k-1 with the given weights."""

    def __init__(self, letter_weights):
        self.letter_weights = tuple(letter_weights)
        top = max(self.letter_weights)
        self.generator_counts = [self.letter_weights.count(i) for i in range(1, top + 1)]

    def weight(self, word):
        return sum(self.letter_weights[a] for a in word)

    @lru_cache(maxsize=None)
    def words(self, n):
        if n == 0:
            return ((),)
        out = []
        for a, wa in enumerate(self.letter_weights):
            if wa <= n:
                out.extend((a,) + w for w in self.words(n - wa))
        return tuple(sorted(out))

    def dim(self, n):
        return len(self.words(n))

    def letters_of_weight(self, n):
        return [a for a, wa in enumerate(self.letter_weights) if wa == n]

    def lyndon_words(self, n):
        """Lyndon words of weight n (strictly smaller than all proper rotations)."""
        out = []
        for w in self.words(n):
            if w and all(w < w[i:] + w[:i] for i in range(1, len(w))):
                out.append(w)
        return out

    # elements are dicts word -> Fraction
    @staticmethod
    def word_element(w, c=1):
        return {tuple(w): Fraction(c)}

    @staticmethod
    def add(x, y, cy=1):
        out = Counter(x)
        for w, c in y.items():
            out[w] += cy * c
        return {w: c for w, c in out.items() if c}

    @staticmethod
    def scale(x, c):
        return {w: v * c for w, v in x.items() if v * c}

    def product(self, x, y):
        from .words import shuffle
        out = Counter()
        for u, cu in x.items():
            for v, cv in y.items():
                for w, m in shuffle(u, v).items():
                    out[w] += cu * cv * m
        return {w: c for w, c in out.items() if c}

    def coproduct(self, x):
        out = Counter()
        for w, c in x.items():
            for k in range(len(w) + 1):
                out[(w[:k], w[k:])] += c
        return {k: c for k, c in out.items() if c}

    def reduced_coproduct(self, x):
        return {(u, v): c for (u, v), c in self.coproduct(x).items() if u and v}

    def element_weight(self, x):
        ws = {self.weight(w) for w in x}
        if len(ws) != 1:
            raise ValueError("element is zero or not homogeneous")
        return ws.pop()

    def vector(self, x, n):
        return [Fraction(x.get(w, 0)) for w in self.words(n)]

    def standard_generators(self, n):
        """(E, P) per weight: letters and Lyndon words of length >= 2."""
        E, P = {}, {}
        for k in range(1, n + 1):
            E[k] = [self.word_element((a,)) for a in self.letters_of_weight(k)]
            P[k] = [self.word_element(w) for w in self.lyndon_words(k) if len(w) >= 2]
        return E, P


def monomials(generators, n, product, one):
    """Products of >= 2 generators (weight -> list) with total weight n."""
    flat = [(k, i) for k in sorted(generators) for i in range(len(generators[k]))]
    out = []

    def rec(start, remaining, chosen):
        if remaining == 0:
            if len(chosen) >= 2:
                out.append(tuple(chosen))
            return
        for idx in range(start, len(flat)):
            k, i = flat[idx]
            if k <= remaining:
                rec(idx, remaining - k, chosen + [(k, i)])

    rec(0, n, [])
    elems = []
    for mono in out:
        x = one
        for k, i in mono:
            x = product(x, generators[k][i])
        elems.append((mono, x))
    return elems


class VerificationResult:
    def __init__(self, ok, weight=None, reason=""):
        self.ok = ok
        self.weight = weight
        self.reason = reason

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "VerificationResult(ok)"
        return "VerificationResult(failed at weight %s: %s)" % (self.weight, self.reason)


def verify_EPD_basis(model: ShuffleModel, E, P, n):
    """Check that E (primitive) and P generate freely up to weight n."""
    gens = {}
    for k in range(1, n + 1):
        Ek, Pk = list(E.get(k, [])), list(P.get(k, []))
        for x in Ek + Pk:
            if not x or any(model.weight(w) != k for w in x):
                return VerificationResult(False, k, "element not homogeneous of weight %d" % k)
        for x in Ek:
            if model.reduced_coproduct(x):
                return VerificationResult(False, k, "extension candidate is not primitive")
        lower = {j: gens[j] for j in gens}
        D = [x for _, x in monomials(lower, k, model.product, {(): Fraction(1)})] if lower else []
        rows = [model.vector(x, k) for x in Ek + Pk + D]
        d = model.dim(k)
        r = rank(rows)
        if len(rows) != d or r != d:
            return VerificationResult(False, k, "rank %d from %d vectors, need %d" % (r, len(rows), d))
        gens[k] = Ek + Pk
    return VerificationResult(True)


# -- epsilon-linear independence and projection constant ------------------

def _as_fraction(x):
    if hasattr(x, "to_fraction"):
        return x.to_fraction()
    return Fraction(x)


def padic_abs(q, p):
    q = Fraction(q)
    if q == 0:
        return Fraction(0)
    v = valuation(q, p)
    return Fraction(1, p ** v) if v >= 0 else Fraction(p ** -v)


def maximal_minors(vectors):
    rows = [[_as_fraction(c) for c in v] for v in vectors]
    k = len(rows)
    if k == 0:
        return [Fraction(1)]
    m = len(rows[0])
    if any(len(r) != m for r in rows):
        raise ValueError("vectors must have equal length")
    if k > m:
        return []
    out = []
    for cols in combinations(range(m), k):
        sub = _matrix([[r[c] for c in cols] for r in rows])
        out.append(_frac(sub.det()))
    return out


def epsilon_linear_independence(vectors, p, eps, strict=False):
    """Max maximal-minor |det|_p >= eps; with strict=True every minor must be."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    minors = maximal_minors(vectors)
    if not minors:
        return False
    sizes = [padic_abs(d, p) for d in minors]
    if strict:
        return min(sizes) >= eps
    return max(sizes) >= eps


def elementary_divisor_valuations(matrix, p):
    """p-adic valuations of the nonzero elementary divisors of a rational matrix."""
    rows = [[_as_fraction(c) for c in r] for r in matrix]
    if not rows or not any(any(r) for r in rows):
        return []
    den = 1
    for r in rows:
        for c in r:
            den = den * c.denominator // _gcd(den, c.denominator)
    ints = [[int(c * den) for c in r] for r in rows]
    from sympy.matrices.normalforms import smith_normal_form
    from sympy.polys.domains import ZZ
    snf = smith_normal_form(sympy.Matrix(ints), domain=ZZ)
    vd = valuation(den, p)
    out = []
    for i in range(min(snf.shape)):
        d = int(snf[i, i])
        if d:
            out.append(valuation(d, p) - vd)
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def projection_constant(matrix, p):
    """C with |phi x| < e implying dist(x, ker phi) < C e."""
    vals = elementary_divisor_valuations(matrix, p)
    if not vals:
        raise ValueError("zero matrix has no projection constant")
    v = max(vals)
    return Fraction(p ** v) if v >= 0 else Fraction(1, p ** -v)


# -- change of basis --------------------------------------------------------

class SingularChangeMatrix(ArithmeticError):
    pass


class ChangeMatrix:
    """Per weight: rows are concrete basis labels, columns abstract words."""

    def __init__(self, weight, rows, cols, a):
        self.weight = weight
        self.rows = rows
        self.cols = cols
        self.a = a
        m = _matrix(a)
        if m.shape[0] != m.shape[1] or (m.shape[0] and m.det() == 0):
            raise SingularChangeMatrix("change matrix in weight %d is singular" % weight)
        inv = m.inv() if m.shape[0] else m
        self.b = [[_frac(inv[i, j]) for j in range(inv.shape[1])] for i in range(inv.shape[0])]

    def entry(self, label, word):
        return self.a[self.rows.index(label)][self.cols.index(word)]

    def dual_function(self, word):
        """Coefficients b_{w, I} of the approximate dual function f_w."""
        j = self.cols.index(word)
        return {I: self.b[j][i] for i, I in enumerate(self.rows)}

    def to_json(self):
        return {"weight": self.weight, "rows": [str(r) for r in self.rows],
                "cols": [[list(g) for g in w] for w in self.cols],
                "a": [[str(c) for c in r] for r in self.a],
                "b": [[str(c) for c in r] for r in self.b]}


def change_of_basis(bases, extension_counts, coproduct_coords, n):
    """Matrices a_{I, w} for weights 1..n.

    bases[k]: list of labels of the concrete basis in weight k with the
    extension elements first (extension_counts[k-1] of them).
    coproduct_coords(k, I, l): matrix c[j][q] of the (l, k-l) coproduct part of
    I in the basis bases[l] x bases[k-l].
    """
    e = list(extension_counts)
    out = {}
    table = {}
    for k in range(1, n + 1):
        rows = list(bases.get(k, []))
        cols = abstract_words(e, k)
        for I in rows:
            for w in cols:
                l, i = w[0]
                rest = w[1:]
                if not rest:
                    val = Fraction(1) if rows.index(I) == i and l == k else Fraction(0)
                else:
                    c = coproduct_coords(k, I, l)
                    m = k - l
                    val = Fraction(0)
                    for q, J in enumerate(bases[m]):
                        cq = c[i][q]
                        if cq:
                            val += cq * table[(m, J, rest)]
                table[(k, I, w)] = val
        a = [[table[(k, I, w)] for w in cols] for I in rows]
        out[k] = ChangeMatrix(k, rows, cols, a)
    return out


def shuffle_model_datum(model: ShuffleModel, E, P, n):
    """Labelled bases and exact coproduct coordinates for the shuffle model."""
    gens = {}
    bases, elems = {}, {}
    for k in range(1, n + 1):
        Ek, Pk = list(E.get(k, [])), list(P.get(k, []))
        labels = [("E", k, i) for i in range(len(Ek))] + [("P", k, i) for i in range(len(Pk))]
        xs = Ek + Pk
        lower = {j: gens[j] for j in gens}
        mon = monomials(lower, k, model.product, {(): Fraction(1)}) if lower else []
        labels += [("D",) + tuple(mono) for mono, _ in mon]
        xs += [x for _, x in mon]
        bases[k] = labels
        for lab, x in zip(labels, xs):
            elems[lab] = x
        gens[k] = Ek + Pk
    inverse = {}
    for k in range(1, n + 1):
        M = _matrix([model.vector(elems[lab], k) for lab in bases[k]])
        inverse[k] = M.inv()

    cache = {}

    def coords(k, I, l):
        key = (k, I, l)
        if key in cache:
            return cache[key]
        m = k - l
        wl, wm = model.words(l), model.words(m)
        T = [[Fraction(0)] * len(wm) for _ in wl]
        for (u, v), c in model.coproduct(elems[I]).items():
            if model.weight(u) == l and model.weight(v) == m:
                T[wl.index(u)][wm.index(v)] += c
        # T = B_l^T C B_m  ->  C = B_l^{-T} T B_m^{-1}
        C = inverse[l].T * _matrix(T) * inverse[m]
        res = [[_frac(C[r, s]) for s in range(C.shape[1])] for r in range(C.shape[0])]
        cache[key] = res
        return res

    return bases, elems, coords


def exact_pairing(model: ShuffleModel, bases, elems, extension_counts, word, label):
    """<w, I> computed directly: dual generators act by concatenating functionals."""
    k = sum(l for l, _ in word)
    functional = {(): Fraction(1)}
    for l, i in reversed(word):
        M = _matrix([model.vector(elems[lab], l) for lab in bases[l]])
        dual = M.inv()
        col = [_frac(dual[r, i]) for r in range(dual.shape[0])]
        sig = {w: c for w, c in zip(model.words(l), col) if c}
        new = Counter()
        for u, cu in sig.items():
            for v, cv in functional.items():
                new[u + v] += cu * cv
        functional = new
    x = elems[label]
    return sum((functional.get(w, 0) * c for w, c in x.items()), Fraction(0))
