"""
Lie-algebraic side of the loci computation.

The Selmer space is modelled by graded homomorphisms from the free Lie
algebra n(Sigma) on the extension generators to the polylogarithmic Lie
algebra, spanned by e and l_1, l_2, ... with [e, l_i] = l_{i+1} and
[l_i, l_j] = 0.  Evaluating the universal homomorphism on the universal
element of n(Sigma°) and eliminating the homomorphism parameters yields
polynomial relations between polylogarithmic coordinates and coordinates of
the free side.  Those relations are rewritten first in terms of log and Li_k
and in terms of shuffle coordinates f_w, then in the concrete basis.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache

import sympy

from .basis import (
    BasisDatum,
    IntegerScheme,
    bases_for_change,
    datum_for_scheme,
    ext_dims,
    verify_basis_datum,
)
from .hopf import change_of_basis
from .words import shuffle


class DepthMismatch(ValueError):
    pass


class EliminationGuard(ValueError):
    """The elimination problem is larger than the desk-scale limits."""


MAX_VARIABLES = 24
MAX_DEPTH = 4


# -- free Lie algebra on weighted letters ------------------------------------

def letter_weight(a):
    return a[0]


def word_weight(w):
    return sum(a[0] for a in w)


def is_lyndon(w):
    return bool(w) and all(w < w[i:] + w[:i] for i in range(1, len(w)))


def lyndon_words(letters, n):
    """Lyndon words over ``letters`` of total weight <= n, sorted."""
    letters = sorted(letters)
    out = []

    def rec(w, weight):
        if w and is_lyndon(w):
            out.append(w)
        for a in letters:
            if weight + a[0] <= n:
                rec(w + (a,), weight + a[0])

    rec((), 0)
    return sorted(out)


def standard_factorization(w):
    """w = uv with v the longest proper suffix that is Lyndon."""
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError("word of length 1 has no factorization")


@lru_cache(maxsize=None)
def bracket_expansion(w):
    """The Lyndon bracket P_w expanded in the word basis."""
    if len(w) == 1:
        return ((w, 1),)
    u, v = standard_factorization(w)
    pu, pv = dict(bracket_expansion(u)), dict(bracket_expansion(v))
    out = {}
    for a, ca in pu.items():
        for b, cb in pv.items():
            out[a + b] = out.get(a + b, 0) + ca * cb
            out[b + a] = out.get(b + a, 0) - ca * cb
    return tuple((k, c) for k, c in sorted(out.items()) if c)


def _words_to_lyndon(words, letters, n):
    """Coordinates in the Lyndon basis of a Lie element given on words."""
    rest = dict(words)
    out = {}
    for lam in lyndon_words(letters, n):
        c = rest.get(lam, 0)
        if c == 0:
            continue
        out[lam] = c
        for w, m in bracket_expansion(lam):
            rest[w] = rest.get(w, 0) - c * m
    return out


class FreeLieElement:
    """Element of the free graded Lie algebra, truncated at weight n."""

    def __init__(self, letters, depth, coeffs=None):
        self.letters = tuple(sorted(letters))
        self.depth = depth
        self.coeffs = {w: c for w, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def generator(cls, letters, depth, a, c=1):
        return cls(letters, depth, {(a,): c})

    def words(self):
        out = {}
        for lam, c in self.coeffs.items():
            for w, m in bracket_expansion(lam):
                out[w] = out.get(w, 0) + c * m
        return {w: c for w, c in out.items() if c != 0}

    def _same(self, other):
        if other.letters != self.letters or other.depth != self.depth:
            raise DepthMismatch("incompatible free Lie elements")

    def __add__(self, other):
        self._same(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        return FreeLieElement(self.letters, self.depth, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return FreeLieElement(self.letters, self.depth, {w: v * c for w, v in self.coeffs.items()})

    def bracket(self, other):
        self._same(other)
        x, y = self.words(), other.words()
        out = {}
        for a, ca in x.items():
            for b, cb in y.items():
                if word_weight(a) + word_weight(b) > self.depth:
                    continue
                out[a + b] = out.get(a + b, 0) + ca * cb
                out[b + a] = out.get(b + a, 0) - ca * cb
        return FreeLieElement(self.letters, self.depth, _words_to_lyndon(out, self.letters, self.depth))

    def __eq__(self, other):
        return isinstance(other, FreeLieElement) and (self - other).coeffs == {}

    def __repr__(self):
        return "FreeLieElement(%r)" % self.coeffs


class PolylogLieElement:
    """x = e_coeff * e + sum_i ell[i-1] * l_i, truncated at depth n."""

    def __init__(self, depth, e=0, ell=None):
        self.depth = depth
        self.e = e
        ell = list(ell or [])
        self.ell = (ell + [0] * depth)[:depth]

    def _same(self, other):
        if other.depth != self.depth:
            raise DepthMismatch("depths %d and %d differ" % (self.depth, other.depth))

    def __add__(self, other):
        self._same(other)
        return PolylogLieElement(self.depth, self.e + other.e, [a + b for a, b in zip(self.ell, other.ell)])

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return PolylogLieElement(self.depth, self.e * c, [a * c for a in self.ell])

    def bracket(self, other):
        self._same(other)
        ell = [0] * self.depth
        for i in range(self.depth - 1):
            ell[i + 1] = self.e * other.ell[i] - other.e * self.ell[i]
        return PolylogLieElement(self.depth, 0, ell)

    def coordinates(self):
        return [self.e] + list(self.ell)

    def expand(self):
        return PolylogLieElement(self.depth, sympy.expand(self.e), [sympy.expand(a) for a in self.ell])

    def __eq__(self, other):
        d = self - other
        return all(sympy.simplify(c) == 0 for c in d.coordinates())

    def __repr__(self):
        return "PolylogLieElement(e=%s, ell=%s)" % (self.e, self.ell)


class EquivariantHom:
    """Weight-preserving homomorphism n(Sigma) -> polylogarithmic Lie algebra.

    A weight-1 generator goes to a*e + b*l_1, a weight-i generator to c*l_i.
    Generators missing from ``images`` are sent to zero.
    """

    def __init__(self, depth, images):
        self.depth = depth
        self.images = dict(images)

    @classmethod
    def symbolic(cls, letters, depth):
        images, params = {}, []
        for a in sorted(letters):
            w, i = a
            if w > depth:
                continue
            if w == 1:
                x, y = sympy.symbols("a_%d b_%d" % (i, i))
                images[a] = PolylogLieElement(depth, x, [y])
                params += [x, y]
            else:
                c = sympy.Symbol("c_%d_%d" % (w, i))
                ell = [0] * depth
                ell[w - 1] = c
                images[a] = PolylogLieElement(depth, 0, ell)
                params.append(c)
        return cls(depth, images), params

    @classmethod
    def from_values(cls, depth, pairs, scalars=None):
        images = {}
        for i, (a, b) in enumerate(pairs):
            images[(1, i)] = PolylogLieElement(depth, a, [b])
        for (w, i), c in (scalars or {}).items():
            ell = [0] * depth
            ell[w - 1] = c
            images[(w, i)] = PolylogLieElement(depth, 0, ell)
        return cls(depth, images)

    def on_lyndon(self, w):
        if len(w) == 1:
            img = self.images.get(w[0])
            return img if img is not None else PolylogLieElement(self.depth)
        u, v = standard_factorization(w)
        return self.on_lyndon(u).bracket(self.on_lyndon(v))


def evaluate_cocycle(C: EquivariantHom, F: FreeLieElement) -> PolylogLieElement:
    """Apply the quotient to n(Sigma) (killing absent generators), then C."""
    if C.depth != F.depth:
        raise DepthMismatch("homomorphism depth %d, element depth %d" % (C.depth, F.depth))
    out = PolylogLieElement(C.depth)
    for lam, c in F.coeffs.items():
        out = out + C.on_lyndon(lam).scale(c)
    return out


# -- elimination -------------------------------------------------------------

def letters_from_counts(counts):
    return [(w, i) for w, k in enumerate(counts, start=1) for i in range(k)]


def polylog_symbols(n):
    return sympy.symbols(" ".join(["E"] + ["L%d" % k for k in range(1, n + 1)]))


def lyndon_symbol(lam):
    return sympy.Symbol("x_" + "_".join("%d.%d" % a for a in lam))


class ImageIdeal:
    def __init__(self, n, sigma, sigma0, generators, lie_symbols, lyndon, params):
        self.depth = n
        self.sigma = sigma
        self.sigma0 = sigma0
        self.generators = generators
        self.lie_symbols = lie_symbols
        self.lyndon = lyndon
        self.params = params

    def symbol_of(self, lam):
        return self.lyndon[lam]


def image_ideal(sigma_counts, sigma0_counts, n):
    """Relations between (E, L_1..L_n) and Lyndon coordinates of n(Sigma°)."""
    sigma0 = letters_from_counts(list(sigma0_counts)[:n])
    sigma = letters_from_counts(list(sigma_counts)[:n])
    return eliminate(sigma, sigma0, n)


def eliminate(sigma, sigma0, n):
    """Image ideal for explicit letter sets Sigma inside Sigma°."""
    if n > MAX_DEPTH:
        raise EliminationGuard("depth %d exceeds the limit %d" % (n, MAX_DEPTH))
    if not set(sigma) <= set(sigma0):
        raise ValueError("Sigma must be contained in Sigma°")
    C, params = EquivariantHom.symbolic(sigma, n)
    lyn = lyndon_words(sigma0, n)
    xs = {lam: lyndon_symbol(lam) for lam in lyn}
    F = FreeLieElement(sigma0, n, {lam: xs[lam] for lam in lyn})
    Y = evaluate_cocycle(C, F).expand()
    E, *L = polylog_symbols(n)
    lie = [E] + list(L)
    nvars = len(params) + len(lie) + len(xs)
    if nvars > MAX_VARIABLES:
        raise EliminationGuard("%d variables exceed the limit %d" % (nvars, MAX_VARIABLES))
    eqs = [s - c for s, c in zip(lie, Y.coordinates())]
    if params:
        G = sympy.groebner(eqs, *params, *lie, *xs.values(), order="lex", method="buchberger")
        keep = [g for g in G.exprs if not (g.free_symbols & set(params))]
    else:
        G = sympy.groebner(eqs, *lie, *xs.values(), order="grevlex", method="buchberger")
        keep = list(G.exprs)
    return ImageIdeal(n, sigma, sigma0, keep, lie, xs, params)


# -- coordinate changes ---------------------------------------------------------

def _pl_mul(x, y, n):
    out = {}
    for u, cu in x.items():
        for v, cv in y.items():
            w = u + v
            if len(w) > n or w.count(1) > 1:
                continue
            out[w] = out.get(w, 0) + cu * cv
    return out


@lru_cache(maxsize=None)
def polylog_coordinate_change(n):
    """Express E, L_1..L_n through the functions log, Li_1..Li_n.

    The group element is exp(E e0 + sum L_k ad(e0)^{k-1} e1) in the algebra
    of words in e0, e1 with at most one e1; log is the e0 coefficient and
    Li_k is minus the coefficient of e0^{k-1} e1.
    """
    E, *L = polylog_symbols(n)
    Y = {(0,): E}
    for k in range(1, n + 1):
        elem = {(1,): 1}
        for _ in range(k - 1):
            a = _pl_mul({(0,): 1}, elem, n)
            b = _pl_mul(elem, {(0,): 1}, n)
            elem = {w: a.get(w, 0) - b.get(w, 0) for w in set(a) | set(b)}
        for w, c in elem.items():
            Y[w] = Y.get(w, 0) + L[k - 1] * c
    expY = {(): sympy.Integer(1)}
    power = {(): sympy.Integer(1)}
    for m in range(1, n + 1):
        power = _pl_mul(power, Y, n)
        for w, c in power.items():
            expY[w] = expY.get(w, 0) + c / sympy.factorial(m)
    log_s = sympy.Symbol("log")
    li_s = [sympy.Symbol("Li%d" % k) for k in range(1, n + 1)]
    subs = {E: log_s}
    for k in range(1, n + 1):
        coef = sympy.expand(-expY.get((0,) * (k - 1) + (1,), 0))
        # coef = -L_k + (terms in E and lower L)
        rest = sympy.expand(coef + L[k - 1])
        subs[L[k - 1]] = sympy.expand(-(li_s[k - 1] - rest.subs(subs)))
    return subs, log_s, li_s


def _shuffle_mul(x, y):
    out = {}
    for u, cu in x.items():
        for v, cv in y.items():
            for w, m in shuffle(u, v).items():
                out[w] = out.get(w, 0) + cu * cv * m
    return {w: c for w, c in out.items() if c}


def lyndon_coordinates_in_dual_words(letters, n):
    """Lyndon coordinates of log(g) as shuffle elements, for g = sum f_rev(w) w.

    Returns {lyndon word: {shuffle word: Fraction}}.
    """
    letters = sorted(letters)
    words = []

    def rec(w, weight):
        if w:
            words.append(w)
        for a in letters:
            if weight + a[0] <= n:
                rec(w + (a,), weight + a[0])

    rec((), 0)

    @lru_cache(maxsize=None)
    def coef(w, k):
        # coefficient of w in (g - 1)^k as a shuffle element
        if k == 1:
            return ((tuple(reversed(w)), Fraction(1)),)
        out = {}
        for i in range(1, len(w)):
            head = {tuple(reversed(w[:i])): Fraction(1)}
            for v, c in _shuffle_mul(head, dict(coef(w[i:], k - 1))).items():
                out[v] = out.get(v, 0) + c
        return tuple((v, c) for v, c in out.items() if c)

    log_words = {}
    for w in words:
        acc = {}
        for k in range(1, len(w) + 1):
            for v, c in coef(w, k):
                acc[v] = acc.get(v, 0) + c * Fraction((-1) ** (k + 1), k)
        acc = {v: c for v, c in acc.items() if c}
        if acc:
            log_words[w] = acc
    # triangular extraction, with shuffle-element coefficients
    rest = {w: dict(c) for w, c in log_words.items()}
    out = {}
    for lam in lyndon_words(letters, n):
        c = {v: cv for v, cv in rest.get(lam, {}).items() if cv}
        if not c:
            continue
        out[lam] = c
        for w, m in bracket_expansion(lam):
            tgt = rest.setdefault(w, {})
            for v, cv in c.items():
                tgt[v] = tgt.get(v, 0) - m * cv
    return out


# -- assembling the loci -----------------------------------------------------

def label_symbol(label):
    if label[0] in ("E", "P"):
        return sympy.Symbol("%s%d_%d" % label)
    out = sympy.Integer(1)
    for g in label[1:]:
        out *= label_symbol(g)
    return out


class PolylogPolynomial:
    """Polynomial in the basis symbols, log and Li_1..Li_n."""

    def __init__(self, expr, depth, basis_symbols=()):
        self.expr = sympy.expand(expr)
        self.depth = depth
        self.basis_symbols = tuple(basis_symbols)

    @property
    def function_symbols(self):
        return [sympy.Symbol("log")] + [sympy.Symbol("Li%d" % k) for k in range(1, self.depth + 1)]

    def is_zero(self):
        return self.expr == 0

    def terms(self):
        """[(coefficient, {symbol name: exponent})] with rational coefficients."""
        gens = sorted(self.expr.free_symbols, key=str)
        if not gens:
            return [(Fraction(str(self.expr)), {})] if self.expr != 0 else []
        poly = sympy.Poly(self.expr, *gens)
        out = []
        for mon, c in poly.terms():
            c = sympy.Rational(c)
            out.append((Fraction(int(c.p), int(c.q)),
                        {str(g): e for g, e in zip(gens, mon) if e}))
        return out

    @staticmethod
    def symbol_weight(name):
        if name == "log":
            return 1
        if name.startswith("Li"):
            return int(name[2:])
        return int(name[1:].split("_")[0])

    def _weights(self, functions):
        out = set()
        for _, mon in self.terms():
            out.add(sum(self.symbol_weight(s) * e for s, e in mon.items()
                        if (s == "log" or s.startswith("Li")) == functions))
        return out

    def half_weight(self):
        """Largest weight of a monomial, basis symbols included."""
        ws = {sum(self.symbol_weight(s) * e for s, e in mon.items()) for _, mon in self.terms()}
        return max(ws) if ws else 0

    def function_weight(self):
        """Largest weight carried by log and Li_k alone; the growth exponent."""
        ws = self._weights(True)
        return max(ws) if ws else 0

    def basis_weight(self):
        ws = self._weights(False)
        return max(ws) if ws else 0

    def text(self):
        return str(self.expr)

    def to_json(self):
        return {"text": self.text(), "depth": self.depth,
                "terms": [[str(c), mon] for c, mon in self.terms()]}

    def __repr__(self):
        return "PolylogPolynomial(%s)" % self.expr


class LociResult:
    def __init__(self, scheme, scheme0, datum, oracle, basis, polynomials, ideal):
        self.scheme = scheme
        self.scheme0 = scheme0
        self.datum = datum
        self.oracle = oracle
        self.basis = basis            # list of (symbol name, integrand)
        self.polynomials = polynomials
        self.ideal = ideal

    def to_json(self):
        return {"scheme": list(self.scheme.primes), "scheme0": list(self.scheme0.primes),
                "basis": [[name, repr(x)] for name, x in self.basis],
                "loci": [f.to_json() for f in self.polynomials]}

    def __iter__(self):
        return iter((self.scheme0, self.basis, self.polynomials))


def _to_basis(elem, weight, change):
    """A shuffle element (words in generator letters) in terms of basis symbols."""
    out = sympy.Integer(0)
    if not elem:
        return out
    if weight == 0:
        return sympy.Rational(elem.get((), 0))
    cm = change[weight]
    for w, c in elem.items():
        for label, b in cm.dual_function(w).items():
            if b:
                out += sympy.Rational(c * b) * label_symbol(label)
    return out


def assemble_loci(Z: IntegerScheme, p, n, eps_exp=8, datum: BasisDatum = None, scheme0=None):
    """Loci polynomials in Q[B, log, Li_1..Li_n] at depth n."""
    Z0 = scheme0 or Z
    if not set(Z.primes) <= set(Z0.primes):
        raise ValueError("the enlarged scheme must invert every prime of Z")
    if datum is None:
        datum = datum_for_scheme(Z0, n, eps_exp)
    ok, steps, oracle = verify_basis_datum(datum, p, n)
    if not ok:
        bad = steps[-1]
        raise ValueError("basis datum rejected at %s, weight %s: %s" % (bad.step, bad.weight, bad.detail))
    e0 = ext_dims(Z0, n)
    e = ext_dims(Z, n)
    # Sigma sits inside Sigma° through the positions of the primes of Z
    sigma_letters = [(1, Z0.primes.index(q)) for q in Z.primes]
    sigma_letters += [(w, i) for w, k in enumerate(e, start=1) if w > 1 for i in range(k)]
    ideal = eliminate(sigma_letters, letters_from_counts(e0), n)
    bases, counts, coords = bases_for_change(oracle, n)
    change = change_of_basis(bases, counts, coords, n)
    xcoords = lyndon_coordinates_in_dual_words(letters_from_counts(e0), n)
    pl_subs, _, _ = polylog_coordinate_change(n)
    xweight = {ideal.lyndon[lam]: word_weight(lam) for lam in ideal.lyndon}
    xelem = {ideal.lyndon[lam]: xcoords.get(lam, {}) for lam in ideal.lyndon}
    polys = []
    for g in ideal.generators:
        xs = [s for s in ideal.lyndon.values()]
        poly = sympy.Poly(sympy.expand(g), *xs) if xs else None
        total = sympy.Integer(0)
        items = poly.terms() if poly is not None else [((), g)]
        for mon, c in items:
            elem = {(): Fraction(1)}
            weight = 0
            for s, k in zip(xs, mon):
                for _ in range(k):
                    elem = _shuffle_mul(elem, xelem[s])
                    weight += xweight[s]
            total += _to_basis(elem, weight, change) * c.subs(pl_subs)
        F = PolylogPolynomial(total, n, [label_symbol(l) for l in _generator_labels(oracle, n)])
        if not F.is_zero():
            polys.append(F)
    basis = [(str(label_symbol(l)), oracle.element(l)) for l in _generator_labels(oracle, n)]
    return LociResult(Z, Z0, datum, oracle, basis, polys, ideal)


def _generator_labels(oracle, n):
    out = []
    for k in range(1, n + 1):
        out.extend(l for l in oracle.labels(k) if l[0] in ("E", "P"))
    return out
