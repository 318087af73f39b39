"""
Arithmetic layer: Ext dimensions over Q, realization of formal integrands in
the standard basis, and the verifier for candidate Hopf-algebra bases.

Realization works with the path series Phi_x = sum_W I(1_0; W; x) W, whose
logarithm Lambda has graded pieces Lambda_i.  The coordinate of an atom at
the composition (i_1, ..., i_k) is the coefficient of its word in
Lambda_{i_1} ... Lambda_{i_k}; products of atoms pair through the unshuffle
coproduct of compositions.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .frobenius import engine
from .hopf import (
    dims,
    elementary_divisor_valuations,
    epsilon_linear_independence,
    maximal_minors,
    padic_abs,
)
from .padic import INF, PadicNumber, valuation
from .words import (
    ZETA,
    FormalIntegrand,
    goncharov_reduced_coproduct,
    monomial_weight,
    parse_symbol,
    shuffle,
    monomial_str,
)


# -- schemes and dimensions -------------------------------------------------

@dataclass(frozen=True)
class IntegerScheme:
    """Spec Z[1/S] for a finite set S of primes."""

    primes: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "primes", tuple(sorted(set(int(q) for q in self.primes))))

    def is_unit(self, q) -> bool:
        q = Fraction(q)
        if q == 0:
            return False
        for n in (abs(q.numerator), q.denominator):
            for s in self.primes:
                while n % s == 0:
                    n //= s
            if n != 1:
                return False
        return True

    def label(self):
        return "Z[1/%s]" % ",".join(map(str, self.primes)) if self.primes else "Z"


def ext_dims(Z: IntegerScheme, n):
    """Dimensions e_1..e_n of Ext^1(Q(0), Q(i)) over Z (K = Q)."""
    out = []
    for i in range(1, n + 1):
        if i == 1:
            out.append(len(Z.primes))
        else:
            out.append(1 if i % 2 else 0)
    return out


def compositions(n):
    if n == 0:
        return [()]
    out = []
    for first in range(1, n + 1):
        out.extend((first,) + c for c in compositions(n - first))
    return out


# -- realization ------------------------------------------------------------

class RealizationError(ValueError):
    pass


def _zero(p):
    return PadicNumber.exact_zero(p)


def _series_mul(a, b, n, p):
    out = {}
    for u, cu in a.items():
        for v, cv in b.items():
            if len(u) + len(v) > n:
                continue
            w = u + v
            out[w] = out[w] + cu * cv if w in out else cu * cv
    return out


def _series_log(phi, n, p):
    """log of 1 + X truncated at word length n (phi contains the constant 1)."""
    X = {w: c for w, c in phi.items() if w}
    out = {}
    power = dict(X)
    for k in range(1, n + 1):
        coef = Fraction((-1) ** (k + 1), k)
        for w, c in power.items():
            out[w] = out[w] + c * coef if w in out else c * coef
        if k < n:
            power = _series_mul(power, X, n, p)
    return out


@lru_cache(maxsize=None)
def _log_path(endpoint, p, n, prec):
    eng = engine(p, max(n, 1), prec)
    phi = {}
    if endpoint == ZETA:
        aux = 2 if p != 2 else None
        if aux is None:
            raise RealizationError("no point of good reduction at p = 2")
        for W in eng.words:
            z = eng.zeta(W, aux) if W else PadicNumber.from_rational(1, p, prec)
            phi[W] = -z if W.count(1) % 2 else z
    else:
        x = Fraction(endpoint)
        if valuation(x, p) != 0 or valuation(1 - x, p) != 0:
            raise RealizationError("endpoint %s has bad reduction at %d" % (x, p))
        vals = eng.values(x)
        for W, v in vals.items():
            phi[W] = -v if W.count(1) % 2 else v
    lam = _series_log(phi, n, p)
    pieces = {}
    for w, c in lam.items():
        pieces.setdefault(len(w), {})[w] = c
    return pieces


def _atom_realization(atom, p, prec, n):
    endpoint, word = atom
    r = len(word)
    pieces = _log_path(endpoint, p, max(n, r), prec)
    out = {}
    for comp in compositions(r):
        prod = {(): PadicNumber.from_rational(1, p, prec)}
        for i in comp:
            prod = _series_mul(prod, pieces.get(i, {}), r, p)
        c = prod.get(word)
        out[comp] = c if c is not None else _zero(p)
    return out


def _convolve(f, g, p):
    out = {}
    for u, cu in f.items():
        if cu.is_exact_zero():
            continue
        for v, cv in g.items():
            if cv.is_exact_zero():
                continue
            for w, m in shuffle(u, v).items():
                t = cu * cv * m
                out[w] = out[w] + t if w in out else t
    return out


@dataclass
class StandardVector:
    weight: int
    coords: dict

    def vector(self):
        return [self.coords[c] for c in compositions(self.weight)]

    def pair(self, composition):
        composition = tuple(composition)
        if sum(composition) != self.weight:
            return 0
        return self.coords.get(composition, 0)


def realize(s: FormalIntegrand, p, prec, weight=None) -> StandardVector:
    """Coordinates of s in the standard basis dual to compositions."""
    if weight is None:
        weight = s.weight() if not s.is_zero() else 0
    comps = compositions(weight)
    total = {c: _zero(p) for c in comps}
    if weight == 0:
        c = s.terms.get((), 0)
        total[()] = PadicNumber.from_rational(c, p, prec) if c else _zero(p)
        return StandardVector(0, total)
    for mono, coef in s.terms.items():
        if monomial_weight(mono) != weight:
            continue
        acc = {(): PadicNumber.from_rational(1, p, prec)}
        for atom in mono:
            acc = _convolve(acc, _atom_realization(atom, p, prec, weight), p)
        for c, v in acc.items():
            total[c] = total[c] + v * coef
    return StandardVector(weight, total)


def realization_pairing(s: FormalIntegrand, composition, p, prec):
    composition = tuple(composition)
    try:
        w = s.weight()
    except ValueError:
        raise
    if w != sum(composition):
        return 0
    return realize(s, p, prec, w).pair(composition)


# -- basis data -------------------------------------------------------------

def parse_integrand(data):
    """A symbol string, or a list of [coefficient, [symbol, ...]] terms."""
    if isinstance(data, str):
        return parse_symbol(data)
    acc = FormalIntegrand.zero()
    for coef, factors in data:
        term = FormalIntegrand.one()
        for f in factors:
            term = term * parse_symbol(f)
        acc = acc + term * Fraction(coef)
    return acc


@dataclass
class BasisDatum:
    scheme: IntegerScheme
    E: dict
    P: dict = field(default_factory=dict)
    eps_exp: int = 8

    @classmethod
    def from_json(cls, data):
        S = IntegerScheme(tuple(data.get("scheme", [])))
        E = {int(k): [parse_integrand(x) for x in v] for k, v in data.get("E", {}).items()}
        P = {int(k): [parse_integrand(x) for x in v] for k, v in data.get("P", {}).items()}
        return cls(S, E, P, int(data.get("eps_exp", 8)))

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def eps(self, p):
        return Fraction(1, p ** self.eps_exp)


def standard_weight_one(Z: IntegerScheme):
    return [FormalIntegrand.atom(q, (0,)) for q in Z.primes]


class BasisVerificationError(Exception):
    def __init__(self, step, weight, message):
        super().__init__("%s failed at weight %s: %s" % (step, weight, message))
        self.step = step
        self.weight = weight


@dataclass
class StepResult:
    step: str
    weight: int
    ok: bool
    detail: str = ""


class InnerProductOracle:
    """The inner products <I, x> against the concrete basis, weight by weight."""

    def __init__(self, datum: BasisDatum, p, prec):
        self.datum = datum
        self.p = p
        self.prec = prec
        self.S = datum.scheme
        self.basis = {}       # weight -> list of (label, FormalIntegrand)
        self.n_ext = {}       # weight -> number of extension elements at the front
        self._coords = {}
        self._solver = {}     # weight -> data for the inner-product systems
        self._weight1_matrix = None

    # weight bookkeeping
    def labels(self, k):
        return [lab for lab, _ in self.basis.get(k, [])]

    def element(self, label):
        for k, items in self.basis.items():
            for lab, x in items:
                if lab == label:
                    return x
        raise KeyError(label)

    def generators(self, k):
        return [(lab, x) for lab, x in self.basis.get(k, []) if lab[0] in ("E", "P")]

    def decomposables(self, k):
        """Monomials of weight k in lower generators, each with >= 2 factors."""
        flat = []
        for j in range(1, k):
            for lab, x in self.generators(j):
                flat.append((j, lab, x))
        out = []

        def rec(start, remaining, chosen):
            if remaining == 0:
                if len(chosen) >= 2:
                    out.append(tuple(chosen))
                return
            for idx in range(start, len(flat)):
                if flat[idx][0] <= remaining:
                    rec(idx, remaining - flat[idx][0], chosen + [idx])

        rec(0, k, [])
        items = []
        for mono in out:
            x = FormalIntegrand.one()
            for idx in mono:
                x = x * flat[idx][2]
            items.append((("D",) + tuple(flat[idx][1] for idx in mono), x))
        return items

    # coordinates
    def coords(self, x: FormalIntegrand, k):
        out = [Fraction(0)] * len(self.basis[k])
        for mono, c in x.terms.items():
            if monomial_weight(mono) != k:
                continue
            v = self._mono_coords(mono, k)
            for i, vi in enumerate(v):
                out[i] += c * vi
        return out

    def inner(self, label, x: FormalIntegrand):
        k = x.weight()
        return self.coords(x, k)[self.labels(k).index(label)]

    def _mono_coords(self, mono, k):
        key = mono
        if key in self._coords:
            return self._coords[key]
        if k == 1:
            v = self._weight1(mono)
        else:
            v = self._solve(FormalIntegrand({mono: 1}), k)
        self._coords[key] = v
        return v

    def _weight1(self, mono):
        (endpoint, word), = mono
        if endpoint == ZETA:
            return [Fraction(0)] * len(self.basis[1])
        x = Fraction(endpoint)
        y = x if word == (0,) else 1 - x
        if not self.S.is_unit(y):
            raise BasisVerificationError("units", 1, "%s is not a unit over %s" % (y, self.S.label()))
        target = [Fraction(valuation(y, q)) for q in self.S.primes]
        M = self._weight1_matrix
        # solve sum_i c_i * v(b_i) = v(y) (square diagonal-type system)
        import sympy
        sol = sympy.Matrix(M).T.LUsolve(sympy.Matrix(target))
        return [Fraction(int(sympy.Rational(s).p), int(sympy.Rational(s).q)) for s in sol]

    def coproduct_vector(self, x: FormalIntegrand, k):
        """Coordinates of the reduced coproduct in (+)_l basis_l (x) basis_{k-l}."""
        t = goncharov_reduced_coproduct(x)
        blocks = []
        for l in range(1, k):
            blocks.append([[Fraction(0)] * len(self.basis[k - l]) for _ in self.basis[l]])
        for (L, R), c in t.terms.items():
            l = monomial_weight(L)
            if not 1 <= l < k:
                continue
            cl = self._mono_coords(L, l)
            cr = self._mono_coords(R, k - l)
            blk = blocks[l - 1]
            for i, a in enumerate(cl):
                if a:
                    row = blk[i]
                    for j, b in enumerate(cr):
                        if b:
                            row[j] += c * a * b
        flat = []
        for blk in blocks:
            for row in blk:
                flat.extend(row)
        return flat

    def coproduct_block(self, x: FormalIntegrand, k, l):
        vec = self.coproduct_vector(x, k)
        start = sum(len(self.basis[j]) * len(self.basis[k - j]) for j in range(1, l))
        ncols = len(self.basis[k - l])
        rows = []
        for i in range(len(self.basis[l])):
            rows.append(vec[start + i * ncols: start + (i + 1) * ncols])
        return rows

    def _solve(self, x, k):
        data = self._solver.get(k)
        if data is None:
            raise BasisVerificationError("inner_products", k, "no inner product available in weight %d" % k)
        n_ext = self.n_ext[k]
        labels = self.labels(k)
        out = [Fraction(0)] * len(labels)
        # coproduct system for P and decomposables
        alpha = {}
        if data["pd_rows"]:
            t = self.coproduct_vector(x, k)
            cols = data["pd_cols"]
            import sympy
            A = sympy.Matrix([[r[c] for c in cols] for r in data["pd_rows"]])
            b = sympy.Matrix([t[c] for c in cols])
            sol = A.T.LUsolve(b)
            for idx, s in enumerate(sol):
                s = sympy.Rational(s)
                alpha[n_ext + idx] = Fraction(int(s.p), int(s.q))
        for i, a in alpha.items():
            out[i] = a
        if n_ext:
            residual = x
            for i, a in alpha.items():
                if a:
                    residual = residual - self.basis[k][i][1] * a
            rv = realize(residual, self.p, self.prec, k).vector()
            cols = data["e_cols"]
            beta = _padic_solve([[row[c] for c in cols] for row in data["e_rows"]],
                                [rv[c] for c in cols], self.p)
            for i, b in enumerate(beta):
                out[i] = b
        return out


def _padic_solve(rows, rhs, p):
    """Solve sum_i beta_i rows[i] = rhs by Gaussian elimination over Q_p."""
    n = len(rows)
    A = [[rows[i][j] for i in range(n)] + [rhs[j]] for j in range(n)]
    A = [[c if isinstance(c, PadicNumber) else PadicNumber.from_rational(c, p, 40) for c in r] for r in A]
    for col in range(n):
        piv = min(range(col, n), key=lambda r: A[r][col].val if not A[r][col].is_zero() else INF)
        if A[piv][col].is_zero():
            raise BasisVerificationError("inner_products", None, "singular realization system")
        A[col], A[piv] = A[piv], A[col]
        inv = A[col][col].inverse()
        A[col] = [c * inv for c in A[col]]
        for r in range(n):
            if r != col and not A[r][col].is_exact_zero():
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return [A[i][n].rational_reconstruction() for i in range(n)]


def _best_columns(rows, p):
    """Column subset maximizing |maximal minor|_p, with its size."""
    k = len(rows)
    if k == 0:
        return [], Fraction(1)
    m = len(rows[0])
    best, best_val = None, Fraction(-1)
    import sympy
    for cols in combinations(range(m), k):
        d = sympy.Matrix([[_frac(r[c]) for c in cols] for r in rows]).det()
        d = Fraction(int(sympy.Rational(d).p), int(sympy.Rational(d).q))
        a = padic_abs(d, p)
        if a > best_val:
            best, best_val = list(cols), a
    return best, best_val


def _frac(c):
    import sympy
    if isinstance(c, PadicNumber):
        c = c.to_fraction()
    c = Fraction(c)
    return sympy.Rational(c.numerator, c.denominator)


def verify_basis_datum(datum: BasisDatum, p, n, prec=None, allow_incomplete=False):
    """Run the generator, unit, coproduct, independence and spread checks,
    then build the inner-product oracle.

    Returns (ok, steps, oracle); ``steps`` lists a StepResult per check.
    With ``allow_incomplete`` the top weight may lack generators (used while
    searching); its inner products are then not available.
    """
    S = datum.scheme
    if p in S.primes:
        raise ValueError("p must not be inverted in the scheme")
    eps = datum.eps(p)
    if prec is None:
        prec = datum.eps_exp + 4
    oracle = InnerProductOracle(datum, p, prec)
    steps = []

    def fail(step, k, msg):
        steps.append(StepResult(step, k, False, msg))
        return False, steps, oracle

    e = ext_dims(S, n)
    # base case
    E1 = datum.E.get(1, [])
    if datum.P.get(1):
        return fail("generators", 1, "no non-extension generators in weight 1")
    if len(E1) != len(S.primes):
        return fail("generators", 1, "need %d logarithms, got %d" % (len(S.primes), len(E1)))
    rows = []
    for x in E1:
        if len(x.terms) != 1:
            return fail("generators", 1, "weight-1 element must be a single logarithm")
        (mono, c), = x.terms.items()
        if len(mono) != 1 or mono[0][1] != (0,) or mono[0][0] == ZETA:
            return fail("generators", 1, "weight-1 element must be log(b)")
        b = Fraction(mono[0][0]) ** 1
        if not S.is_unit(b):
            return fail("units", 1, "%s is not a unit" % b)
        vals = [valuation(b, q) * c for q in S.primes]
        if sum(1 for v in vals if v) != 1:
            return fail("generators", 1, "%s is not a generator of a prime power" % b)
        rows.append(vals)
    used = [next(i for i, v in enumerate(r) if v) for r in rows]
    if sorted(used) != list(range(len(S.primes))):
        return fail("generators", 1, "each inverted prime needs exactly one logarithm")
    oracle._weight1_matrix = [[Fraction(v) for v in r] for r in rows]
    oracle.basis[1] = [(("E", 1, i), x) for i, x in enumerate(E1)]
    oracle.n_ext[1] = len(E1)
    steps.append(StepResult("generators", 1, True))

    expected = dims(e, n)
    for k in range(2, n + 1):
        Ek = datum.E.get(k, [])
        Pk = datum.P.get(k, [])
        if len(Ek) != e[k - 1]:
            return fail("generators", k, "need %d extension elements, got %d" % (e[k - 1], len(Ek)))
        for x in Ek + Pk:
            if x.is_zero() or x.weights() != {k}:
                return fail("generators", k, "element %r is not homogeneous of weight %d" % (x, k))
            for end in x.endpoints():
                if end == ZETA:
                    continue
                if not (S.is_unit(end) and S.is_unit(1 - Fraction(end))):
                    return fail("units", k, "endpoint %s is ramified outside S" % end)
        steps.append(StepResult("units", k, True))
        D = oracle.decomposables(k)
        items = [(("E", k, i), x) for i, x in enumerate(Ek)] + \
                [(("P", k, i), x) for i, x in enumerate(Pk)] + D
        short = len(items) < expected[k - 1] and allow_incomplete and k == n
        if len(items) != expected[k - 1] and not short:
            return fail("coproduct_independence", k, "basis has %d elements, dimension is %d" % (len(items), expected[k - 1]))
        oracle.basis[k] = items
        oracle.n_ext[k] = len(Ek)
        # extensions have small coproduct
        for i, x in enumerate(Ek):
            vec = oracle.coproduct_vector(x, k)
            size = max((padic_abs(c, p) for c in vec), default=Fraction(0))
            if size >= eps:
                return fail("extension_coproduct", k, "coproduct of extension %d has size %s" % (i, size))
        steps.append(StepResult("extension_coproduct", k, True))
        # realizations of extensions are eps-independent
        e_rows = [realize(x, p, prec, k).vector() for x in Ek]
        if Ek:
            if not epsilon_linear_independence(e_rows, p, eps):
                return fail("extension_independence", k, "realizations are not eps-linearly independent")
        steps.append(StepResult("extension_independence", k, True, "%d vectors" % len(Ek)))
        # coproducts of P and decomposables are eps-independent
        pd_rows = [oracle.coproduct_vector(x, k) for _, x in items[len(Ek):]]
        if pd_rows:
            if not epsilon_linear_independence(pd_rows, p, eps):
                return fail("coproduct_independence", k, "coproducts are not eps-linearly independent")
        steps.append(StepResult("coproduct_independence", k, True, "%d vectors" % len(pd_rows)))
        # eps small against the spread of the basis
        consts = []
        for rows_ in (pd_rows, e_rows):
            if rows_:
                vals = elementary_divisor_valuations(
                    [[_frac_plain(c) for c in r] for r in rows_], p)
                if vals:
                    consts.append(Fraction(p) ** max(vals))
        C = max(consts) if consts else Fraction(1)
        if not eps * 2 * C * C < 1:
            return fail("spread", k, "eps too large for spread (C = %s)" % C)
        steps.append(StepResult("spread", k, True, "C = %s" % C))
        pd_cols, _ = _best_columns(pd_rows, p)
        e_cols, _ = _best_columns([[c.to_fraction() if isinstance(c, PadicNumber) else c for c in r]
                                   for r in e_rows], p)
        oracle._solver[k] = {"pd_rows": pd_rows, "pd_cols": pd_cols,
                             "e_rows": e_rows, "e_cols": e_cols}
    steps.append(StepResult("inner_products", n, True, "inner products available"))
    return True, steps, oracle


def _frac_plain(c):
    if isinstance(c, PadicNumber):
        return c.to_fraction()
    return Fraction(c)


def bases_for_change(oracle: InnerProductOracle, n):
    """Inputs for hopf.change_of_basis built from a verified oracle."""
    bases = {k: oracle.labels(k) for k in range(1, n + 1)}
    counts = [oracle.n_ext.get(k, 0) for k in range(1, n + 1)]

    def coords(k, label, l):
        return oracle.coproduct_block(oracle.element(label), k, l)

    return bases, counts, coords


def datum_for_scheme(Z: IntegerScheme, n, eps_exp=8):
    """A default datum: logarithms of the primes, zeta values in odd weight."""
    E = {1: standard_weight_one(Z)}
    for k in range(2, n + 1):
        if k % 2 and k >= 3:
            E[k] = [FormalIntegrand.atom(ZETA, (0,) * (k - 1) + (1,))]
    return BasisDatum(Z, E, {}, eps_exp)


# -- periods and search ------------------------------------------------------

def _smooth_numbers(primes, bound):
    out = {1}
    for q in primes:
        grow = set()
        for m in out:
            while m * q <= bound:
                m *= q
                grow.add(m)
        out |= grow
    return sorted(out)


def s_unit_points(Z: IntegerScheme, height_bound):
    """All x with x and 1 - x units over Z and height max(|a|, |b|) <= bound."""
    smooth = _smooth_numbers(Z.primes, height_bound)
    found = set()
    for a in smooth:
        for sa in (1, -1):
            for b in smooth:
                x = Fraction(sa * a, b)
                if x.numerator != sa * a or x in (0, 1):
                    continue
                if Z.is_unit(1 - x):
                    found.add(x)
    return sorted(found)


def period(s: FormalIntegrand, p, prec):
    """The p-adic period: atoms go to signed p-adic polylogarithms and zetas."""
    n = max(s.weights() | {1})
    eng = engine(p, n, prec)
    total = PadicNumber.exact_zero(p)
    for mono, c in s.terms.items():
        term = PadicNumber.from_rational(1, p, prec)
        for endpoint, word in mono:
            if endpoint == ZETA:
                v = eng.zeta(word, 2)
            else:
                v = eng.values(Fraction(endpoint))[word]
            term = term * (-v if word.count(1) % 2 else v)
        total = total + term * c
    return total


class BasisSearchFailed(RuntimeError):
    pass


def search_basis_datum(Z: IntegerScheme, p, n, eps_exp=8, height_bound=None, max_tries=400):
    """Complete the default datum with non-extension generators found greedily.

    Candidates are atoms I(1_0; W; x) at S-unit points x of increasing height,
    with words W of the right weight; a candidate is kept when the datum
    truncated at its weight still verifies.
    """
    datum = datum_for_scheme(Z, n, eps_exp)
    e = ext_dims(Z, n)
    expected = dims(e, n)
    bound = height_bound or max([2] + [q * q for q in Z.primes])
    points = [x for x in s_unit_points(Z, bound) if valuation(x, p) == 0 and valuation(1 - x, p) == 0]
    points.sort(key=lambda x: (max(abs(x.numerator), x.denominator), x))
    tries = 0
    for k in range(2, n + 1):
        while True:
            trial = BasisDatum(Z, {j: v for j, v in datum.E.items() if j <= k},
                               {j: list(v) for j, v in datum.P.items() if j <= k}, eps_exp)
            ok, steps, oracle = verify_basis_datum(trial, p, k, allow_incomplete=True)
            if not ok:
                raise BasisSearchFailed("datum rejected at weight %d: %s" % (k, steps[-1].detail))
            have = len(oracle.basis[k])
            if have == expected[k - 1]:
                break
            added = False
            for x in points:
                for word in _candidate_words(k):
                    tries += 1
                    if tries > max_tries:
                        raise BasisSearchFailed("search budget exhausted at weight %d" % k)
                    cand = FormalIntegrand.atom(x, word)
                    P = {j: list(v) for j, v in trial.P.items()}
                    P.setdefault(k, []).append(cand)
                    test = BasisDatum(Z, trial.E, P, eps_exp)
                    ok, _, _ = verify_basis_datum(test, p, k, allow_incomplete=True)
                    if ok:
                        datum.P.setdefault(k, []).append(cand)
                        added = True
                        break
                if added:
                    break
            if not added:
                raise BasisSearchFailed("no candidate completes weight %d" % k)
    return datum


def _candidate_words(k):
    # classical polylogarithm words first, then the remaining words
    first = (0,) * (k - 1) + (1,)
    rest = [w for w in _all_words(k) if w != first and w[-1] == 1 and w[0] == 0]
    return [first] + rest


def _all_words(k):
    if k == 0:
        return [()]
    return [w + (a,) for w in _all_words(k - 1) for a in (0, 1)]
