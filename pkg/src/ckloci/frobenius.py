"""
p-adic multiple polylogarithms on the thrice-punctured line.

Words are tuples over {0, 1} with the outermost letter first, so ``(0, 1)``
is the dilogarithm and ``(1,)`` is Li_1(x) = -log(1 - x).  The engine
builds the Frobenius data (tau_W, the functions L_W on the annulus, and the
Taylor coefficients of the KZ connection) once per (p, max weight, order,
precision) and then evaluates every word at a point by a triangular solve.

Sign table (internal convention -> returned value):
    connection    nabla W = e0 W dt/t + e1 W dt/(t - 1)
    letter step   e1 enters the derivative iteration with coefficient +1
    output        Li_T = (-1)**wt0(T) * v_T
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache

from .padic import INF, PadicNumber, PrecisionError, iwasawa_log, is_prime
from .series import AnnulusElement

EMPTY = ()


def all_words(max_weight):
    out = [EMPTY]
    layer = [EMPTY]
    for _ in range(max_weight):
        layer = [w + (a,) for w in layer for a in (0, 1)]
        out.extend(layer)
    return out


def parse_word(text):
    """'01' or 'e0e1' or '0,1' -> (0, 1)."""
    text = text.strip().replace("e", "").replace(",", "").replace(" ", "")
    if any(ch not in "01" for ch in text):
        raise ValueError("words use the letters 0 and 1, got %r" % text)
    return tuple(int(ch) for ch in text)


def word_str(w):
    return "".join(str(a) for a in w) or "()"


def wt0(w):
    return sum(1 for a in w if a == 0)


def wt1(w):
    return sum(1 for a in w if a == 1)


# -- Taylor coefficients of the connection --------------------------------

@lru_cache(maxsize=None)
def c_coefficients(kmax: int, max_weight: int):
    """Exact rationals c[(i, j, W)] with nabla^k W'/k! = sum c/(t^i (t-1)^j) W W'.

    Letters are prepended on the left; words longer than max_weight are
    dropped since nothing downstream reads them.
    """
    level = {(0, 0, EMPTY): Fraction(1)}
    out = dict(level)
    for k in range(kmax):
        nxt = {}

        def put(key, val):
            if val:
                nxt[key] = nxt.get(key, 0) + val

        for (i, j, w), c in level.items():
            s = c / (k + 1)
            put((i + 1, j, w), -i * s)
            put((i, j + 1, w), -j * s)
            if len(w) < max_weight:
                put((i + 1, j, (0,) + w), s)
                put((i, j + 1, (1,) + w), s)
        level = {key: v for key, v in nxt.items() if v}
        out.update(level)
    return out


def epsilon_all(x: PadicNumber, kmax: int, max_weight: int, prec: int):
    """epsilon_W(x) for every word of weight <= max_weight."""
    p = x.prime
    _check_good(x)
    xp = x ** p
    diff = xp - x
    a = diff / x
    b = diff / (x - 1)
    apow = [PadicNumber.from_rational(1, p, prec)]
    bpow = [PadicNumber.from_rational(1, p, prec)]
    for _ in range(kmax):
        apow.append((apow[-1] * a).cap(prec))
        bpow.append((bpow[-1] * b).cap(prec))
    acc = {}
    for (i, j, w), c in c_coefficients(kmax, max_weight).items():
        term = apow[i] * bpow[j] * c
        acc[w] = term if w not in acc else acc[w] + term
    # truncation: next terms have valuation >= k - weight*log_p(k)
    k = kmax + 1
    tail = math.floor(k - max_weight * math.log(k, p))
    return {w: v.cap(min(tail, prec)) for w, v in acc.items()}


def epsilon_W(x: PadicNumber, W, kmax: int, prec: int):
    if len(W) > kmax:
        raise ValueError("word of weight %d has no support below kmax=%d" % (len(W), kmax))
    vals = epsilon_all(x, kmax, len(W), prec)
    return vals.get(tuple(W), PadicNumber.exact_zero(x.prime))


def _check_good(x: PadicNumber):
    if x.is_zero() or x.val != 0 or (x - 1).is_zero() or (x - 1).val != 0:
        raise ValueError("point %r does not have good reduction (need |x| = |x-1| = 1)" % (x,))


# -- default truncation parameters ----------------------------------------

def default_parameters(p: int, max_weight: int, prec: int):
    """(working precision, annulus order, Taylor cut-off) for target precision."""
    guard = 2 * max_weight + 4
    work = prec + guard
    order = p
    while order / (p - 1) - (max_weight + 1) * math.log(order, p) < work + 1:
        order += p - 1
    order += p
    kmax = 2
    while True:
        k = kmax + 1
        if k - max_weight * math.log(k, p) >= work + 1:
            break
        kmax = k
    return work, order, kmax


# -- tau and L ------------------------------------------------------------

def _omega1_prime(f: AnnulusElement, pp: PadicNumber):
    """Coefficient of f * omega_1' in dw, omega_1' = p t^(p-1) dt/(t^p - 1)."""
    p = f.prime
    binom = [math.comb(p - 1, k) for k in range(p)]
    dpoly = [math.comb(p, p - j) for j in range(p)]
    g = f.mul_poly_w(binom).shift(-p).div_poly_u(dpoly)
    return g.scale(pp)


class TauData:
    def __init__(self, prime, max_weight, tau):
        self.prime = prime
        self.max_weight = max_weight
        self.tau = tau
        self.images = {}
        self._expand()

    def _expand(self):
        p, n = self.prime, self.max_weight
        one = PadicNumber.from_rational(1, p, 64)
        gen = {0: {(0,): PadicNumber.from_rational(p, p, 64)},
               1: {w: c for w, c in self.tau.items() if c is not None and not c.is_exact_zero()}}
        images = {EMPTY: {EMPTY: one}}
        for w in all_words(n)[1:]:
            left = images[w[:-1]]
            right = gen[w[-1]]
            prod = {}
            for u, cu in left.items():
                for v, cv in right.items():
                    if len(u) + len(v) > n:
                        continue
                    key = u + v
                    prod[key] = cu * cv if key not in prod else prod[key] + cu * cv
            images[w] = prod
        self.images = images
        inv = {}
        for v, img in images.items():
            for w, c in img.items():
                inv.setdefault(w, []).append((v, c))
        self.inverse = inv

    def on_word(self, V):
        V = tuple(V)
        if len(V) > self.max_weight:
            raise ValueError("word weight %d exceeds %d" % (len(V), self.max_weight))
        return dict(self.images[V])


def compute_tau_and_L(p: int, max_weight: int, order: int, prec: int):
    """Joint recursion by weight for tau_W and L_W; returns (TauData, L)."""
    if not is_prime(p):
        raise ValueError("%d is not prime" % p)
    pp = PadicNumber.from_rational(p, p, prec)
    words = all_words(max_weight)
    L = {EMPTY: AnnulusElement.from_dict(p, order, {0: 1}, prec)}
    tau = {}
    zero_pt = PadicNumber.exact_zero(p)
    for W in words[1:]:
        R = AnnulusElement(p, order)
        if W[-1] == 0 or W[0] == 0:
            a = L[W[:-1]] if W[-1] == 0 else None
            b = L[W[1:]] if W[0] == 0 else None
            if a is not None and b is not None:
                diff = a - b
            else:
                diff = a if a is not None else -b
            R = R + diff.mul_geometric_w().scale(pp)
        for cut in range(1, len(W)):
            t = tau.get(W[cut:])
            if t is None or t.is_exact_zero():
                continue
            R = R + L[W[:cut]].shift(-1).scale(t)
        if W[0] == 1:
            R = R - _omega1_prime(L[W[1:]], pp)
        if W == (1,):
            tW = pp
        elif len(W) >= 2 and wt1(W) >= 1:
            res = R.residue()
            tW = PadicNumber.exact_zero(p) if res is None else -res
        else:
            tW = None
        if tW is not None and not tW.is_exact_zero():
            R[-1] = R[-1] + tW if R[-1] is not None else tW
        tau[W] = tW
        prim = R.primitive(working_prec=prec - 1)
        c0 = prim.evaluate(zero_pt)
        if not c0.is_exact_zero():
            prim[0] = prim[0] - c0 if prim[0] is not None else -c0
        L[W] = prim
    return TauData(p, max_weight, {w: t for w, t in tau.items() if t is not None}), L


# -- the engine -----------------------------------------------------------

class PolylogEngine:
    """Frobenius data for one (p, max weight, order, working precision)."""

    def __init__(self, p, max_weight, prec, order=None, kmax=None):
        work, order0, kmax0 = default_parameters(p, max_weight, prec)
        self.prime = p
        self.max_weight = max_weight
        self.prec = prec
        self.work = work
        self.order = order or order0
        self.kmax = kmax or kmax0
        self.tau_data, self.L = compute_tau_and_L(p, max_weight, self.order, work)
        self.words = all_words(max_weight)
        self._points = {}
        self._lock = threading.Lock()

    def point(self, x):
        if isinstance(x, PadicNumber):
            return x
        return PadicNumber.from_rational(x, self.prime, self.work)

    def values(self, x):
        """Dict word -> Li_W(x) for all words up to the engine's weight."""
        x = self.point(x)
        key = (x.val, x.unit, x.prec)
        with self._lock:
            if key in self._points:
                return self._points[key]
        vals = self._solve(x)
        with self._lock:
            self._points[key] = vals
        return vals

    def _solve(self, x):
        _check_good(x)
        p, work = self.prime, self.work
        eps = epsilon_all(x, self.kmax, self.max_weight, work)
        Lx = {EMPTY: PadicNumber.from_rational(1, p, work)}
        for W in self.words[1:]:
            Lx[W] = self.L[W].evaluate(x)
        inv = self.tau_data.inverse
        v = {EMPTY: PadicNumber.from_rational(1, p, work)}
        for T in self.words[1:]:
            n = len(T)
            acc = PadicNumber.exact_zero(p)
            for i in range(n + 1):
                eU = eps.get(T[:i])
                if eU is None or eU.is_exact_zero():
                    continue
                for j in range(i, n + 1):
                    lw = Lx[T[i:j]]
                    if lw.is_exact_zero():
                        continue
                    front = eU * lw
                    for V, c in inv.get(T[j:], ()):
                        if V == T:
                            continue
                        acc = acc + front * c * v[V]
            v[T] = acc / (1 - p ** n)
        return {T: (-val if wt0(T) % 2 else val).cap(self.prec) for T, val in v.items()}

    def li(self, x, T):
        T = tuple(T)
        if len(T) > self.max_weight:
            raise ValueError("word weight %d exceeds engine weight %d" % (len(T), self.max_weight))
        return self.values(x)[T]

    def zeta(self, W, y):
        """Value of zeta(W) by composing paths through the auxiliary point y."""
        W = tuple(W)
        y = self.point(y)
        at_y = self.values(y)
        at_1y = self.values(1 - y)
        acc = PadicNumber.exact_zero(self.prime)
        for cut in range(len(W) + 1):
            head, tail = W[:cut], W[cut:]
            dual = tuple(1 - a for a in reversed(head))
            acc = acc + at_1y[dual] * at_y[tail]
        return acc.cap(self.prec)


_ENGINES = {}
_ENGINES_LOCK = threading.Lock()


def engine(p, max_weight, prec, order=None, kmax=None):
    key = (p, max_weight, prec, order, kmax)
    with _ENGINES_LOCK:
        eng = _ENGINES.get(key)
    if eng is None:
        eng = PolylogEngine(p, max_weight, prec, order, kmax)
        with _ENGINES_LOCK:
            _ENGINES.setdefault(key, eng)
    return eng


def li(x, T, p=None, prec=20, order=None, max_weight=None):
    """Li_T(x) at p; ``x`` a rational or PadicNumber."""
    if isinstance(x, PadicNumber):
        p = x.prime
    if p is None:
        raise ValueError("prime required")
    T = tuple(T)
    eng = engine(p, max(max_weight or 0, len(T), 1), prec, order)
    return eng.li(x, T)


def zeta(W, y, p=None, prec=20, order=None, max_weight=None):
    if isinstance(y, PadicNumber):
        p = y.prime
    W = tuple(W)
    eng = engine(p, max(max_weight or 0, len(W), 1), prec, order)
    return eng.zeta(W, y)
