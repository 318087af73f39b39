"""
End-to-end acceptance checks, one test per criterion.  Each prints a
PASS/FAIL line; the summary is repeated at the end of a pytest run.

Run alone with ``pytest tests/test_acceptance.py -v`` or
``python3 tests/test_acceptance.py``.
"""

import random
import sys
import time
from fractions import Fraction

sys.path.insert(0, __file__.rsplit("/", 1)[0])
from acceptance_log import report  # noqa: E402

from ckloci.basis import (  # noqa: E402
    BasisDatum,
    IntegerScheme,
    period,
    realization_pairing,
    realize,
)
from ckloci.coleman import expand_polylog  # noqa: E402
from ckloci.frobenius import all_words, engine  # noqa: E402
from ckloci.hopf import (  # noqa: E402
    ShuffleModel,
    change_of_basis,
    exact_pairing,
    padic_abs,
    shuffle_model_datum,
    verify_EPD_basis,
)
from ckloci.newton import (  # noqa: E402
    RootCriterionContextError,
    RootCriterionInput,
    count_roots_in_disk,
    root_criterion,
)
from ckloci.padic import iwasawa_log, padic, valuation  # noqa: E402
from ckloci.pointcount import point_count, search_points  # noqa: E402
from ckloci.selmer import assemble_loci  # noqa: E402
from ckloci.words import (  # noqa: E402
    ZETA,
    FormalIntegrand,
    Tensor,
    goncharov_reduced_coproduct,
    li_symbol,
    log_symbol,
    parse_symbol,
    shuffle,
)

R = 12
FIXTURE = __file__.replace("test_acceptance.py", "fixtures/z2_depth2.json")


def good_points(rng, p, count, bound=200):
    out = []
    while len(out) < count:
        x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if x not in (0, 1) and valuation(x, p) == 0 and valuation(1 - x, p) == 0:
            out.append(x)
    return out


def brute_s_units(primes, bound):
    """x = a / c with a, c and c - a all S-smooth, by exhaustive search."""
    def smooth(m):
        m = abs(m)
        for q in primes:
            while m and m % q == 0:
                m //= q
        return m == 1
    out = set()
    for c in range(1, bound + 1):
        for a in range(-bound, bound + 1):
            if a and smooth(a) and smooth(c) and smooth(c - a):
                x = Fraction(a, c)
                if max(abs(x.numerator), x.denominator) <= bound:
                    out.add(x)
    return out - {0, 1}


def timed(limit, number):
    def wrap(fn):
        def run():
            start = time.time()
            ok, detail = fn()
            spent = time.time() - start
            ok = ok and spent <= limit
            report(number, ok, "%s (%.1fs, limit %ds)" % (detail, spent, limit))
            assert ok, detail
        run.__name__ = fn.__name__
        return run
    return wrap


@timed(60, 1)
def test_criterion_01_li1_oracle():
    rng = random.Random(101)
    worst = None
    for p in (5, 7, 11):
        eng = engine(p, 1, R)
        for x in good_points(rng, p, 20):
            d = (eng.values(x)[(1,)] + iwasawa_log(padic(1 - x, p, R))).val
            worst = d if worst is None else min(worst, d)
            if d < R - 2:
                return False, "Li1(%s) at p=%d off at valuation %s" % (x, p, d)
    return True, "60 points, worst agreement p^-%s" % worst


@timed(300, 2)
def test_criterion_02_shuffle_suite():
    rng = random.Random(102)
    checked = 0
    for p in (5, 7):
        eng = engine(p, 5, R)
        words = [w for k in range(1, 5) for w in all_words(k)]
        for x in good_points(rng, p, 5):
            vals = eng.values(x)
            for u in words:
                for v in words:
                    if len(u) + len(v) > 5 or u > v:
                        continue
                    rhs = None
                    for w, m in shuffle(u, v).items():
                        t = vals[w] * m
                        rhs = t if rhs is None else rhs + t
                    d = (vals[u] * vals[v] - rhs).val
                    if d < R - 3:
                        return False, "p=%d x=%s %s*%s off at %s" % (p, x, u, v, d)
                    checked += 1
    return True, "%d product identities" % checked


@timed(60, 3)
def test_criterion_03_dilogarithm():
    rng = random.Random(103)
    for p in (5, 7):
        eng = engine(p, 2, R)
        for x in good_points(rng, p, 10):
            a, b = eng.values(x), eng.values(1 - x)
            # Li_2 = Li_{e0 e1}, log = Li_{e0}
            lhs = a[(0, 1)] + b[(0, 1)] + a[(0,)] * b[(0,)]
            if lhs.val < R - 2:
                return False, "p=%d x=%s off at %s" % (p, x, lhs.val)
    return True, "20 points"


@timed(300, 4)
def test_criterion_04_mzv():
    worst = None
    for p in (5, 7):
        eng = engine(p, 5, R)
        for k in range(1, 6):
            for w in all_words(k):
                d = (eng.zeta(w, 2) - eng.zeta(w, 3)).val
                worst = d if worst is None else min(worst, d)
                if d < R - k:
                    return False, "zeta%s at p=%d depends on the auxiliary point (%s)" % (w, p, d)
        z2 = eng.zeta((0, 1), 2)
        if z2.val < R - 2:
            return False, "zeta(e0e1) at p=%d has valuation %s" % (p, z2.val)
        # cross-check with the dilogarithm identity Li_2(y) + Li_2(1 - y) + log y log(1 - y) = zeta(2)
        y = Fraction(3)
        cross = eng.li(y, (0, 1)) + eng.li(1 - y, (0, 1)) + eng.li(y, (0,)) * eng.li(1 - y, (0,))
        if (cross - z2).val < R - 2:
            return False, "dilogarithm cross-check at p=%d" % p
    return True, "62 words at two points, worst agreement p^-%s" % worst


@timed(60, 5)
def test_criterion_05_newton_soundness():
    rng = random.Random(105)
    false_certs, certified, total = 0, 0, 0
    while total < 200:
        p = rng.choice([3, 5, 7])
        b = rng.choice([0, 1])
        deg = rng.randint(1, 8)
        r = rng.randint(1, 3)
        # v(a_k) >= 0 for k >= 1 so the growth hypothesis holds with h = 1
        coeffs = [Fraction(rng.randint(1, 60) * rng.choice([1, -1]), rng.choice([1, 2, 4]))
                  * Fraction(p) ** rng.randint(0, 3) if rng.random() > 0.25 else Fraction(0)
                  for _ in range(deg + 1)]
        coeffs[0] = Fraction(0) if (b == 1 and rng.random() < 0.5) else \
            Fraction(rng.randint(1, 20)) * Fraction(p) ** rng.randint(-2, 4)
        if not any(coeffs[1:]):
            coeffs[-1] = Fraction(1)
        total += 1
        try:
            res = root_criterion(RootCriterionInput(b, deg, r, 1, coeffs, p))
        except RootCriterionContextError:
            continue
        if res:
            certified += 1
            if count_roots_in_disk(coeffs, p, r) > b:
                false_certs += 1
    return false_certs == 0, "%d polynomials, %d certified, %d false" % (total, certified, false_certs)


@timed(120, 6)
def test_criterion_06_hopf_exactness():
    model = ShuffleModel((1, 2))
    n = 4
    E, P_ = model.standard_generators(n)
    if not verify_EPD_basis(model, E, P_, n):
        return False, "standard basis rejected"
    rng = random.Random(106)
    rejected = 0
    for _ in range(50):
        E2 = {k: list(v) for k, v in E.items()}
        P2 = {k: list(v) for k, v in P_.items()}
        k = rng.choice([k for k in range(2, n + 1) if P2.get(k) or E2.get(k)])
        kind = rng.randint(0, 2)
        if kind == 0 and P2.get(k):
            P2[k].append(P2[k][0])                         # duplicate
        elif kind == 1:
            lower = rng.randint(1, k - 1)                  # decomposable in place of a generator
            x = model.product(model.word_element(model.words(lower)[0]),
                              model.word_element(model.words(k - lower)[-1]))
            if P2.get(k):
                P2[k][rng.randrange(len(P2[k]))] = x
            else:
                P2[k] = [x]
        else:
            (E2 if E2.get(k) else P2)[k] = (E2 if E2.get(k) else P2)[k][1:]   # missing element
        if not verify_EPD_basis(model, E2, P2, n):
            rejected += 1
    if rejected != 50:
        return False, "only %d of 50 corruptions rejected" % rejected
    bases, elems, coords = shuffle_model_datum(model, E, P_, n)
    e = [len(E.get(k, [])) for k in range(1, n + 1)]
    cm = change_of_basis(bases, e, coords, n)
    for k in range(1, n + 1):
        for I in cm[k].rows:
            for w in cm[k].cols:
                if cm[k].entry(I, w) != exact_pairing(model, bases, elems, e, w, I):
                    return False, "pairing mismatch at %s, %s" % (I, w)
    p, K = 5, 6
    eps = Fraction(1, p ** K)

    def noisy(k, I, l):
        return [[x + rng.randint(-9, 9) * Fraction(p) ** (K + 1) for x in row] for row in coords(k, I, l)]

    approx = change_of_basis(bases, e, noisy, n)
    worst = Fraction(0)
    for k in range(1, n + 1):
        for w in cm[k].cols:
            f, g = cm[k].dual_function(w), approx[k].dual_function(w)
            for I in f:
                worst = max(worst, padic_abs(f[I] - g[I], p))
    return worst < eps, "50/50 corruptions rejected, exact pairing, noise bound %s < %s" % (worst, eps)


@timed(60, 7)
def test_criterion_07_realization():
    rng = random.Random(107)
    p = 5
    for x in good_points(rng, p, 10) + [Fraction(2), Fraction(-1)]:
        v = realize(parse_symbol("I(1_0; 0; %s)" % x), p, R).pair((1,))
        if (v - iwasawa_log(padic(x, p, R))).val < R - 1:
            return False, "log period of %s" % x
    for s in (li_symbol(2, 2), li_symbol(-1, 3), log_symbol(2) * li_symbol(3, 2)):
        k = s.weight()
        for comp in [(1,), (2,), (1, 1), (5,), (1, 1, 1, 1, 1)]:
            if sum(comp) != k and realization_pairing(s, comp, p, R) != 0:
                return False, "nonzero mismatched pairing"
    return True, "weight-1 periods and mismatched pairings"


@timed(600, 8)
def test_criterion_08_loci_vanishing():
    p, n = 5, 2
    datum = BasisDatum.load(FIXTURE)
    Z = datum.scheme
    loci = assemble_loci(Z, p, n, datum.eps_exp, datum=datum)
    eps_exp = datum.eps_exp
    if not loci.polynomials:
        return False, "no locus polynomial"
    prec = eps_exp + 6
    periods = {name: period(x, p, prec) for name, x in loci.basis}
    worst = None
    for F in loci.polynomials:
        for x in (2, -1, Fraction(1, 2)):
            exp = expand_polylog(F, periods, x, p, 8, prec)
            v = exp.coeffs[0].val - exp.scale_exponent
            worst = v if worst is None else min(worst, v)
            if v <= eps_exp:
                return False, "F = %s at %s has valuation %s" % (F.text(), x, v)
    return True, "F = %s vanishes to p^-%s" % (loci.polynomials[0].text(), worst)


@timed(1800, 9)
def test_criterion_09_point_count():
    p = 5
    notes = []
    for primes, expect in (((2,), {2, -1, Fraction(1, 2)}), ((), set())):
        Z = IntegerScheme(primes)
        oracle = brute_s_units(primes, 64)
        if oracle != expect or search_points(Z, 64) != oracle:
            return False, "search oracle disagrees"
        res = point_count(Z, p, max_iterations=4)
        if res.halted and res.points != expect:
            return False, "%s: wrong set %s" % (Z.label(), sorted(res.points))
        notes.append("%s %s after %d iteration(s)" % (Z.label(), "halted" if res.halted else "budget exhausted",
                                                      len(res.iterations)))
    return True, "; ".join(notes)


@timed(1, 10)
def test_criterion_10_appendix_coproduct():
    a = log_symbol(2)
    b = FormalIntegrand.atom(ZETA, (0, 0, 1))
    prims = goncharov_reduced_coproduct(a).is_zero() and goncharov_reduced_coproduct(b).is_zero()
    lhs = goncharov_reduced_coproduct(a * b)
    rhs = Tensor.pure(a, b) + Tensor.pure(b, a)
    ok = prims and lhs == rhs and lhs.bidegree(2, 2).is_zero()
    return ok, "reduced coproduct of log2*zeta(3) is the two-term sum"


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion")]
    failed = 0
    for t in tests:
        try:
            t()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
