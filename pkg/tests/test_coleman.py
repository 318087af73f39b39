import random
from fractions import Fraction

import pytest
import sympy

from ckloci.coleman import ForbiddenDisk, evaluate_polylog, expand_polylog, function_expansions
from ckloci.padic import PadicNumber, iwasawa_log, padic
from ckloci.selmer import PolylogPolynomial

P, PREC, N = 5, 14, 30
log, Li1, Li2, Li3 = sympy.symbols("log Li1 Li2 Li3")


def test_log_coefficients():
    y = Fraction(3)
    exp = expand_polylog(PolylogPolynomial(log, 1), {}, y, P, N, PREC)
    assert (exp.coeffs[0] - iwasawa_log(padic(3, P, PREC))).val >= PREC - 1
    for j in range(1, 8):
        expect = Fraction((-1) ** (j + 1), j) / y ** j
        assert (exp.coeffs[j] - PadicNumber.from_rational(expect, P, PREC)).val >= PREC - 3


def test_li1_constant_term():
    for y in (2, 3, Fraction(1, 2)):
        exp = expand_polylog(PolylogPolynomial(Li1, 1), {}, y, P, N, PREC)
        assert (exp.coeffs[0] + iwasawa_log(padic(1 - Fraction(y), P, PREC))).val >= PREC - 2


def test_constant_polynomial():
    exp = expand_polylog(PolylogPolynomial(sympy.Rational(3, 7), 1), {}, 2, P, N, PREC)
    assert (exp.coeffs[0] - PadicNumber.from_rational(Fraction(3, 7), P, PREC)).is_zero()
    assert all(c.is_zero() for c in exp.coeffs[1:])


def test_period_symbols_substituted():
    E = sympy.Symbol("E1_0")
    v = padic(7, P, PREC)
    exp = expand_polylog(PolylogPolynomial(E * log, 1, [E]), {"E1_0": v}, 2, P, N, PREC)
    ref = expand_polylog(PolylogPolynomial(log, 1), {}, 2, P, N, PREC)
    assert all((a - b * v).val >= PREC - 3 for a, b in zip(exp.coeffs, ref.coeffs))
    with pytest.raises(KeyError):
        expand_polylog(PolylogPolynomial(E * log, 1, [E]), {}, 2, P, N, PREC)


def test_forbidden_centers():
    for y in (0, 1, 5, 6, Fraction(1, 5)):
        with pytest.raises(ForbiddenDisk):
            function_expansions(y, P, 2, N, PREC)


def test_expansion_matches_direct_evaluation():
    rng = random.Random(8)
    F = PolylogPolynomial(Li1 * log / 2 - Li2 + Li3 * log, 3)
    for y in (2, 3):
        exp = expand_polylog(F, {}, y, P, 40, PREC)
        assert exp.scale_exponent == 0
        for _ in range(10):
            t = y + P * rng.randint(-30, 30)
            if t in (0, 1):
                continue
            direct = evaluate_polylog(F, {}, t, P, PREC)
            assert (exp.evaluate(t) - direct).val >= PREC - 4


def test_derivative_relations():
    y = Fraction(2)
    series = function_expansions(y, P, 3, N, PREC)
    inv_t = [PadicNumber.from_rational(Fraction((-1) ** j) / y ** (j + 1), P, PREC) for j in range(N + 1)]
    for k in (2, 3):
        prev, cur = series["Li%d" % (k - 1)], series["Li%d" % k]
        for j in range(N):
            conv = PadicNumber.exact_zero(P)
            for i in range(j + 1):
                conv = conv + prev.coeffs[i] * inv_t[j - i]
            assert ((cur.coeffs[j + 1] * (j + 1)) - conv).val >= PREC - 6


def test_growth_rescaling():
    # a constant of negative valuation is pushed back to the growth bound
    E = sympy.Symbol("E1_0")
    v = padic(Fraction(1, P ** 2), P, PREC)
    exp = expand_polylog(PolylogPolynomial(E * Li1, 1, [E]), {"E1_0": v}, 2, P, N, PREC)
    assert exp.scale_exponent == 2
    assert exp.half_weight == 1
