import random
from fractions import Fraction

import pytest
import sympy

from ckloci.frobenius import (
    c_coefficients,
    engine,
    epsilon_W,
    li,
    parse_word,
    zeta,
)
from ckloci.padic import iwasawa_log, padic

P, R = 5, 10


@pytest.fixture(scope="module")
def eng():
    return engine(P, 3, R)


def test_parse_word():
    assert parse_word("e0e1") == (0, 1) == parse_word("0,1") == parse_word("01")
    with pytest.raises(ValueError):
        parse_word("2")


def test_c_coefficients_low_order():
    c = c_coefficients(2, 2)
    assert c[(0, 0, ())] == 1
    assert c[(1, 0, (0,))] == 1
    assert c[(0, 1, (1,))] == 1


def test_c_coefficients_against_symbolic_derivatives():
    # nabla^k / k! on the KZ connection, computed with sympy: M_{k+1} = M_k' + A M_k
    t = sympy.Symbol("t")
    A = {(0,): 1 / t, (1,): 1 / (t - 1)}
    M = {(): sympy.Integer(1)}
    kmax = 4
    c = c_coefficients(kmax, 3)
    for k in range(1, kmax + 1):
        nxt = {}
        for w, f in M.items():
            nxt[w] = nxt.get(w, 0) + sympy.diff(f, t)
            if len(w) < 3:
                for a, g in A.items():
                    nxt[a + w] = nxt.get(a + w, 0) + g * f
        M = nxt
        for w, f in M.items():
            expect = sympy.together(f / sympy.factorial(k))
            got = sum(sympy.Rational(v.numerator, v.denominator) / t ** i / (t - 1) ** j
                      for (i, j, u), v in c.items() if u == w and i + j == k)
            assert sympy.simplify(expect - got) == 0


def test_epsilon_support_error():
    with pytest.raises(ValueError):
        epsilon_W(padic(2, P, R), (0, 1, 0), 2, R)


def test_epsilon_empty_word_is_one():
    assert (epsilon_W(padic(2, P, R), (), 0, R) - 1).is_zero()


def test_tau_images(eng):
    td = eng.tau_data
    assert td.on_word(()) == {(): td.on_word(())[()]}
    assert td.on_word((0,))[(0,)].to_fraction() == P
    assert (td.on_word((0, 1))[(0, 1)] - P * P).is_zero()


def test_li_empty_word(eng):
    assert (eng.li(3, ()) - 1).is_zero()


def test_li1_oracle():
    v = li(3, (1,), p=7, prec=R)
    assert (v + iwasawa_log(padic(-2, 7, R))).val >= R - 2


def test_li1_square_shuffle(eng):
    a = eng.li(2, (1,))
    assert (a * a - eng.li(2, (1, 1)) * 2).val >= R - 2


def test_zeta_examples(eng):
    assert (eng.zeta((), 2) - 1).is_zero()
    assert eng.zeta((0, 1), 2).val >= R - 2
    assert (eng.zeta((0, 0, 1), 2) - eng.zeta((0, 0, 1), 3)).val >= R - 3


def test_fixed_point_words_agree_across_points(eng):
    # Li_W(x) + Li_W'(x) relations: Li_{e0}(x) + Li_{e0}(1/x) = 0
    a = eng.li(3, (0,))
    b = eng.li(Fraction(1, 3), (0,))
    assert (a + b).val >= R - 1
