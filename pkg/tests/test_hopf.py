import random
from fractions import Fraction

import pytest

from ckloci.hopf import (
    ShuffleModel,
    change_of_basis,
    dims,
    epsilon_linear_independence,
    exact_pairing,
    padic_abs,
    projection_constant,
    shuffle_model_datum,
    verify_EPD_basis,
)

P = 5
MODEL = ShuffleModel((1, 2))     # letter 0 of weight 1, letter 1 of weight 2
TOP = 4


def test_dims():
    assert dims((1,), 6) == [1] * 6
    # words 1111, 13, 31
    assert dims((1, 0, 1), 4)[3] == 3
    assert dims((), 3) == [0, 0, 0]
    assert dims((1, 1), 5) == [1, 2, 3, 5, 8]


def test_dims_match_word_counts():
    e = MODEL.generator_counts
    assert dims(e, 6) == [MODEL.dim(k) for k in range(1, 7)]


def test_epd_single_letter():
    m = ShuffleModel((1,))
    assert verify_EPD_basis(m, {1: [m.word_element((0,))]}, {}, 4)


def test_epd_standard_basis():
    E, P_ = MODEL.standard_generators(TOP)
    assert verify_EPD_basis(MODEL, E, P_, TOP)


def test_epd_duplicate_rejected():
    E, P_ = MODEL.standard_generators(TOP)
    P_[3] = P_[3] + P_[3][:1]
    res = verify_EPD_basis(MODEL, E, P_, TOP)
    assert not res and res.weight == 3


def test_epd_nonprimitive_extension_rejected():
    E, P_ = MODEL.standard_generators(TOP)
    E[2] = [MODEL.add(E[2][0], {(0, 0): Fraction(1)})]
    assert not verify_EPD_basis(MODEL, E, P_, TOP)


def _recombine(rng, xs, model):
    if len(xs) < 2:
        return [model.scale(x, rng.choice([1, 2, -3])) for x in xs]
    while True:
        M = [[rng.randint(-3, 3) for _ in xs] for _ in xs]
        import sympy
        if sympy.Matrix(M).det() != 0:
            break
    out = []
    for row in M:
        y = {}
        for c, x in zip(row, xs):
            y = model.add(y, x, c)
        out.append(y)
    return out


def test_epd_random_recombination_accepted():
    rng = random.Random(1)
    E, P_ = MODEL.standard_generators(TOP)
    for _ in range(5):
        P2 = {}
        for k, xs in P_.items():
            # add decomposables of lower weight so the result stays a generator set
            ys = _recombine(rng, xs, MODEL)
            if k >= 2 and ys:
                ys[0] = MODEL.add(ys[0], MODEL.product(E[1][0], E[k - 1][0] if E.get(k - 1) else E[1][0])
                                  if k == 2 else {}, 1)
            P2[k] = ys
        assert verify_EPD_basis(MODEL, E, P2, TOP)


def test_epsilon_independence_examples():
    assert epsilon_linear_independence([(1, 0), (0, 1)], P, 1)
    assert not epsilon_linear_independence([(1, 2), (1, 2)], P, Fraction(1, P ** 20))
    for k in (1, 2, 3):
        vs = [(1, 0), (1, P ** k)]
        assert epsilon_linear_independence(vs, P, Fraction(1, P ** k))
        assert not epsilon_linear_independence(vs, P, Fraction(1, P ** (k - 1)))
    with pytest.raises(ValueError):
        epsilon_linear_independence(vs, P, 0)


def test_epsilon_independence_survives_perturbation():
    rng = random.Random(7)
    eps = Fraction(1, P ** 3)
    for _ in range(30):
        vs = [[rng.randint(-20, 20) for _ in range(3)] for _ in range(2)]
        if not epsilon_linear_independence(vs, P, eps):
            continue
        # perturbations of size < eps/2 in every coordinate
        ws = [[c + rng.randint(-50, 50) * P ** 4 for c in v] for v in vs]
        from ckloci.hopf import rank
        assert rank(ws) == 2


def test_projection_constant():
    assert projection_constant([[1, 0], [0, 1]], P) == 1
    assert projection_constant([[P]], P) == P
    assert projection_constant([[1, 0], [0, P ** 2]], P) == P ** 2
    with pytest.raises(ValueError):
        projection_constant([[0, 0]], P)


def _exact_setup():
    E, P_ = MODEL.standard_generators(TOP)
    bases, elems, coords = shuffle_model_datum(MODEL, E, P_, TOP)
    return E, bases, elems, coords


def test_change_of_basis_matches_exact_pairing():
    E, bases, elems, coords = _exact_setup()
    e = [len(E.get(k, [])) for k in range(1, TOP + 1)]
    cm = change_of_basis(bases, e, coords, TOP)
    for k in range(1, TOP + 1):
        for I in cm[k].rows:
            for w in cm[k].cols:
                assert cm[k].entry(I, w) == exact_pairing(MODEL, bases, elems, e, w, I)


def test_change_of_basis_weight_one_identity():
    E, bases, elems, coords = _exact_setup()
    cm = change_of_basis(bases, [1, 1], coords, 1)
    assert cm[1].a == [[1]]


def test_extension_duals_are_lie_type():
    E, bases, elems, coords = _exact_setup()
    e = [len(E.get(k, [])) for k in range(1, TOP + 1)]
    for k in range(2, TOP + 1):
        for i in range(e[k - 1]):
            for lab in bases[k]:
                if lab[0] == "D":
                    assert exact_pairing(MODEL, bases, elems, e, ((k, i),), lab) == 0


def test_change_of_basis_noise_bound():
    E, bases, elems, coords = _exact_setup()
    e = [len(E.get(k, [])) for k in range(1, TOP + 1)]
    exact = change_of_basis(bases, e, coords, TOP)
    rng = random.Random(3)
    K = 6     # eps = p^-K, injected noise strictly smaller

    def noisy(k, I, l):
        c = coords(k, I, l)
        return [[x + rng.randint(-9, 9) * Fraction(P) ** (K + 1) for x in row] for row in c]

    approx = change_of_basis(bases, e, noisy, TOP)
    for k in range(1, TOP + 1):
        for w in exact[k].cols:
            f, g = exact[k].dual_function(w), approx[k].dual_function(w)
            for I in f:
                assert padic_abs(f[I] - g[I], P) < Fraction(1, P ** K)
