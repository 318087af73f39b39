import itertools
import random
from fractions import Fraction

import pytest
import sympy

from ckloci.basis import IntegerScheme, period, search_basis_datum
from ckloci.coleman import evaluate_polylog
from ckloci.selmer import (
    DepthMismatch,
    EliminationGuard,
    EquivariantHom,
    FreeLieElement,
    PolylogLieElement,
    assemble_loci,
    eliminate,
    evaluate_cocycle,
    image_ideal,
    is_lyndon,
    letters_from_counts,
    lyndon_words,
    polylog_symbols,
    standard_factorization,
)

P, PREC = 5, 14


def test_lyndon_words():
    letters = [(1, 0), (1, 1)]
    words = lyndon_words(letters, 3)
    # Witt's formula: 2, 1, 2 in lengths 1, 2, 3
    assert [sum(1 for w in words if len(w) == k) for k in (1, 2, 3)] == [2, 1, 2]
    assert all(is_lyndon(w) for w in words)
    u, v = standard_factorization(((1, 0), (1, 0), (1, 1)))
    assert u == ((1, 0),) and v == ((1, 0), (1, 1))


def test_bracket_of_two_generators():
    a, b, c, d = sympy.symbols("a b c d")
    C = EquivariantHom.from_values(3, [(a, b), (c, d)])
    letters = [(1, 0), (1, 1)]
    s1 = FreeLieElement.generator(letters, 3, (1, 0))
    s2 = FreeLieElement.generator(letters, 3, (1, 1))
    img = evaluate_cocycle(C, s1.bracket(s2)).expand()
    assert img.e == 0 and img.ell[0] == 0
    assert sympy.expand(img.ell[1] - (a * d - c * b)) == 0


def test_single_generator_and_killed_generator():
    a, b = sympy.symbols("a b")
    C = EquivariantHom.from_values(2, [(a, b)])
    letters = [(1, 0), (1, 1)]
    assert evaluate_cocycle(C, FreeLieElement.generator(letters, 2, (1, 0))).coordinates() == [a, b, 0]
    assert evaluate_cocycle(C, FreeLieElement.generator(letters, 2, (1, 1))).coordinates() == [0, 0, 0]


def test_depth_mismatch():
    C = EquivariantHom.from_values(2, [(1, 2)])
    with pytest.raises(DepthMismatch):
        evaluate_cocycle(C, FreeLieElement.generator([(1, 0)], 3, (1, 0)))


def _random_free(rng, letters, n, weight):
    lyn = [w for w in lyndon_words(letters, n) if sum(a[0] for a in w) == weight]
    return FreeLieElement(letters, n, {w: rng.randint(-3, 3) for w in lyn})


def _random_pl(rng, n, weight):
    if weight == 1:
        return PolylogLieElement(n, rng.randint(-5, 5), [rng.randint(-5, 5)])
    ell = [0] * n
    ell[weight - 1] = rng.randint(-5, 5)
    return PolylogLieElement(n, 0, ell)


def test_jacobi_and_antisymmetry():
    rng = random.Random(2)
    letters = [(1, 0), (1, 1), (3, 0)]
    n = 4
    for _ in range(10):
        ws = [rng.randint(1, 2) for _ in range(3)]
        x, y, z = (_random_free(rng, letters, n, w) for w in ws)
        assert x.bracket(y) == y.bracket(x).scale(-1)
        jac = x.bracket(y.bracket(z)) + y.bracket(z.bracket(x)) + z.bracket(x.bracket(y))
        assert jac.coeffs == {}
        u, v, t = (_random_pl(rng, n, w) for w in ws)
        assert u.bracket(v) == v.bracket(u).scale(-1)
        assert u.bracket(v.bracket(t)) + v.bracket(t.bracket(u)) + t.bracket(u.bracket(v)) == PolylogLieElement(n)


def test_depth_one_trivial():
    assert image_ideal((1,), (1,), 1).generators == []
    assert image_ideal((2,), (2,), 1).generators == []


def test_empty_sigma_forces_zero():
    I = image_ideal((0, 0), (0, 0), 2)
    E, L1, L2 = polylog_symbols(2)
    assert set(I.generators) == {E, L1, L2}


def test_guards():
    with pytest.raises(EliminationGuard):
        image_ideal((1,), (1,), 5)
    with pytest.raises(EliminationGuard):
        image_ideal((3,), (3,), 4)


def _interpolation_oracle(sigma, sigma0, n, degree, grid):
    """Vanishing polynomials of bounded degree from ev sampled on a grid."""
    I = eliminate(sigma, sigma0, n)
    lie = list(I.lie_symbols)
    xs = [I.lyndon[lam] for lam in sorted(I.lyndon)]
    names = lie + xs
    monos = [m for d in range(1, degree + 1)
             for m in itertools.combinations_with_replacement(range(len(names)), d)]
    C, params = EquivariantHom.symbolic(sigma, n)
    rows = []
    for vals in itertools.product(grid, repeat=len(params) + len(xs)):
        pv, xv = vals[:len(params)], vals[len(params):]
        F = FreeLieElement(sigma0, n, {lam: xv[i] for i, lam in enumerate(sorted(I.lyndon))})
        Y = evaluate_cocycle(C, F)
        point = [sympy.sympify(c).subs(dict(zip(params, pv))) for c in Y.coordinates()] + list(xv)
        rows.append([sympy.prod([point[i] for i in m]) for m in monos])
    null = sympy.Matrix(rows).nullspace()
    polys = [sum(v[j] * sympy.prod([names[i] for i in monos[j]]) for j in range(len(monos)))
             for v in null]
    return I, names, polys


@pytest.mark.parametrize("sigma0", [[(1, 0)], [(1, 0), (1, 1)]])
def test_image_ideal_matches_grid_interpolation(sigma0):
    sigma = [(1, 0)]
    I, names, polys = _interpolation_oracle(sigma, sigma0, 2, 2, [-1, 0, 1, 2])
    G = sympy.groebner(I.generators, *names, order="grevlex")
    # every interpolated relation lies in the ideal, and the ideal's
    # low-degree generators are among the interpolated relations
    for f in polys:
        assert G.reduce(sympy.expand(f))[1] == 0
    span = sympy.groebner(polys, *names, order="grevlex") if polys else None
    for g in I.generators:
        if sympy.Poly(g, *names).total_degree() <= 2:
            assert span is not None and span.reduce(sympy.expand(g))[1] == 0


def test_ideal_vanishes_on_random_evaluations():
    rng = random.Random(5)
    sigma, sigma0 = [(1, 0), (3, 0)], [(1, 0), (1, 1), (3, 0)]
    n = 3
    I = eliminate(sigma, sigma0, n)
    assert I.generators
    C, params = EquivariantHom.symbolic(sigma, n)
    lyn = sorted(I.lyndon)
    for _ in range(100):
        pv = {s: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for s in params}
        xv = {lam: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for lam in lyn}
        F = FreeLieElement(sigma0, n, xv)
        Y = evaluate_cocycle(C, F)
        env = {s: sympy.Rational(v.numerator, v.denominator) for s, v in pv.items()}
        point = {s: sympy.sympify(c).subs(env) for s, c in zip(I.lie_symbols, Y.coordinates())}
        point.update({I.lyndon[lam]: sympy.Rational(v.numerator, v.denominator) for lam, v in xv.items()})
        for g in I.generators:
            assert g.subs(point) == 0


def _periods(loci):
    return {name: period(x, P, PREC) for name, x in loci.basis}


def test_spec_z_depth_two():
    loci = assemble_loci(IntegerScheme(()), P, 2)
    log, Li1, Li2 = sympy.symbols("log Li1 Li2")
    exprs = {F.expr for F in loci.polynomials}
    assert exprs == {log, -Li1, Li1 * log / 2 - Li2}
    assert all(F.function_weight() <= 2 for F in loci.polynomials)


@pytest.mark.parametrize("n", [2, 4])
def test_z2_loci_vanish_at_integral_points(n):
    Z = IntegerScheme((2,))
    datum = search_basis_datum(Z, P, n)
    loci = assemble_loci(Z, P, n, datum=datum)
    assert loci.polynomials
    periods = _periods(loci)
    for F in loci.polynomials:
        assert 1 <= F.function_weight() <= n and F.basis_weight() <= n
        totals = {sum(F.symbol_weight(s) * e for s, e in mon.items()) for _, mon in F.terms()}
        assert len(totals) == 1
        for x in (2, -1, Fraction(1, 2)):
            assert evaluate_polylog(F, periods, x, P, PREC).val >= 12
    # the loci cut out a proper subset
    assert any(evaluate_polylog(F, periods, 3, P, PREC).val < 12 for F in loci.polynomials)
    assert any(evaluate_polylog(F, periods, 7, P, PREC).val < 12 for F in loci.polynomials)


def test_two_primes_depth_two_has_no_relation():
    Z = IntegerScheme((2, 3))
    loci = assemble_loci(Z, 7, 2, datum=search_basis_datum(Z, 7, 2))
    assert loci.polynomials == []
