"""
Point counting for the S-unit equation: search for solutions, build loci,
expand them on small balls covering X(Z_p) and certify with the root
criterion that no ball hides an unfound point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .basis import BasisSearchFailed, IntegerScheme, period, s_unit_points, search_basis_datum
from .coleman import expand_polylog
from .newton import RootCriterionContextError, RootCriterionInput, root_criterion
from .padic import PrecisionError, valuation
from .selmer import EliminationGuard, assemble_loci


def search_points(Z: IntegerScheme, height_bound):
    """Solutions x of the S-unit equation with height at most the bound."""
    return set(s_unit_points(Z, height_bound))


def height_schedule(Z: IntegerScheme, n):
    return max([2] + list(Z.primes)) ** n


@dataclass
class Ball:
    center: Fraction
    r: int
    residue: int
    points: list = field(default_factory=list)

    def contains(self, x, p):
        return valuation(Fraction(x) - self.residue, p) >= self.r


@dataclass
class PointCountResult:
    points: set
    halted: bool
    iterations: list

    def to_json(self):
        return {"points": [str(x) for x in sorted(self.points)], "halted": self.halted,
                "iterations": self.iterations}


def separation_radius(points, p):
    r = 1
    pts = sorted(points)
    for i, x in enumerate(pts):
        for y in pts[i + 1:]:
            r = max(r, valuation(x - y, p) + 1)
    return r


def _residue(x, p, r):
    m = p ** r
    x = Fraction(x)
    return x.numerator * pow(x.denominator, -1, m) % m


def initial_balls(points, p, r):
    balls = {}
    for c in range(p ** r):
        if c % p in (0, 1):
            continue
        balls[c] = Ball(Fraction(c), r, c)
    for x in points:
        b = balls[_residue(x, p, r)]
        b.points.append(x)
        b.center = Fraction(x)
    return list(balls.values())


def split(ball, p):
    out = []
    for j in range(p):
        c = ball.residue + j * p ** ball.r
        nb = Ball(Fraction(c), ball.r + 1, c)
        for x in ball.points:
            if nb.contains(x, p):
                nb.points.append(x)
                nb.center = Fraction(x)
        out.append(nb)
    return out


class FloorCheckFailed(ArithmeticError):
    pass


def criterion_coefficients(expansion, K, known_root):
    """Round an expansion at |.| = p**-K for the root criterion.

    A coefficient indistinguishable from zero is replaced by p**K, a lower
    bound on its size that keeps every comparison conservative; the constant
    term of an expansion centred at a known root is kept at zero.  Raises
    FloorCheckFailed when a coefficient is not known to absolute precision K.
    """
    p = expansion.prime
    out = []
    for j, c in enumerate(expansion.coeffs):
        if c.abs_prec < K:
            raise FloorCheckFailed("coefficient %d known only to p^-%s" % (j, c.abs_prec))
        c = c.cap(K)
        if c.is_zero():
            out.append(Fraction(0) if (j == 0 and known_root) else Fraction(p) ** K)
        else:
            out.append(c.to_fraction())
    return out


def certify_ball(ball, loci, periods, p, N, K, prec, max_extra=3, log=None):
    """True when some locus function has at most the found number of roots."""
    b = len(ball.points)
    if b > 1:
        return all(certify_ball(sb, loci, periods, p, N, K, prec, max_extra - 1, log)
                   for sb in split(ball, p))
    for i, F in enumerate(loci):
        try:
            exp = expand_polylog(F, periods, ball.center, p, N, prec, ball.r)
            coeffs = criterion_coefficients(exp, K, known_root=bool(b))
            if b and coeffs[0] != 0:
                continue
            inp = RootCriterionInput(b, N, ball.r, exp.half_weight, coeffs, p)
            res = root_criterion(inp)
        except (FloorCheckFailed, RootCriterionContextError, PrecisionError) as exc:
            if log is not None:
                log.append({"ball": "%s+O(%d^%d)" % (ball.residue, p, ball.r), "F": i, "error": str(exc)})
            continue
        if res:
            if log is not None:
                log.append({"ball": "%s+O(%d^%d)" % (ball.residue, p, ball.r), "F": i,
                            "case": res.case, "certified": True})
            return True
    if max_extra <= 0:
        if log is not None:
            log.append({"ball": "%s+O(%d^%d)" % (ball.residue, p, ball.r), "certified": False})
        return False
    return all(certify_ball(sb, loci, periods, p, N, K, prec, max_extra - 1, log)
               for sb in split(ball, p))


def point_count(Z: IntegerScheme, p, max_iterations=4, depth_cap=4, n0=2, N0=64, eps_exp0=8,
                max_extra=3, verbose=False):
    """Run the search/certify loop; returns a PointCountResult."""
    if p in Z.primes:
        raise ValueError("p must not be inverted")
    n, N, K = n0, N0, eps_exp0
    iterations = []
    found = set()
    for it in range(max_iterations):
        depth = min(n, depth_cap)
        record = {"iteration": it, "n": n, "depth": depth, "N": N, "eps_exp": K}
        found = search_points(Z, height_schedule(Z, n))
        record["points"] = [str(x) for x in sorted(found)]
        try:
            datum = search_basis_datum(Z, p, depth, K)
            loci = assemble_loci(Z, p, depth, K, datum=datum)
        except (BasisSearchFailed, EliminationGuard, ValueError) as exc:
            record["error"] = str(exc)
            iterations.append(record)
            n, N, K = n + 1, 2 * N, K + 1
            continue
        prec = K + depth * (math.ceil(math.log(N + 1, p)) + 1) + 4
        periods = {name: period(x, p, prec) for name, x in loci.basis}
        record["loci"] = [F.text() for F in loci.polynomials]
        r0 = separation_radius(found, p)
        log = []
        ok = True
        for ball in initial_balls(found, p, r0):
            if not certify_ball(ball, loci.polynomials, periods, p, N, K, prec, max_extra, log):
                ok = False
                break
        record["certificates"] = log
        record["halted"] = ok
        iterations.append(record)
        if verbose:
            print(record)
        if ok:
            return PointCountResult(found, True, iterations)
        n, N, K = n + 1, 2 * N, K + 1
    return PointCountResult(found, False, iterations)
