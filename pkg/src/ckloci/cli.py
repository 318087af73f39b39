"""Command line front end.  JSON goes to stdout, a short summary to stderr.

Exit codes: 0 success, 2 usage error, 3 refused (precondition failed),
4 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import basis as basis_mod
from .basis import BasisDatum, IntegerScheme, verify_basis_datum
from .frobenius import li, parse_word, zeta
from .newton import RootCriterionContextError, load_input, root_criterion
from .padic import is_prime
from .pointcount import point_count

EXIT_OK, EXIT_USAGE, EXIT_REFUSED, EXIT_BUDGET = 0, 2, 3, 4


class Refused(Exception):
    pass


def _prime(text):
    p = int(text)
    if not is_prime(p):
        raise argparse.ArgumentTypeError("%s is not prime" % text)
    return p


def _scheme(text):
    if text in ("", "none", "Z"):
        return IntegerScheme(())
    primes = [int(t) for t in text.replace(",", " ").split()]
    for q in primes:
        if not is_prime(q):
            raise argparse.ArgumentTypeError("%d is not prime" % q)
    return IntegerScheme(tuple(primes))


def _eps_exp(text, p):
    """Accept an exponent k (meaning p^-k) or a float like 1e-8."""
    try:
        return int(text)
    except ValueError:
        import math
        eps = float(text)
        if not 0 < eps < 1:
            raise argparse.ArgumentTypeError("epsilon must lie in (0, 1)")
        return max(1, math.ceil(-math.log(eps, p)))


def build_parser():
    ap = argparse.ArgumentParser(prog="ckloci", description="p-adic polylogarithms and Chabauty-Kim loci")
    sub = ap.add_subparsers(dest="command", required=True)

    pl = sub.add_parser("polylog", help="p-adic multiple polylogarithms")
    plsub = pl.add_subparsers(dest="action", required=True)
    ev = plsub.add_parser("eval", help="evaluate Li_word(x)")
    ev.add_argument("--p", type=_prime, required=True)
    ev.add_argument("--x", type=Fraction, required=True)
    ev.add_argument("--word", required=True)
    ev.add_argument("--prec", type=int, default=12)
    ev.add_argument("--order", type=int, default=None)

    mz = sub.add_parser("mzv", help="p-adic multiple zeta value of a word")
    mz.add_argument("--p", type=_prime, required=True)
    mz.add_argument("--word", required=True)
    mz.add_argument("--aux-point", type=Fraction, default=Fraction(2))
    mz.add_argument("--prec", type=int, default=12)

    nw = sub.add_parser("newton", help="root criterion")
    nwsub = nw.add_subparsers(dest="action", required=True)
    ck = nwsub.add_parser("check")
    ck.add_argument("--json", required=True, dest="path")

    bs = sub.add_parser("basis", help="basis data")
    bssub = bs.add_subparsers(dest="action", required=True)
    vf = bssub.add_parser("verify")
    vf.add_argument("datum")
    vf.add_argument("--scheme", type=_scheme, default=None)
    vf.add_argument("--depth", type=int, required=True)
    vf.add_argument("--p", type=_prime, required=True)
    vf.add_argument("--eps", default=None)

    lc = sub.add_parser("loci", help="assemble Chabauty-Kim loci")
    lc.add_argument("--scheme", type=_scheme, required=True)
    lc.add_argument("--p", type=_prime, required=True)
    lc.add_argument("--depth", type=int, required=True)
    lc.add_argument("--eps", default="8")
    lc.add_argument("--budget", type=int, default=400)
    lc.add_argument("--datum", default=None)

    ct = sub.add_parser("count", help="run the point count")
    ct.add_argument("--scheme", type=_scheme, required=True)
    ct.add_argument("--p", type=_prime, required=True)
    ct.add_argument("--max-iter", type=int, default=4)
    ct.add_argument("--depth-cap", type=int, default=4)
    return ap


def _polylog(args):
    word = parse_word(args.word)
    v = li(args.x, word, p=args.p, prec=args.prec, order=args.order)
    return {"word": "".join(map(str, word)), "x": str(args.x), "value": v.to_json()}


def _mzv(args):
    word = parse_word(args.word)
    v = zeta(word, args.aux_point, p=args.p, prec=args.prec)
    return {"word": "".join(map(str, word)), "aux_point": str(args.aux_point), "value": v.to_json()}


def _newton(args):
    inp = load_input(args.path)
    try:
        res = root_criterion(inp)
    except RootCriterionContextError as exc:
        raise Refused(str(exc))
    return res.to_json()


def _basis(args):
    with open(args.datum) as fh:
        data = json.load(fh)
    if args.scheme is not None:
        data["scheme"] = list(args.scheme.primes)
    if args.eps is not None:
        data["eps_exp"] = _eps_exp(args.eps, args.p)
    datum = BasisDatum.from_json(data)
    if args.p in datum.scheme.primes:
        raise Refused("p is inverted in the scheme")
    ok, steps, _ = verify_basis_datum(datum, args.p, args.depth)
    return {"verified": ok, "steps": [s.__dict__ for s in steps]}


def _loci(args):
    from .selmer import EliminationGuard, assemble_loci
    Z = args.scheme
    if args.p in Z.primes:
        raise Refused("p is inverted in the scheme")
    K = _eps_exp(args.eps, args.p)
    try:
        if args.datum:
            datum = BasisDatum.load(args.datum)
        else:
            datum = basis_mod.search_basis_datum(Z, args.p, args.depth, K, max_tries=args.budget)
        res = assemble_loci(Z, args.p, args.depth, K, datum=datum)
    except basis_mod.BasisSearchFailed as exc:
        raise BudgetExhausted(str(exc))
    except EliminationGuard as exc:
        raise Refused(str(exc))
    return res.to_json()


class BudgetExhausted(Exception):
    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload


def _count(args):
    if args.p in args.scheme.primes:
        raise Refused("p is inverted in the scheme")
    res = point_count(args.scheme, args.p, max_iterations=args.max_iter, depth_cap=args.depth_cap)
    if not res.halted:
        raise BudgetExhausted("no certificate within %d iterations" % args.max_iter, res.to_json())
    return res.to_json()


HANDLERS = {"polylog": _polylog, "mzv": _mzv, "newton": _newton, "basis": _basis,
            "loci": _loci, "count": _count}


def dispatch(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        payload = HANDLERS[args.command](args)
    except Refused as exc:
        print(json.dumps({"error": "refused", "message": str(exc)}), file=out)
        print("refused: %s" % exc, file=err)
        return EXIT_REFUSED
    except BudgetExhausted as exc:
        print(json.dumps({"error": "budget", "message": str(exc), "state": exc.payload}), file=out)
        print("budget exhausted: %s" % exc, file=err)
        return EXIT_BUDGET
    except (ValueError, ArithmeticError) as exc:
        print(json.dumps({"error": "refused", "message": str(exc)}), file=out)
        print("refused: %s" % exc, file=err)
        return EXIT_REFUSED
    print(json.dumps(payload, default=str), file=out)
    print("%s: ok" % args.command, file=err)
    return EXIT_OK


def main():
    sys.exit(dispatch())
