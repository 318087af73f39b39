"""Chabauty-Kim loci for the S-unit equation over Z[1/2] at p = 5."""

from fractions import Fraction

from ckloci.basis import IntegerScheme, period, search_basis_datum
from ckloci.coleman import evaluate_polylog
from ckloci.selmer import assemble_loci

p = 5
Z = IntegerScheme((2,))

for depth in (2, 4):
    datum = search_basis_datum(Z, p, depth)
    loci = assemble_loci(Z, p, depth, datum=datum)
    periods = {name: period(x, p, 16) for name, x in loci.basis}
    print("depth", depth)
    for name, x in loci.basis:
        print("  %s = %r" % (name, x))
    for F in loci.polynomials:
        print("  F =", F.text())
        for x in (2, -1, Fraction(1, 2), 3, 7):
            v = evaluate_polylog(F, periods, x, p, 16)
            print("    F(%s) has valuation %s" % (x, v.val))
