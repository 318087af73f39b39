"""Provably complete solution sets of x + y = 1 in S-units, for small S."""

import sys

from ckloci.basis import IntegerScheme
from ckloci.pointcount import point_count

p = 5
schemes = [(), (2,)] if len(sys.argv) < 2 else [tuple(int(q) for q in sys.argv[1].split(","))]

for primes in schemes:
    Z = IntegerScheme(primes)
    res = point_count(Z, p, max_iterations=3)
    status = "complete" if res.halted else "not certified"
    print("%s: %s %s" % (Z.label(), sorted(str(x) for x in res.points), status))
    for it in res.iterations:
        certs = it.get("certificates", [])
        print("  iteration %d: depth %d, N %d, %d certificate records, halted %s"
              % (it["iteration"], it["depth"], it["N"], len(certs), it.get("halted")))
