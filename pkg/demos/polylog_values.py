"""p-adic polylogarithms and zeta values, with a few classical identities."""

from fractions import Fraction

from ckloci.frobenius import engine

p, prec = 7, 12
eng = engine(p, 3, prec)

for x in (Fraction(2), Fraction(-1), Fraction(1, 2)):
    vals = eng.values(x)
    print("x = %s" % x)
    print("  log  =", vals[(0,)])
    print("  Li_1 =", vals[(1,)])
    print("  Li_2 =", vals[(0, 1)])
    print("  Li_3 =", vals[(0, 0, 1)])

print("zeta(3) =", eng.zeta((0, 0, 1), 2))
print("zeta(2) =", eng.zeta((0, 1), 2), "(vanishes)")

# Li_3(1/2) = 7/8 zeta(3) + log(2)^3 / 6, the pi^2 term being absent p-adically
lhs = eng.li(Fraction(1, 2), (0, 0, 1))
rhs = eng.zeta((0, 0, 1), 2) * Fraction(7, 8) + eng.li(2, (0,)) ** 3 * Fraction(1, 6)
print("Li_3(1/2) - 7/8 zeta(3) - log(2)^3/6 =", lhs - rhs)
