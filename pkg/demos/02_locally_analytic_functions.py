"""Locally analytic functions on Z_p as power series on small disks."""
from padicps import laf
from padicps.padic import PadicScalar

p = 5
cover = laf.standard_cover(p, 1)          # the five disks a + 5 Z_5
cube = laf.LocFun.from_polynomial([0, 0, 0, 1], cover)
x = PadicScalar.from_int(123456, p, 30)
print("x^3 at 123456:", laf.eval_at(cube, x) == PadicScalar.from_int(123456**3, p, 30))

# The derivative on a level-h disk picks up a factor p^-h, which the code tracks.
print("d/dx x^3 = 3x^2:",
      laf.difference_valuation(laf.derive(cube), laf.LocFun.from_polynomial([0, 0, 3], cover)) >= 30)

# Pulling back along x -> x / (5x + 1) needs a genuine power series on each disk.
ident = laf.LocFun.from_polynomial([0, 1], laf.standard_cover(p, 0))
g = laf.mobius_pullback(ident, (1, 0, 5, 1), target=25)
print("pieces used for x/(5x+1):", len(g.pieces))
err = (laf.eval_at(g, x) - x / (x * 5 + 1)).valuation
print("agreement at a sample point, in digits:", err)
