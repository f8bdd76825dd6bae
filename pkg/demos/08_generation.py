"""Orbits of SL_2(Z) span E (x) V, where V is the level-1 smooth module.

Any nonzero vector should generate everything, so the span of its translates
has full rank (m+1)(p+1).
"""
from padicps import pseries as ps
from padicps.characters import SmoothCharacter
from padicps.smoothrep import SmoothPSModule

p = 5
V = SmoothPSModule(p, 1, SmoothCharacter.trivial(p))
for m in (0, 1, 2):
    rep = ps.generation_check(ps.AlgebraicRep(m), V, samples=60, seed=0)
    print(f"m={m}: rank {rep.rank} of {rep.expected}")

pure = [[1, 0, 0, 0, 0, 0], [0] * 6, [0] * 6]
print("from a pure tensor:", ps.generation_check(ps.AlgebraicRep(2), V, 60, 1, x=pure).rank)
