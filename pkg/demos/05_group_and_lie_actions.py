"""SL_2(Q_p) acting on the principal series, and its Lie algebra acting by derivations."""
import random

from padicps import pseries as ps
from padicps.characters import SmoothCharacter, TorusCharacter
from padicps.group import LieElement, exp_lie, random_sl2_zp, torus
from padicps.padic import PadicScalar
from padicps.suites import agreement, sample_points

p, N = 5, 30
rng = random.Random(7)
chi = TorusCharacter(2, SmoothCharacter.trivial(p, N))
phi = ps.random_element(chi, 1, 8, N, rng)
pts = sample_points(p, N, rng)

g1, g2 = random_sl2_zp(rng, p, N), random_sl2_zp(rng, p, N)
lhs = ps.act(g1, ps.act(g2, phi))
rhs = ps.act(g1 @ g2, phi)
print("group law holds to", agreement(lhs, rhs, pts), "digits")

# The intertwiner commutes with the action, even for the non-compact torus element.
t = torus(p, p, N)
d = agreement(ps.intertwine(ps.act(t, phi)), ps.act(t, ps.intertwine(phi)), pts)
print("I(t.phi) vs t.I(phi):", d, "digits")

# Differentiating the action recovers lie_act; the error shrinks one digit per step.
X = LieElement.basis(p, N)["u"]
L = ps.lie_act(X, phi)
for k in (3, 4, 5):
    pk = PadicScalar.from_int(p**k, p, N)
    diff = ps.sub(ps.act(exp_lie(X.scale(pk)), phi), phi)
    v = min((diff.charts()[c](x) / pk - L.charts()[c](x)).valuation for c, x in pts)
    print(f"  k={k}: finite difference matches lie_act to {v} digits")
