"""The smooth principal series at finite level: constants and the Steinberg piece."""
from fractions import Fraction

from padicps.characters import SmoothCharacter
from padicps.group import torus
from padicps.smoothrep import SmoothPSModule, coinvariant_functional, invariant_vectors

p = 5
for n in (1, 2):
    V = SmoothPSModule(p, n, SmoothCharacter.trivial(p))
    inv = invariant_vectors(V)
    print(f"level {n}: dim {V.dim}, invariant vectors {len(inv)}; "
          f"constant? {len(set(inv[0])) == 1}")

    Vb = SmoothPSModule(p, n, SmoothCharacter.unramified(p, Fraction(1, p * p)))
    co = coinvariant_functional(Vb)
    print(f"  |t|^2 twist: coinvariant functional {'found' if co.exists else 'missing'}, "
          f"its kernel has dim {co.steinberg_dim}")

# The element diag(p^-1, p) moves to a different level, but constants stay constant.
V = SmoothPSModule(p, 1, SmoothCharacter.trivial(p))
W, image = V.act(torus(p, p), [Fraction(1)] * V.dim)
print("diag(p^-1,p) sends constants to level", W.n, "constants:", set(image) == {1})
