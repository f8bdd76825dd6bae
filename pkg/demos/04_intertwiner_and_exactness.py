"""The (m+1)-st derivative intertwiner and its kernel on finite slices.

On the slice of functions that are polynomials of degree at most D on each
level-h disk, the kernel of the intertwiner should be exactly the image of the
algebraic-times-locally-constant functions.  We check this by exact ranks.
"""
import time

from padicps import pseries as ps
from padicps.characters import SmoothCharacter

for p, m, h, D in [(5, 2, 1, 9), (3, 1, 2, 7), (7, 3, 1, 10)]:
    t0 = time.perf_counter()
    rep = ps.exactness_check(p, m, SmoothCharacter.trivial(p), h, D, 30)
    print(f"p={p} m={m} h={h} D={D}: kernel {rep.kernel_dim}, tau rank {rep.tau_rank}, "
          f"image {rep.image_dim} -> {rep.verdict} ({time.perf_counter() - t0:.2f}s)")
