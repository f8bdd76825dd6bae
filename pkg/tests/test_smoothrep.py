import random
from fractions import Fraction

from padicps.characters import SmoothCharacter
from padicps.group import GroupElement, identity, random_sl2_zp, torus
from padicps.padic import PadicScalar
from padicps.smoothrep import (SmoothPSModule, coinvariant_functional, iwasawa_factor,
                               invariant_vectors)

P = 5


def test_iwasawa():
    g = random_sl2_zp(random.Random(0), P, 20)
    k, b = iwasawa_factor(g)
    assert k == g and b == identity(P)
    t = torus(P, P)
    k, b = iwasawa_factor(t)
    assert k == identity(P) and b == t
    M = GroupElement.of(1, Fraction(1, P), 0, 1, P)
    k, b = iwasawa_factor(M)
    assert k == GroupElement.of(0, 1, -1, P, P)
    assert b == GroupElement.of(P, 0, 1, Fraction(1, P), P)
    assert k @ b == M


def test_identity_and_group_law():
    V = SmoothPSModule(P, 1, SmoothCharacter.trivial(P))
    v = [Fraction(i) for i in range(V.dim)]
    assert V.act(identity(P), v)[1] == v
    rng = random.Random(1)
    for _ in range(10):
        g1, g2 = random_sl2_zp(rng, P, 20), random_sl2_zp(rng, P, 20)
        assert V.act(g1, V.act(g2, v)[1])[1] == V.act(g1 @ g2, v)[1]


def test_case_a_constants_fixed():
    V = SmoothPSModule(P, 1, SmoothCharacter.trivial(P))
    ones = [Fraction(1)] * V.dim
    W, out = V.act(torus(P, P), ones)
    assert all(x == 1 for x in out)
    assert len(invariant_vectors(V)) == 1


def test_ramified_character_has_no_invariants():
    chi = SmoothCharacter(P, 1, (PadicScalar.from_int(-1, P, 20),), PadicScalar.from_int(1, P, 20))
    assert invariant_vectors(SmoothPSModule(P, 1, chi)) == []


def test_case_b_steinberg():
    V = SmoothPSModule(P, 1, SmoothCharacter.unramified(P, Fraction(1, 25)))
    co = coinvariant_functional(V)
    assert co.exists and co.steinberg_dim == P
