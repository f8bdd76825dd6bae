import random
from fractions import Fraction

import pytest

from padicps.laf import (Disk, LocFun, add, derive, difference_valuation, eval_at,
                         linear_combine, mobius_pullback, multiply, refine, scale,
                         standard_cover, sub)
from padicps.padic import PadicScalar

P = 5


def S(x, prec=40):
    return PadicScalar.from_rational(x, P, prec)


def poly(coeffs, level=0, cap=None):
    return LocFun.from_polynomial(coeffs, standard_cover(P, level), degree_cap=cap)


def points(n=10, seed=0):
    rng = random.Random(seed)
    return [S(rng.randrange(P**12)) for _ in range(n)]


def test_constant_and_square():
    one = LocFun.constant(1, standard_cover(P, 0))
    assert all(eval_at(one, x) == 1 for x in points())
    sq = poly([0, 0, 1])
    assert eval_at(sq, S(2)) == 4


def test_linear_combination_cancels():
    f = poly([3, 1, 4, 1], level=1)
    z = add(f, scale(f, -1))
    assert all(eval_at(z, x).is_zero() for x in points())
    g = linear_combine([S(2), S(-1)], [f, f])
    assert all(eval_at(g, x) == eval_at(f, x) for x in points())


def test_mixed_covers_combine():
    f = poly([1, 2], level=0)
    g = poly([0, 0, 1], level=2)
    h = sub(add(f, g), g)
    assert all(eval_at(h, x) == eval_at(f, x) for x in points())


def test_multiply():
    x = poly([0, 1], cap=2)
    assert difference_valuation(multiply(x, x), poly([0, 0, 1])) >= 30
    f = poly([2, 0, 1])
    one = LocFun.constant(1, standard_cover(P, 0), degree_cap=2)
    assert difference_valuation(multiply(f, one), f) >= 30


def test_leibniz():
    rng = random.Random(3)
    for _ in range(5):
        f = poly([rng.randrange(-50, 50) for _ in range(4)], level=1, cap=8)
        g = poly([rng.randrange(-50, 50) for _ in range(4)], level=1, cap=8)
        lhs = derive(multiply(f, g))
        rhs = add(multiply(derive(f), g), multiply(f, derive(g)))
        assert difference_valuation(lhs, rhs) >= 30


def test_derive():
    assert all(eval_at(derive(LocFun.constant(7, standard_cover(P, 1))), x).is_zero()
               for x in points())
    d = derive(poly([0, 0, 1]))
    assert difference_valuation(d, poly([0, 2], cap=1)) >= 30


def test_derive_matches_difference_quotient():
    f = poly([1, -2, 0, 3, 1], level=1)
    df = derive(f)
    for x in points(5):
        for k in (3, 4, 5):
            h = S(P**k)
            quotient = (eval_at(f, x + h) - eval_at(f, x)) / h
            assert (quotient - eval_at(df, x)).valuation >= k


def test_refine_keeps_values():
    f = poly([0, 0, 0, 1])
    g = refine(f, 2)
    assert len(g.domain) == 25
    assert all(eval_at(g, x) == eval_at(f, x) for x in points(20))


def test_json_round_trip():
    f = poly([Fraction(1, 3), 5, -2], level=1)
    g = LocFun.from_json(f.to_json())
    assert difference_valuation(f, g) >= 38


def test_eval_outside_domain():
    f = LocFun.from_polynomial([1], [Disk(1, 0, P)])
    with pytest.raises(Exception):
        eval_at(f, S(1))


def test_mobius_identity_and_translation():
    f = poly([0, 1])
    assert difference_valuation(mobius_pullback(f, (1, 0, 0, 1)), f) >= 30
    t = mobius_pullback(f, (1, 1, 0, 1))
    assert all(eval_at(t, x) == x + 1 for x in points())


def test_mobius_fractional():
    f = poly([0, 1])
    g = mobius_pullback(f, (1, 0, 5, 1), target=30)
    for x in points():
        expect = x / (S(5) * x + 1)
        assert (eval_at(g, x) - expect).valuation >= 25
