import random
from fractions import Fraction

import pytest

from padicps import laf
from padicps import pseries as ps
from padicps.characters import SmoothCharacter, TorusCharacter
from padicps.group import (GroupElement, LieElement, identity, lower_unipotent, random_sl2_zp,
                           torus, upper_unipotent, weyl)
from padicps.padic import PadicScalar
from padicps.smoothrep import SmoothPSModule
from padicps.suites import agreement, sample_points

P, N = 5, 30


def chi(m, p=P):
    return TorusCharacter(m, SmoothCharacter.trivial(p, N))


def test_identity_acts_trivially():
    rng = random.Random(0)
    phi = ps.random_element(chi(2), 1, 6, N, rng)
    out = ps.act(identity(P, N), phi)
    assert agreement(out, phi, sample_points(P, N, rng)) >= N


def test_group_law_small():
    rng = random.Random(5)
    phi = ps.random_element(chi(1), 1, 6, N, rng)
    for _ in range(3):
        g1, g2 = random_sl2_zp(rng, P, N), random_sl2_zp(rng, P, N)
        lhs = ps.act(g1, ps.act(g2, phi))
        rhs = ps.act(g1 @ g2, phi)
        assert agreement(lhs, rhs, sample_points(P, N, rng, 2)) >= N - 5


def test_defining_relation():
    """f(h b) = sigma(b11) f(h) for lower triangular b, on sampled points of both charts."""
    rng = random.Random(2)
    c = chi(2)
    phi = ps.random_element(c, 1, 6, N, rng)
    for chart, x in sample_points(P, N, rng, 2):
        h = ps.chart_point(chart, x)
        s = PadicScalar.from_int(rng.randrange(1, 10**6) * P**rng.randrange(0, 2), P, N)
        b = GroupElement(s, PadicScalar.zero(P), PadicScalar.from_int(rng.randrange(50), P, N), s.inverse())
        lhs = ps.evaluate_on_group(phi, h @ b)
        rhs = ps.eval_sigma(c, s) * ps.evaluate_on_group(phi, h)
        assert (lhs - rhs).valuation >= N - 5


def test_torus_scales_chart_minus():
    c = chi(2)
    phi = ps.from_polynomials(c, [0, 0, 1], [0, 0])
    s = PadicScalar.from_int(2, P, N)
    out = ps.act(torus(2, P, N), phi)
    x = PadicScalar.from_int(7, P, N)
    # t^-1 u^-(x) has second column (s x, s^-1), so the value is sigma(s) F(s^2 x)
    sigma = ps.eval_sigma(c, s)
    assert (out.chart_minus(x) - sigma * (s * s * x) ** 2).valuation >= N - 2
    assert (out.chart_minus(x) - s * s * x * x).valuation >= N - 2


def test_lie_act_zero():
    phi = ps.random_element(chi(1), 1, 5, N, random.Random(1))
    zero = LieElement(PadicScalar.zero(P), PadicScalar.zero(P), PadicScalar.zero(P))
    out = ps.lie_act(zero, phi)
    assert all(out.chart_minus(x).is_zero() for c, x in sample_points(P, N, random.Random(3)) if c == 0)


def test_intertwine_second_derivative():
    c = chi(1)
    phi = ps.from_polynomials(c, [0, 0, 0, 1], [0])
    out = ps.intertwine(phi)
    assert laf.difference_valuation(out.chart_minus, laf.LocFun.from_polynomial([0, 6], ps.slice_covers(P, 0)[0])) >= 70
    assert out.chi.m == 1 - 4


def test_intertwine_kills_constants_and_tau():
    E = ps.AlgebraicRep(2)
    c1, c2 = ps.slice_covers(P, 1)
    one1, one2 = laf.LocFun.constant(1, c1), laf.LocFun.constant(1, c2)
    for i in range(3):
        v = ps.tau(E, [0] * i + [1], one1, one2, chi(2))
        out = ps.intertwine(v)
        assert all(c.is_zero() for f in out.charts() for s in f.pieces for c in s.coeffs)


def test_tau_image_dimension():
    rep = ps.exactness_check(P, 2, SmoothCharacter.trivial(P, N), 1, 9, N)
    assert rep.tau_rank == 30 and rep.kernel_dim == 30 and rep.image_dim == 70
    assert rep.verdict == "exact"


def test_exactness_m0_and_minimal_degree():
    rep = ps.exactness_check(P, 0, SmoothCharacter.trivial(P, N), 1, 3, N)
    assert rep.kernel_dim == 2 * P
    rep = ps.exactness_check(P, 1, SmoothCharacter.trivial(P, N), 1, 2, N)
    assert rep.image_dim == 2 * P


def test_simple_character_has_no_intertwiner():
    phi = ps.from_polynomials(TorusCharacter(-1, SmoothCharacter.trivial(P)), [1], [1])
    with pytest.raises(ps.SimpleCharacterError):
        ps.intertwine(phi)


def test_generation_small_and_scaling():
    E0 = ps.AlgebraicRep(0)

    class Line:
        dim, prime = 1, P

        @staticmethod
        def integral_matrix(entries):
            return [[Fraction(1)]]

    assert ps.generation_check(E0, Line, 5, 0, x=[[3]]).rank == 1
    E = ps.AlgebraicRep(1)
    V = SmoothPSModule(P, 1, SmoothCharacter.trivial(P))
    x = [[1, 0, 0, 0, 0, 2], [0, 0, 1, 0, 0, 0]]
    r1 = ps.generation_check(E, V, 30, 4, x=x).rank
    r2 = ps.generation_check(E, V, 30, 4, x=[[7 * v for v in row] for row in x]).rank
    assert r1 == r2 == 12


def test_json_round_trip():
    phi = ps.random_element(chi(2), 1, 3, 10, random.Random(8))
    again = ps.PSElement.from_json(phi.to_json())
    assert again.to_json() == phi.to_json()
