from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padicps.padic import (DomainError, PadicScalar, PadicZeroDivision, PrimeMismatch,
                           as_rational, char_power, p_exp, p_log, parse_scalar)


def S(x, p=5, prec=20):
    return PadicScalar.from_rational(x, p, prec)


def test_small_arithmetic():
    assert S(2 + 5) * 3 == S(1 + 4 * 5)
    a = S(17)
    assert (a + PadicScalar.zero(5)).same_as(a)


def test_third_times_three_is_one():
    third = PadicScalar.from_rational(Fraction(1, 3), 7, 10)
    prod = third * 3
    assert prod == 1
    assert prod.absolute_precision == 10


def test_errors():
    with pytest.raises(PrimeMismatch):
        S(1) + S(1, p=7)
    with pytest.raises(PadicZeroDivision):
        S(1) / (S(5) - S(5))


def test_precision_never_grows():
    a = PadicScalar.from_int(3, 5, 4)
    b = PadicScalar.from_int(7, 5, 12)
    assert (a + b).absolute_precision == 4
    assert (a * b).rel_precision == 4


def test_cancellation_gives_inexact_zero():
    a = PadicScalar.from_int(1 + 25, 5, 10)
    z = a - PadicScalar.from_int(1 + 25, 5, 10)
    assert z.is_zero() and not z.is_exact_zero()
    assert z.absolute_precision == 10


def test_log_exp():
    assert p_log(S(1)).is_zero()
    lg = p_log(S(6))
    assert lg.valuation == 1
    assert p_exp(lg) == 6
    assert p_exp(PadicScalar.zero(5)) == 1
    assert p_exp(S(5)) * p_exp(S(5)) == p_exp(S(10))
    with pytest.raises(DomainError):
        p_exp(PadicScalar.from_int(2, 2, 20))
    with pytest.raises(DomainError):
        p_log(S(2))


def test_char_power():
    t = S(6)
    assert char_power(t, PadicScalar.zero(5)) == 1
    assert char_power(t, S(3)) == t * t * t
    assert char_power(t, S(-2)) == 1 / (t * t)


def test_text_forms():
    x = S(Fraction(-3, 25))
    assert PadicScalar.from_text(x.to_text()).same_as(x)
    assert PadicScalar.from_compact(x.to_compact(), 5).same_as(x)
    assert parse_scalar("p^-2", 5).same_as(S(Fraction(1, 25)))


def test_rational_reconstruction():
    assert as_rational(S(-1)) == -1
    assert as_rational(S(Fraction(1, 25))) == Fraction(1, 25)


ints = st.integers(min_value=-10**12, max_value=10**12)


@settings(max_examples=60, deadline=None)
@given(ints, ints, ints)
def test_ring_axioms(a, b, c):
    x, y, z = S(a), S(b), S(c)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@settings(max_examples=60, deadline=None)
@given(ints.filter(lambda n: n != 0), st.integers(min_value=2, max_value=7))
def test_inverse(a, k):
    for p in (2, 3, 5, 7):
        x = PadicScalar.from_int(a, p, k + 3)
        assert x * x.inverse() == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=10**9))
def test_exp_is_a_homomorphism(n):
    a, b = S(5 * n), S(25 * (n + 3))
    assert p_exp(a + b) == p_exp(a) * p_exp(b)
    assert p_log(p_exp(a)) == a


@settings(max_examples=60, deadline=None)
@given(st.fractions(max_denominator=10**6).filter(lambda q: q != 0))
def test_compact_round_trip(q):
    x = S(q)
    assert PadicScalar.from_compact(x.to_compact(), 5).same_as(x)
