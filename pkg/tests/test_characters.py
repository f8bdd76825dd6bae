import random
from fractions import Fraction

import pytest

from padicps.characters import (CharacterSpecError, SmoothCharacter, TorusCharacter, c_of,
                                classify, eval_sigma, parse_character, twist_eps)
from padicps.padic import PadicScalar, char_power

P = 5


def S(x, p=P, prec=30):
    return PadicScalar.from_rational(x, p, prec)


def random_units(n, seed=0, p=P):
    rng = random.Random(seed)
    return [S(rng.randrange(1, p**8) * (1 if rng.random() < .5 else p), p) for _ in range(n)
            if True]


def test_trivial_sigma():
    chi = TorusCharacter(2, SmoothCharacter.trivial(P))
    assert eval_sigma(chi, S(3)) == S(Fraction(1, 9))


def test_case_b_sigma():
    chi = TorusCharacter(0, SmoothCharacter.unramified(P, Fraction(1, 25)))
    assert eval_sigma(chi, S(5)) == S(Fraction(1, 25))


@pytest.mark.parametrize("spec", ["m=2;cond=0;unit=;at_p=3",
                                  "m=1;cond=1;unit=-1;at_p=p^-1",
                                  "m=0;cond=1;unit=-1;at_p=2"])
def test_multiplicative(spec):
    chi = parse_character(spec, P)
    xs = [x for x in random_units(20, seed=1) if not x.is_zero()]
    for a, b in zip(xs, xs[1:]):
        assert eval_sigma(chi, a * b) == eval_sigma(chi, a) * eval_sigma(chi, b)


def test_c_of():
    assert c_of(parse_character("m=2;cond=1;unit=-1;at_p=4", P)) == -2
    assert c_of(TorusCharacter(0, SmoothCharacter.trivial(P))) == 0
    chi = TorusCharacter(3, SmoothCharacter.trivial(P))
    t = S(1 + 25)
    assert eval_sigma(chi, t) == char_power(t, c_of(chi))


def test_twist():
    chi = parse_character("m=3;cond=0;unit=;at_p=2", P)
    assert twist_eps(chi, 0) == chi
    chi2 = twist_eps(chi, 4)
    assert c_of(chi2) == 5
    for t in random_units(10, seed=4):
        assert eval_sigma(chi2, t) == t**8 * eval_sigma(chi, t)
    assert classify(chi2).verdict == "simple"


def test_classify_cases():
    simple = classify(parse_character("c=1/2;cond=0;unit=;at_p=1", P))
    assert simple.verdict == "simple"
    a = classify(parse_character("m=0;cond=0;unit=;at_p=1", P))
    assert (a.verdict, a.case, a.topological_length) == ("reducible", "A", 3)
    b = classify(parse_character("m=1;cond=0;unit=;at_p=p^-2", P))
    assert (b.case, b.topological_length) == ("B", 3)
    c = classify(parse_character("m=1;cond=0;unit=;at_p=-p^-1", P))
    assert c.case == "C" and c.topological_length == "2 or 3"
    c1 = classify(parse_character("m=0;cond=1;unit=-1;at_p=p^-1", P))
    assert c1.case == "C"
    other = classify(parse_character("m=2;cond=0;unit=;at_p=3", P))
    assert other.case == "irreducible-smooth" and other.topological_length == 2
    assert a.to_json()["chi_prime"].startswith("m=-2;cond=0;unit=;")


def test_parse_errors_report_position():
    with pytest.raises(CharacterSpecError) as err:
        parse_character("m=2;cond=0;bogus=1", P)
    assert err.value.position == 11
    with pytest.raises(CharacterSpecError):
        parse_character("m=2;cond=1;unit=2;at_p=1", P)


def test_spec_round_trip():
    chi = parse_character("m=2;cond=1;unit=-1;at_p=p^-1", P)
    again = parse_character(chi.to_spec(), P)
    assert again.to_spec() == chi.to_spec()
