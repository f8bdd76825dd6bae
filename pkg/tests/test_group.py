import random

import pytest

from padicps.group import (GroupElement, LieElement, bracket, exp_lie, identity, lower_unipotent,
                           random_sl2_zp, torus, upper_unipotent, weyl)
from padicps.padic import DomainError, PadicScalar

P = 5


def test_determinant_is_checked():
    with pytest.raises(ValueError):
        GroupElement.of(1, 1, 1, 1, P)


def test_products_and_inverses():
    rng = random.Random(1)
    for _ in range(10):
        g = random_sl2_zp(rng, P, 20)
        assert g @ g.inverse() == identity(P)
        assert g.is_integral()


def test_named_elements():
    w = weyl(P)
    assert w @ w == torus(-1, P)
    assert (torus(P, P).min_valuation()) == -1
    assert upper_unipotent(2, P) @ upper_unipotent(3, P) == upper_unipotent(5, P)
    assert lower_unipotent(2, P) @ lower_unipotent(-2, P) == identity(P)


def test_lie_brackets():
    B = LieElement.basis(P, 30)
    assert bracket(B["u_minus"], B["u"]) == B["h"]
    assert bracket(B["h"], B["u_minus"]) == B["u_minus"].scale(2)
    assert bracket(B["h"], B["u"]) == B["u"].scale(-2)


def test_exp_of_nilpotent_is_unipotent():
    B = LieElement.basis(P, 30)
    five = PadicScalar.from_int(5, P, 30)
    assert exp_lie(B["u_minus"].scale(five)) == upper_unipotent(5, P)
    assert exp_lie(B["u"].scale(five)) == lower_unipotent(5, P)
    with pytest.raises(DomainError):
        exp_lie(B["h"])
