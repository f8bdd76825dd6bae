from fractions import Fraction

import pytest

from padicps import finite_rep as fr


def test_small_tables():
    assert fr.character_table(fr.cyclic(2)).degrees == [1, 1]
    assert len(fr.character_table(fr.cyclic(3)).classes) == 3
    t = fr.character_table(fr.symmetric3())
    assert sorted(t.class_sizes) == [1, 2, 3]
    assert sorted(t.degrees) == [1, 1, 2]


def test_sl2_tables():
    assert len(fr.character_table(fr.sl2(3)).classes) == 7
    t5 = fr.character_table(fr.sl2(5))
    assert sorted(t5.degrees) == [1, 2, 2, 3, 3, 4, 4, 5, 6]
    assert sum(d * d for d in t5.degrees) == 120
    t5.verify()


def test_orthogonality_exact():
    t = fr.character_table(fr.sl2(3))
    n = len(t.characters)
    for i in range(n):
        for j in range(n):
            assert t.inner(t.characters[i], t.characters[j]) == (1 if i == j else 0)


@pytest.mark.parametrize("build,sub", [
    (fr.symmetric3, lambda G: G.subgroup([(1, 2, 0)])),
    (lambda: fr.sl2(3), lambda G: fr.quaternion_in_sl2_f3()),
])
def test_identities(build, sub):
    G = build()
    t = fr.character_table(G)
    ts = fr.subgroup_table(t, sub(G))
    assert fr.verify_identities(t, ts).passed


def test_strong_admissibility():
    t5 = fr.character_table(fr.sl2(5))
    tB = fr.subgroup_table(t5, fr.upper_borel_sl2(5))
    ind = fr.induced_character(t5, tB, [1] * len(tB.classes))
    rep = fr.strong_adm_check(t5, ind, 1)
    assert rep.passed
    assert sorted(d for d, k in zip(t5.degrees, rep.multiplicities) if k) == [1, 5]
    neg = fr.strong_adm_check(t5, fr.regular_character(t5, 2), 1)
    assert not neg.passed and neg.worst_factor == 2


def test_group_too_large():
    with pytest.raises(fr.GroupTooLarge):
        fr.character_table(fr.sl2(5), bound=100)
