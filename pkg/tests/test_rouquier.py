import pytest

from bsbraid.bimod import BSObject
from bsbraid.complex import one_term, solve_homotopy_equivalence
from bsbraid.rouquier import (BraidWord, cabled_crossing, cabled_word, coxeter_factorization, dual_complex, elementary,
                              parse_braid_word, r2_structure_maps, rouquier_of_word)


def test_elementary_complexes():
    X = elementary(3, 2)
    assert [a for _, a in X.summands] == [0, 1]
    assert X.obj(0) == BSObject(3, (2,)) and X.obj(1) == BSObject(3, (), -1)
    Y = elementary(3, -2)
    assert [a for _, a in Y.summands] == [-1, 0]
    assert Y.obj(0) == BSObject(3, (), 1)


def test_parse_braid_word():
    assert parse_braid_word("1 -2, 1", 3).letters == (1, -2, 1)
    with pytest.raises(ValueError):
        parse_braid_word("1 a", 3)
    with pytest.raises(ValueError):
        BraidWord(3, (3,))
    with pytest.raises(ValueError):
        BraidWord(3, (0,))


def test_empty_word_is_the_unit():
    assert rouquier_of_word(BraidWord(3, ())) == one_term(BSObject(3, ()))


def test_cabled_words():
    assert cabled_word(1, 3) == (3, 2, 1)
    assert cabled_word(2, 2) == (2, 1, 3, 2)
    assert cabled_word(2, 1, -1) == (-1, -2)
    assert cabled_word(0, 3) == ()


@pytest.mark.parametrize("m,n", [(1, 2), (2, 1), (2, 2), (1, 3)])
def test_coxeter_factorization_is_on_the_nose(m, n):
    assert coxeter_factorization(m, n) == cabled_crossing(m, n)
    assert coxeter_factorization(m, n, -1) == cabled_crossing(m, n, -1)


def test_cabled_crossing_shift():
    X = cabled_crossing(1, 2)
    assert X.obj(0) == BSObject(3, (2, 1), -2)


@pytest.mark.parametrize("letter", [1, -1, 2, -2])
def test_dual_inverts_elementary_complexes(letter):
    X = elementary(3, letter)
    assert dual_complex(X) == elementary(3, -letter)
    assert dual_complex(dual_complex(X)) == X


def test_braid_relation_equivalence():
    a = rouquier_of_word(BraidWord(3, (1, 2, 1)))
    b = rouquier_of_word(BraidWord(3, (2, 1, 2)))
    eq = solve_homotopy_equivalence(a, b)
    assert eq is not None and eq.verify()


def test_far_commutation_equivalence():
    a = rouquier_of_word(BraidWord(4, (1, 3)))
    b = rouquier_of_word(BraidWord(4, (3, 1)))
    assert solve_homotopy_equivalence(a, b).verify()


@pytest.mark.parametrize("sign", [1, -1])
def test_r2_structure_maps(sign):
    d = r2_structure_maps(3, 2, sign)
    R = d.ev.target
    assert d.ev.compose(d.coev_p) == R.identity()
    assert d.ev_p.compose(d.coev) == R.identity()
    assert set(d.homotopies) == {"coev'∘ev ~ id", "coev∘ev' ~ id", "snake X (ev, coev)", "snake X' (ev, coev)",
                                 "snake X' (ev', coev')", "snake X (ev', coev')"}
    for f in (d.ev, d.coev, d.ev_p, d.coev_p):
        assert f.is_closed()


def test_rouquier_type_errors():
    with pytest.raises(TypeError):
        rouquier_of_word((1, 2))
