import pytest
from hypothesis import given
from hypothesis import strategies as st

from bsbraid import generators as G
from bsbraid.bimod import (BSObject, boxtimes, far_commute, hcomp, identity, r_x, r_yz, shift_morphism,
                           swap_mn, tensorator)
from bsbraid.homsolve import hom_space_basis
from bsbraid.poly import Poly

words = st.lists(st.integers(1, 3), max_size=3).map(tuple)


def test_object_basics():
    B = BSObject(3, (1, 2), 1)
    assert B.rank == 4
    assert B.degree_of(0b11) == 2 * 2 - 2 + 1
    assert B.shift(-1).unshifted() == BSObject(3, (1, 2))
    with pytest.raises(ValueError):
        BSObject(3, (3,))


@given(words, words, words)
def test_concat_is_associative(a, b, c):
    A, B, C = (BSObject(4, w) for w in (a, b, c))
    assert A.concat(B).concat(C) == A.concat(B.concat(C))


def test_hcomp_interchange():
    e, s = G.enddot(3, 1), G.startdot(3, 2)
    one = hcomp(e, BSObject(3, (2,))).compose(hcomp(BSObject(3, (1,)), s))
    other = hcomp(BSObject(3, ()), s).compose(hcomp(e, BSObject(3, ())))
    assert hcomp(e, s) == one == other


def test_generators_are_bimodule_maps():
    for f in (G.merge(3, 2), G.split(3, 1), G.sixv(3, 1, "up"), G.sixv(3, 1, "down"), G.fourv(4, 1, 3)):
        assert f.check_bimodule()


def test_far_commute_is_an_isomorphism():
    f = far_commute(5, (1, 2), (4,))
    g = far_commute(5, (4,), (1, 2))
    assert g.compose(f) == identity(BSObject(5, (1, 2, 4)))
    with pytest.raises(ValueError):
        far_commute(4, (1,), (2,))


def test_tensorator_is_far_commutation_after_shifting():
    t = tensorator((1,), (1,), 2, 2)
    assert t.source.word == (1, 3) and t.target.word == (3, 1)


def test_boxtimes_of_identities_is_identity():
    a, b = BSObject(2, (1,)), BSObject(3, (2,))
    assert boxtimes(identity(a), identity(b), 2, 3) == identity(boxtimes(a, b, 2, 3))


def test_shift_morphism_moves_colors():
    f = shift_morphism(G.merge(2, 1), 1, 1)
    assert f == G.merge(4, 2)


def test_symmetries_are_involutions():
    f = G.sixv(3, 1, "up")
    assert r_x(r_x(f)) == f
    e = G.enddot(3, 2)
    assert r_yz(r_yz(e)) == e
    assert r_yz(e) == G.startdot(3, 2)


def test_swap_sends_first_factor_colors_past_the_second():
    B = BSObject(5, (1, 4))
    assert swap_mn(B, 2, 3).word == (4, 2)
    with pytest.raises(ValueError):
        swap_mn(BSObject(5, (2,)), 2, 3)


def test_polynomial_forcing_through_a_random_map():
    f = hom_space_basis(BSObject(3, (1,)), BSObject(3, (1, 2)), 1)[0]
    x = G.polybox(3, Poly.var(3, 3))
    assert hcomp(x, f) == hcomp(x, identity(f.target)).compose(f)


def test_boxtimes_examples():
    B1 = BSObject(2, (1,))
    assert boxtimes(B1, B1, 2, 2) == BSObject(4, (1, 3))
    s = G.startdot(2, 1)
    assert boxtimes(s, s, 2, 2) == hcomp(G.startdot(4, 1), G.startdot(4, 3))
    assert boxtimes(BSObject(1, ()), G.merge(2, 1), 1, 2) == G.merge(3, 2)


def test_tensorator_examples():
    assert tensorator((1,), (1,), 2, 2) == G.fourv(4, 1, 3)
    assert tensorator((), (1, 2), 2, 3) == identity(BSObject(5, (3, 4)))
    with pytest.raises(ValueError):
        tensorator((2,), (1,), 2, 2)


@given(st.integers(0, 10**6))
def test_tensorator_is_natural(seed):
    import random
    rng = random.Random(seed)
    m = n = 3
    words = [(1,), (2,), (1, 2), ()]
    u, u2, v, v2 = (rng.choice(words) for _ in range(4))
    fs = hom_space_basis(BSObject(m, u), BSObject(m, u2), rng.choice([-1, 0, 1]))
    gs = hom_space_basis(BSObject(n, v), BSObject(n, v2), rng.choice([-1, 0, 1]))
    if not fs or not gs:
        return
    f, g = rng.choice(fs), rng.choice(gs)
    fb = boxtimes(f, BSObject(n, ()), m, n)
    gb = boxtimes(BSObject(m, ()), g, m, n)
    lhs = tensorator(u2, v2, m, n).compose(hcomp(fb, gb))
    rhs = hcomp(gb, fb).compose(tensorator(u, v, m, n))
    assert lhs == rhs


def test_swap_examples():
    p = Poly.var(2, 1)
    assert swap_mn(p, 1, 1) == Poly.var(2, 2)
    assert swap_mn(BSObject(3, (1,)), 2, 1).word == (2,)
    f = G.merge(5, 4)
    assert swap_mn(swap_mn(f, 2, 3), 3, 2) == f


def test_r_x_of_start_dot():
    g = r_x(G.startdot(3, 1))
    s = G.startdot(3, 2)
    assert g in (s, s.scale(-1))
