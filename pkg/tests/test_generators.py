import pytest

from bsbraid import generators as G
from bsbraid.bimod import BSObject, hcomp, identity
from bsbraid.poly import Poly


@pytest.mark.parametrize("n", [2, 3, 4])
def test_start_dot_matches_frobenius_formula(n):
    for i in range(1, n):
        assert G.startdot(n, i) == G.startdot_frobenius(n, i)


def test_barbell_is_multiplication_by_a_root():
    bar = G.enddot(3, 2).compose(G.startdot(3, 2))
    assert bar == G.polybox(3, Poly.var(3, 2) - Poly.var(3, 3))


def test_degrees():
    assert G.enddot(3, 1).degree == 1
    assert G.merge(3, 1).degree == -1
    assert G.sixv(3, 1).degree == 0
    assert G.fourv(4, 1, 3).degree == 0


def test_sixv_orientations_are_mutually_inverse_on_the_top_summand():
    up, down = G.sixv(3, 1, "up"), G.sixv(3, 1, "down")
    assert up.source == BSObject(3, (1, 2, 1))
    assert down.source == BSObject(3, (2, 1, 2))
    loop = down.compose(up)
    # the idempotent projecting to B_{121}'s indecomposable top summand
    assert loop.compose(loop) == loop


def test_needle_vanishes():
    assert G.merge(2, 1).compose(G.split(2, 1)).is_zero()


def test_unit_law():
    B = BSObject(3, (2,))
    assert G.merge(3, 2).compose(hcomp(G.startdot(3, 2), B)) == identity(B)


def test_bad_colors():
    with pytest.raises(ValueError):
        G.merge(3, 3)
    with pytest.raises(ValueError):
        G.fourv(4, 1, 2)
