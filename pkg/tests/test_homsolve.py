import pytest

from bsbraid.bimod import BSObject
from bsbraid.homsolve import hom_dimension, hom_space_basis
from oracles import hom_dimension_oracle

WORDS3 = [(), (1,), (2,), (1, 2), (2, 1), (1, 1), (1, 2, 1), (2, 1, 2)]


@pytest.mark.parametrize("u", WORDS3)
@pytest.mark.parametrize("v", [(), (1,), (2,), (1, 2), (1, 2, 1)])
def test_dimensions_follow_the_hom_formula(u, v):
    for d in range(-3, 5):
        expected = hom_dimension_oracle(3, u, v, d)
        assert hom_dimension(BSObject(3, u), BSObject(3, v), d) == expected, (u, v, d)


def test_dimensions_in_four_strands():
    for u, v in [((1, 3), (3, 1)), ((1, 2, 3), (3, 2, 1)), ((2,), (1, 3))]:
        for d in range(-2, 4):
            assert hom_dimension(BSObject(4, u), BSObject(4, v), d) == hom_dimension_oracle(4, u, v, d)


def test_basis_elements_are_bimodule_maps():
    for f in hom_space_basis(BSObject(3, (1, 2)), BSObject(3, (2, 1)), 2, certify=True):
        assert f.check_bimodule()


def test_shifts_move_degrees():
    u, v = BSObject(2, (1,)), BSObject(2, ())
    assert hom_dimension(u, v, 1) == 1
    assert hom_dimension(u.shift(1), v, 0) == 1


def test_ambient_mismatch():
    with pytest.raises(ValueError):
        hom_space_basis(BSObject(2, ()), BSObject(3, ()), 0)
