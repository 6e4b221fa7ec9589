import pytest

from bsbraid.bimod import BSObject, tensorator
from bsbraid.complex import GradedMap, closed_maps, one_term, solve_homotopy, tensor_maps
from bsbraid.rouquier import cabled_crossing
from bsbraid.slide import (atomic_slide, commutation_isomorphism, slide_cabled, slide_for_word, slide_generator,
                           slide_prime, slide_source, slide_target)


@pytest.mark.parametrize("kind", ["12", "21"])
def test_atomic_slides(kind):
    s = atomic_slide(kind)
    assert s.verify()
    assert s.info["H0"] == 1
    # the normalising component is the identity between the two equal summands
    (j, i) = s.info["anchor"]
    f = s.chain.comps[(j, i)]
    assert f.source.unshifted() == f.target.unshifted()
    assert f.cols == {b: {b: col[b]} for b, col in f.cols.items()}


def test_atomic_slide_is_unique_on_the_nose():
    s = atomic_slide("12")
    closed, exact = closed_maps(s.source, s.target)
    assert len(closed) == 1 and not exact
    c = closed[0]
    (j, i) = s.info["anchor"]
    ratio = next(iter(next(iter(c.comps[(j, i)].cols.values())).values()))
    scalar = ratio.constant_term()
    assert c == s.chain.scale(scalar)


def test_degenerate_slides_are_identities():
    s = slide_for_word((), (), 2, 2)
    assert s.chain == cabled_crossing(2, 2).identity()
    s = slide_for_word((), (1,), 1, 2)
    assert s.chain == atomic_slide("12").chain
    for Y1, Y2, m, n in (((), (1,), 0, 2), ((1,), (), 2, 0)):
        s = slide_for_word(Y1, Y2, m, n)
        assert s.verify() and s.chain == s.source.identity()


@pytest.mark.parametrize("Y1,Y2,m,n", [((1,), (1,), 2, 2), ((), (1, 2, 1), 1, 3), ((2,), (), 3, 1),
                                       ((), (1, 3), 1, 4), ((), (1, 1), 1, 2)])
def test_word_slides_are_certified(Y1, Y2, m, n):
    s = slide_for_word(Y1, Y2, m, n, certify=True)
    assert s.verify()
    assert s.source == slide_source(m, n, Y1, Y2)
    assert s.target == slide_target(m, n, Y1, Y2)


def test_word_slide_rejects_bad_colors():
    with pytest.raises(ValueError):
        slide_for_word((), (2,), 1, 2)


@pytest.mark.parametrize("m,n,side,j", [(1, 2, "1B", 1), (2, 1, "B1", 1), (2, 2, "1B", 1), (2, 2, "B1", 1)])
def test_generator_slides(m, n, side, j):
    assert slide_generator(m, n, side, j).verify()


def test_cabled_slide_for_m1_is_the_word_slide():
    assert slide_cabled(1, 2, (1,)).chain == slide_for_word((), (1,), 1, 2).chain


def test_cabled_slide_m2():
    s = slide_cabled(2, 2, (1,), certify=True)
    assert s.verify()


@pytest.mark.parametrize("Y1,Y2,m,n", [((), (1,), 1, 2), ((1,), (), 2, 1)])
def test_negative_crossing_slides(Y1, Y2, m, n):
    s = slide_prime(Y1, Y2, m, n, certify=True)
    assert s.verify()
    assert s.sign == -1
    assert s.source == slide_source(m, n, Y1, Y2, sign=-1)
    assert s.target == slide_target(m, n, Y1, Y2, sign=-1)


def test_commutation_isomorphism_is_invertible():
    f = commutation_isomorphism(5, (1, 4, 2), (4, 1, 2))
    g = commutation_isomorphism(5, (4, 1, 2), (1, 4, 2))
    assert g.compose(f) == f.source.identity()


def test_tensorator_square_commutes_up_to_homotopy():
    m = n = 2
    X = cabled_crossing(m, n)
    t = tensorator((1,), (1,), m, n)
    tmap = GradedMap(one_term(t.source), one_term(t.target), 0, 0, {(0, 0): t})
    first = slide_for_word((), (1,), m, n).chain
    second = slide_for_word((1,), (), m, n).chain
    B1 = one_term(BSObject(4, (1,)))
    route = tensor_maps(B1.identity(), second).compose(
        tensor_maps(first, B1.identity())).compose(tensor_maps(X.identity(), tmap))
    direct = slide_for_word((1,), (1,), m, n).chain
    assert route.is_closed()
    assert solve_homotopy(route - direct) is not None
