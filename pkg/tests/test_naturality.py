import pytest

from bsbraid import generators as G
from bsbraid.bimod import BSObject
from bsbraid.complex import differential_of, solve_homotopy
from bsbraid.naturality import (BarElement, BoxMorphism, cone_slide, dot_order_homotopies, embed_box,
                                generator_cases, h_coxeter_assembly, h_hcomp, h_parabolic_embed, h_vcomp,
                                higher_homotopy, naturality_defect, random_box_morphism, solve_slide_homotopy,
                                tau_base, tau_extend)
from bsbraid.naturality import _bar
from bsbraid.poly import Poly
from bsbraid.rouquier import cabled_crossing
from bsbraid.slide import slide_for_word

SD = BoxMorphism.right(G.startdot(2, 1), 1, 2, "sd")
MG = BoxMorphism.right(G.merge(2, 1), 1, 2, "mg")


def test_box_morphism_types():
    f = BoxMorphism(2, 2, G.enddot(2, 1), G.startdot(2, 1), "ed|sd")
    assert f.source_words == ((1,), ())
    assert f.target_words == ((), (1,))
    assert f.degree == 2
    assert f.psi.source == BSObject(4, (1,)) and f.psi.target == BSObject(4, (3,))
    assert f.phi.source == BSObject(4, (3,)) and f.phi.target == BSObject(4, (1,))
    with pytest.raises(ValueError):
        BoxMorphism(1, 2, None, G.merge(3, 1))


def test_identity_has_zero_defect():
    assert naturality_defect(BoxMorphism.ident(1, 2, (), (1, 1))).is_zero()
    assert naturality_defect(BoxMorphism.ident(2, 1, (1,), ())).is_zero()


@pytest.mark.parametrize("name,f,zero", [c for c in generator_cases() if c[0] != "sixv-up"],
                         ids=[c[0] for c in generator_cases() if c[0] != "sixv-up"])
def test_generator_defects(name, f, zero):
    delta = naturality_defect(f)
    assert delta.is_closed()
    assert delta.is_zero() == zero
    h = solve_slide_homotopy(f)
    assert differential_of(h) == delta
    assert h.is_zero() == zero


def test_polybox_homotopy_is_a_start_dot():
    f = BoxMorphism.left(G.polybox(1, Poly.var(1, 1)), 1, 1)
    h = solve_slide_homotopy(f)
    (key, comp), = h.comps.items()
    sd = G.startdot(2, 1)
    assert comp.with_objects(sd.source, sd.target) in (sd, sd.scale(-1))


def test_vcomp_with_identity_reduces_to_h_f():
    hs = solve_slide_homotopy(SD)
    ident = BoxMorphism.ident(1, 2, (), (1,))
    h_id = solve_slide_homotopy(ident)
    assert h_id.is_zero()
    assert h_vcomp(h_id, ident, hs, SD) == hs


def test_barbell_via_lemma_agrees_with_direct_solve_up_to_homotopy():
    ED = BoxMorphism.right(G.enddot(2, 1), 1, 2, "ed")
    h = h_vcomp(solve_slide_homotopy(ED), ED, solve_slide_homotopy(SD), SD)
    bar = ED.compose(SD)
    assert differential_of(h) == naturality_defect(bar)
    assert higher_homotopy(h, bar) is not None


def test_hcomp_trivial_whiskers_and_zero_homotopy():
    hs = solve_slide_homotopy(SD)
    assert h_hcomp(hs, SD) == hs
    hm = solve_slide_homotopy(MG)
    w = h_hcomp(hm, MG, (1,), (1,))
    assert w.is_zero()
    assert naturality_defect(MG.whisker(((), (1,)), ((), (1,)))).is_zero()


def test_hcomp_start_dot_with_b1():
    hs = solve_slide_homotopy(SD)
    f = SD.whisker(((), (1,)))
    assert differential_of(h_hcomp(hs, SD, (1,))) == naturality_defect(f)


def test_coxeter_assembly():
    hs = solve_slide_homotopy(SD)
    assert h_coxeter_assembly(hs, SD, 1) == hs
    f2 = BoxMorphism.right(G.startdot(2, 1), 2, 2)
    assert differential_of(h_coxeter_assembly(hs, SD, 2)) == naturality_defect(f2)
    assert h_coxeter_assembly(solve_slide_homotopy(MG), MG, 2).is_zero()


def test_parabolic_embedding():
    hs = solve_slide_homotopy(SD)
    assert h_parabolic_embed(hs, SD, 0, 2) == hs
    for l in (0, 1):
        assert differential_of(h_parabolic_embed(hs, SD, l, 3)) == naturality_defect(embed_box(SD, l, 3))
        assert h_parabolic_embed(solve_slide_homotopy(MG), MG, l, 3).is_zero()
    with pytest.raises(ValueError):
        embed_box(SD, 2, 3)


def test_cone_slides():
    c = cone_slide(SD)
    assert c.verify()
    assert c.source.d_squared_zero() and c.target.d_squared_zero()
    zero = cone_slide(BoxMorphism.right(G.startdot(2, 1).scale(0), 1, 2))
    assert zero.verify()
    nx = len(cabled_crossing(1, 2))
    # block diagonal: nothing from the shifted source summands lands in the second block
    assert not [key for key in zero.chain.comps if key[1] % 2 == 0 and key[0] >= nx]
    assert cone_slide(BoxMorphism.ident(1, 2, (), (1,))).verify()


def test_random_cone():
    f = random_box_morphism(1, 2, (1,), (1, 1), 1, seed=3)
    assert not f.is_zero()
    assert cone_slide(f).verify()


def test_tau_base_cases():
    t = tau_base(1, 2)
    assert t.value(_bar((), ((), (1,)))) == slide_for_word((), (1,), 1, 2).chain
    e = BarElement((SD,))
    assert differential_of(t.value(e)) == naturality_defect(SD)


def test_tau_table_is_a_chain_map():
    t = tau_extend(tau_base(1, 1), 2)
    res = t.check_chain_map()
    assert res and all(ok for _, ok in res)
    assert max(e.r for e, _ in res) == 2


def test_bar_elements_must_compose():
    with pytest.raises(ValueError):
        BarElement((SD, SD))
    with pytest.raises(ValueError):
        BarElement(())


def test_dot_order_discrepancy():
    hA, hB, t, explicit = dot_order_homotopies()
    assert hA != hB
    assert differential_of(t) == hA - hB
    assert differential_of(explicit) == hB - hA
    rest = t + explicit
    assert differential_of(rest).is_zero()
    assert rest.is_zero() or solve_homotopy(rest) is not None
