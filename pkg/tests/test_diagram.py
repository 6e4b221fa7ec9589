import pytest

from bsbraid import generators as G
from bsbraid.bimod import BSObject, hcomp, identity
from bsbraid.diagram import TermSyntaxError, TermTypeError, evaluate_term, parse_term, run_relation_suite, term_type
from bsbraid.poly import Poly


def ev(text, n):
    return evaluate_term(parse_term(text, n), n)


def test_generators_evaluate_to_their_formulas():
    assert ev("(gen merge 1)", 3) == G.merge(3, 1)
    assert ev("(gen sixv 2 down)", 4) == G.sixv(4, 2, "down")
    assert ev("(gen polybox x1-x2)", 2) == G.polybox(2, Poly.var(2, 1) - Poly.var(2, 2))


def test_compositions():
    unit = ev("(vcomp (gen merge 1) (hcomp (gen startdot 1) (id 1)))", 2)
    assert unit == identity(BSObject(2, (1,)))
    barbell = ev("(vcomp (gen enddot 1) (gen startdot 1))", 2)
    assert barbell == ev('(gen polybox "x1 - x2")', 2)


def test_sum_scale_and_box():
    t = ev("(sum (scale 2 (id 1)) (scale -1 (id 1)))", 2)
    assert t == identity(BSObject(2, (1,)))
    b = ev("(box 2 2 (gen enddot 1) (id 1))", 4)
    assert b == hcomp(G.enddot(4, 1), BSObject(4, (3,)))


def test_typing():
    ty = term_type(parse_term("(hcomp (gen split 1) (id 2))", 3), 3)
    assert ty.source == (1, 2) and ty.target == (1, 1, 2) and ty.degree == -1
    with pytest.raises(TermTypeError):
        parse_term("(vcomp (gen merge 1) (gen merge 2))", 3)
    with pytest.raises(TermTypeError):
        parse_term("(gen merge 3)", 3)


@pytest.mark.parametrize("text", ["", "(gen merge 1", "(frob 1)", "(gen merge 1))", "(scale x (id))"])
def test_syntax_errors(text):
    with pytest.raises(TermSyntaxError):
        parse_term(text, 3)


@pytest.mark.parametrize("n", [2, 3])
def test_relation_suite_small(n):
    results = run_relation_suite(n)
    assert results and all(r["status"] == "pass" for r in results), [r for r in results if r["status"] != "pass"]
