import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from bsbraid.poly import Poly, VarShift, parse_poly

N = 3
X = sympy.symbols("x1:4")


def to_sympy(p: Poly):
    out = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for x, k in zip(X, e):
            term *= x ** k
        out += term
    return sympy.expand(out)


polys = st.dictionaries(
    st.tuples(*[st.integers(0, 3)] * N),
    st.integers(-5, 5).filter(bool),
    max_size=5,
).map(lambda t: Poly(N, t))


@given(polys, polys)
def test_ring_operations_match_sympy(p, q):
    assert to_sympy(p + q) == sympy.expand(to_sympy(p) + to_sympy(q))
    assert to_sympy(p * q) == sympy.expand(to_sympy(p) * to_sympy(q))
    assert to_sympy(p - q) == sympy.expand(to_sympy(p) - to_sympy(q))


@given(polys, st.integers(1, N - 1))
def test_demazure_matches_divided_difference(p, i):
    a, b = X[i - 1], X[i]
    sp = to_sympy(p)
    swapped = sp.subs({a: b, b: a}, simultaneous=True)
    expected = sympy.cancel((sp - swapped) / (a - b))
    assert to_sympy(p.demazure(i)) == sympy.expand(expected)


@given(polys, polys, st.integers(1, N - 1))
def test_demazure_twisted_leibniz(p, q, i):
    assert (p * q).demazure(i) == p.demazure(i) * q + p.transpose(i) * q.demazure(i)


@given(polys, st.integers(1, N - 1))
def test_invariant_decomposition(p, i):
    a, b = p.invariant_decompose(i)
    assert a.is_invariant(i) and b.is_invariant(i)
    assert a + Poly.var(N, i) * b == p


def test_degree_convention_doubles_polynomial_degree():
    assert Poly.var(3, 2).degree() == 2
    assert (Poly.var(3, 1) * Poly.var(3, 3)).degree() == 4
    assert Poly.zero(3).degree() is None


def test_mixed_ambients_raise():
    with pytest.raises(ValueError):
        Poly.var(2, 1) + Poly.var(3, 1)


def test_parse_round_trip():
    p = parse_poly("x1^2 - 3/2*x2*x3 + 4", 3)
    assert p.terms[(2, 0, 0)] == mpq(1)
    assert p.terms[(0, 1, 1)] == mpq(-3, 2)
    assert parse_poly(str(p), 3) == p


def test_shift_moves_variables():
    p = Poly.var(2, 1) * Poly.var(2, 2)
    assert p.shift(VarShift(1, 2)) == Poly.var(5, 2) * Poly.var(5, 3)


def test_transpose_out_of_range():
    with pytest.raises(ValueError):
        Poly.var(3, 1).transpose(3)
