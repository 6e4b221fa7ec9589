"""Algebraic identities checked on randomly drawn exact data."""

import random

from gmpy2 import mpq
from hypothesis import assume, given
from hypothesis import strategies as st

from bsbraid.bimod import BSObject, hcomp
from bsbraid.complex import differential_of, hom_basis, random_complex, tensor_maps
from bsbraid.homsolve import hom_space_basis

seeds = st.integers(0, 10**6)
WORDS = [(), (1,), (2,), (1, 2), (2, 1), (1, 1)]


def random_morphism(rng, u, v, d=None):
    """A random integer combination of a hom basis; d=None picks a degree with a nonzero space."""
    if d is None:
        options = [e for e in range(-2, 4) if hom_space_basis(BSObject(3, u), BSObject(3, v), e)]
        d = rng.choice(options)
    basis = hom_space_basis(BSObject(3, u), BSObject(3, v), d)
    if not basis:
        return None
    out = basis[0].scale(0)
    for b in basis:
        out = out + b.scale(mpq(rng.randint(-3, 3)))
    return out


def random_graded_map(rng, S, T, k=None, q=None):
    """Random element of Hom^{k,q}(S, T); unspecified degrees are drawn among nonzero spaces."""
    ks = [k] if k is not None else range(-2, 3)
    qs = [q] if q is not None else range(-3, 4)
    options = [(a, b) for a in ks for b in qs if hom_basis(S, T, a, b)]
    if not options:
        return None
    k, q = rng.choice(options)
    basis = hom_basis(S, T, k, q)
    out = basis[0].scale(0)
    for b in basis:
        out = out + b.scale(mpq(rng.randint(-2, 2)))
    out.k, out.q = k, q
    return out


@given(seeds)
def test_random_hom_elements_are_bimodule_maps(seed):
    rng = random.Random(seed)
    f = random_morphism(rng, rng.choice(WORDS), rng.choice(WORDS), rng.randint(-2, 2))
    if f is not None:
        assert f.check_bimodule()


@given(seeds)
def test_composition_is_associative(seed):
    rng = random.Random(seed)
    a, b, c, d = (rng.choice(WORDS) for _ in range(4))
    f, g, h = random_morphism(rng, a, b), random_morphism(rng, b, c), random_morphism(rng, c, d)
    assert h.compose(g).compose(f) == h.compose(g.compose(f))


@given(seeds)
def test_horizontal_composition_is_functorial(seed):
    rng = random.Random(seed)
    a, b, c, d = (rng.choice(WORDS) for _ in range(4))
    f, g = random_morphism(rng, a, b), random_morphism(rng, c, d)
    left = hcomp(f, BSObject(3, d)).compose(hcomp(BSObject(3, a), g))
    right = hcomp(BSObject(3, b), g).compose(hcomp(f, BSObject(3, c)))
    assert left == right == hcomp(f, g)


@given(seeds)
def test_differential_of_maps_is_a_derivation(seed):
    rng = random.Random(seed)
    A, B, C = (random_complex(rng, 3) for _ in range(3))
    f, g = random_graded_map(rng, A, B), random_graded_map(rng, B, C)
    assume(f is not None and g is not None)
    lhs = differential_of(g.compose(f))
    rhs = differential_of(g).compose(f) + g.compose(differential_of(f)).scale(-1 if g.k % 2 else 1)
    assert lhs == rhs
    assert differential_of(differential_of(f)).is_zero()


@given(seeds)
def test_tensor_of_maps_respects_composition(seed):
    rng = random.Random(seed)
    A, B, C = (random_complex(rng, 3) for _ in range(3))
    f = random_graded_map(rng, A, B, k=0)
    g = random_graded_map(rng, B, C, k=0)
    assume(f is not None and g is not None)
    Z = random_complex(rng, 3)
    lhs = tensor_maps(g.compose(f), Z.identity())
    rhs = tensor_maps(g, Z.identity()).compose(tensor_maps(f, Z.identity()))
    assert lhs == rhs
    assert differential_of(tensor_maps(Z.identity(), f)) == tensor_maps(Z.identity(), differential_of(f))
