"""Generating morphisms of the diagrammatic category as explicit bimodule maps."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq

from .bimod import BSObject, BimodMorphism, CertificateError, basis_times_poly, normal_form
from .poly import Poly

__all__ = [
    "GeneratorKind",
    "generator_morphism",
    "startdot",
    "enddot",
    "merge",
    "split",
    "sixv",
    "fourv",
    "polybox",
    "cup",
    "cap",
    "startdot_frobenius",
]

KINDS = ("startdot", "enddot", "merge", "split", "sixv", "fourv", "polybox")


@dataclass(frozen=True)
class GeneratorKind:
    name: str
    i: int = 0
    j: int = 0
    orientation: str = "up"
    poly: Poly | None = None

    def __post_init__(self):
        if self.name not in KINDS:
            raise ValueError(f"unknown generator {self.name!r}")
        if self.name == "sixv" and self.orientation not in ("up", "down"):
            raise ValueError("six-valent orientation must be 'up' or 'down'")

    def __str__(self):
        if self.name == "sixv":
            return f"sixv({self.i},{self.orientation})"
        if self.name == "fourv":
            return f"fourv({self.i},{self.j})"
        if self.name == "polybox":
            return f"polybox({self.poly})"
        return f"{self.name}({self.i})"


def _check_color(n, i):
    if not 1 <= i <= n - 1:
        raise ValueError(f"color {i} out of range for ambient {n}")


def _certified(f: BimodMorphism) -> BimodMorphism:
    f._check_degrees()
    f.check_bimodule()
    return f


@lru_cache(maxsize=None)
def enddot(n: int, i: int) -> BimodMorphism:
    """B_i -> R of degree +1: f (x) g -> fg."""
    _check_color(n, i)
    one = Poly.one(n)
    return _certified(BimodMorphism(BSObject(n, (i,)), BSObject(n, ()), 1,
                                    {0: {0: one}, 1: {0: Poly.var(n, i)}}))


@lru_cache(maxsize=None)
def startdot(n: int, i: int) -> BimodMorphism:
    """R -> B_i of degree +1: 1 -> x_i (x) 1 - 1 (x) x_{i+1}."""
    _check_color(n, i)
    one = Poly.one(n)
    img = normal_form(BSObject(n, (i,)), [[Poly.var(n, i), one], (-1, [one, Poly.var(n, i + 1)])])
    return _certified(BimodMorphism(BSObject(n, ()), BSObject(n, (i,)), 1, {0: img.coeffs}))


def startdot_frobenius(n: int, i: int) -> BimodMorphism:
    """The same map from the Frobenius formula 1 -> (alpha (x) 1 + 1 (x) alpha) / 2."""
    _check_color(n, i)
    one = Poly.one(n)
    alpha = Poly.var(n, i) - Poly.var(n, i + 1)
    half = mpq(1, 2)
    img = normal_form(BSObject(n, (i,)), [(half, [alpha, one]), (half, [one, alpha])])
    return _certified(BimodMorphism(BSObject(n, ()), BSObject(n, (i,)), 1, {0: img.coeffs}))


@lru_cache(maxsize=None)
def merge(n: int, i: int) -> BimodMorphism:
    """B_i B_i -> B_i of degree -1: f1 (x) f2 (x) f3 -> f1 d_i(f2) (x) f3."""
    _check_color(n, i)
    one = Poly.one(n)
    cols = {1 | (b << 1): {b: one} for b in (0, 1)}
    return _certified(BimodMorphism(BSObject(n, (i, i)), BSObject(n, (i,)), -1, cols))


@lru_cache(maxsize=None)
def split(n: int, i: int) -> BimodMorphism:
    """B_i -> B_i B_i of degree -1: f (x) g -> f (x) 1 (x) g."""
    _check_color(n, i)
    one = Poly.one(n)
    cols = {b: {b << 1: one} for b in (0, 1)}
    return _certified(BimodMorphism(BSObject(n, (i,)), BSObject(n, (i, i)), -1, cols))


@lru_cache(maxsize=None)
def fourv(n: int, i: int, j: int) -> BimodMorphism:
    """B_i B_j -> B_j B_i for distant colors: 1 (x) 1 (x) 1 -> 1 (x) 1 (x) 1."""
    _check_color(n, i)
    _check_color(n, j)
    if abs(i - j) < 2:
        raise ValueError(f"four-valent vertex needs distant colors, got {i},{j}")
    zs = (Poly.one(n), Poly.var(n, i)), (Poly.one(n), Poly.var(n, j))
    cols = {}
    for b in range(4):
        p = zs[0][b & 1] * zs[1][b >> 1 & 1]
        cols[b] = basis_times_poly(n, (j, i), 0, p)
    return _certified(BimodMorphism(BSObject(n, (i, j)), BSObject(n, (j, i)), 0, cols))


@lru_cache(maxsize=None)
def polybox(n: int, p: Poly) -> BimodMorphism:
    """R -> R, multiplication by a homogeneous polynomial."""
    if p.n != n:
        raise ValueError("polynomial lives in the wrong ambient")
    R = BSObject(n, ())
    if not p.terms:
        return BimodMorphism(R, R, 0, {}, check=False)
    return BimodMorphism(R, R, p.degree(), {0: {0: p}})


@lru_cache(maxsize=None)
def sixv(n: int, i: int, orientation: str = "up") -> BimodMorphism:
    """Six-valent vertex, solved from its two anchor values.

    up:   B_i B_{i+1} B_i -> B_{i+1} B_i B_{i+1},
          1(x)x_i(x)1(x)1 -> (x_i+x_{i+1})(x)1(x)1(x)1 - 1(x)1(x)1(x)x_{i+2}
    down: B_{i+1} B_i B_{i+1} -> B_i B_{i+1} B_i,
          1(x)x_{i+2}(x)1(x)1 -> (x_{i+1}+x_{i+2})(x)1(x)1(x)1 - 1(x)1(x)1(x)x_i
    Both fix 1(x)1(x)1(x)1.  The degree-0 map space is one-dimensional, so the
    second anchor is a consistency check; with x_{i+1} in its last slot it has
    no solution.  The down anchor is the up anchor under x_k -> -x_{n+1-k}.
    """
    from .homsolve import hom_space_basis, kernel_combinations, solve_combination

    _check_color(n, i)
    _check_color(n, i + 1)
    one = Poly.one(n)
    if orientation == "up":
        src, tgt = (i, i + 1, i), (i + 1, i, i + 1)
    elif orientation == "down":
        src, tgt = (i + 1, i, i + 1), (i, i + 1, i)
    else:
        raise ValueError("orientation must be 'up' or 'down'")
    S, T = BSObject(n, src), BSObject(n, tgt)
    if orientation == "up":
        anchor_src_bits = 1  # 1 (x) x_i (x) 1 (x) 1
        anchor_img = normal_form(T, [[Poly.var(n, i) + Poly.var(n, i + 1), one, one, one],
                                     (-1, [one, one, one, Poly.var(n, i + 2)])])
    else:
        anchor_src_elem = normal_form(S, [[one, Poly.var(n, i + 2), one, one]])
        anchor_img = normal_form(T, [[Poly.var(n, i + 1) + Poly.var(n, i + 2), one, one, one],
                                     (-1, [one, one, one, Poly.var(n, i)])])
    basis = hom_space_basis(S, T, 0)
    # constraint vectors: evaluate each basis map on the anchor elements
    cands = []
    for f in basis:
        vec = {}
        for t, p in f.image(0).items():
            for e, co in p.terms.items():
                vec[("a0", t, e)] = co
        if orientation == "up":
            img = f.image(anchor_src_bits)
        else:
            img = f.apply(anchor_src_elem.coeffs)
        for t, p in img.items():
            for e, co in p.terms.items():
                vec[("a1", t, e)] = vec.get(("a1", t, e), 0) + co
        cands.append(vec)
    target = {("a0", 0, (0,) * n): mpq(1)}
    for t, p in anchor_img.coeffs.items():
        for e, co in p.terms.items():
            target[("a1", t, e)] = co
    coeffs = solve_combination(cands, target)
    if coeffs is None:
        raise CertificateError(f"six-valent anchors inconsistent for i={i}, n={n}")
    if kernel_combinations(cands):
        raise CertificateError(f"six-valent anchors do not determine the map for i={i}, n={n}")
    f = BimodMorphism(S, T, 0, {}, check=False)
    for c, g in zip(coeffs, basis):
        if c:
            f = f + g.scale(c)
    return _certified(BimodMorphism(S, T, 0, f.cols))


def cap(n: int, i: int) -> BimodMorphism:
    """B_i B_i -> R, degree 0."""
    return enddot(n, i).compose(merge(n, i))


def cup(n: int, i: int) -> BimodMorphism:
    """R -> B_i B_i, degree 0."""
    return split(n, i).compose(startdot(n, i))


def generator_morphism(kind: GeneratorKind, n: int) -> BimodMorphism:
    if kind.name == "startdot":
        return startdot(n, kind.i)
    if kind.name == "enddot":
        return enddot(n, kind.i)
    if kind.name == "merge":
        return merge(n, kind.i)
    if kind.name == "split":
        return split(n, kind.i)
    if kind.name == "sixv":
        return sixv(n, kind.i, kind.orientation)
    if kind.name == "fourv":
        return fourv(n, kind.i, kind.j)
    if kind.name == "polybox":
        return polybox(n, kind.poly)
    raise ValueError(kind.name)
