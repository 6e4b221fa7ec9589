"""Bounded complexes of Bott-Samelson bimodules with a strictly associative tensor.

A complex is an ordered list of summands (BSObject, homological degree) and a
differential stored as a sparse matrix {(target index, source index): map}.
Tensor products order the summand pairs lexicographically, which makes them
associative on the nose.  The Koszul rule puts the sign (-1)^(|g| a) on
f (x) g at a pair whose first factor sits in homological degree a.

Graded maps carry a homological degree k and a quantum degree q; their
differential is d(h) = d_T h - (-1)^k h d_S.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from gmpy2 import mpq

from . import homsolve, linalg
from .bimod import BSObject, boxtimes, far_commute, hcomp, identity, shift_morphism

__all__ = [
    "Complex",
    "GradedMap",
    "one_term",
    "tensor_complexes",
    "tensor_maps",
    "cone",
    "differential_of",
    "hom_basis",
    "hom_complex_cohomology_dims",
    "solve_homotopy",
    "solve_homotopy_equivalence",
    "HomotopyEquivalence",
    "iso_equivalence",
    "identity_equivalence",
    "compose_equivalences",
    "whisker_equivalence",
    "shift_equivalence",
    "NotClosedError",
    "closed_maps",
    "noncohomologous",
    "whisker_left",
    "whisker_right",
    "shift_complex",
    "shift_map",
    "transport_complex",
    "transport_map",
    "swap_complexes",
    "qshift_map",
    "random_complex",
    "associativity_holds",
    "degree_first_order",
]


class NotClosedError(ValueError):
    pass


class Complex:
    __slots__ = ("n", "summands", "d")

    def __init__(self, n: int, summands, d=None, check=True):
        self.n = n
        self.summands = tuple((obj, int(a)) for obj, a in summands)
        for obj, _ in self.summands:
            if obj.n != n:
                raise ValueError(f"summand {obj} not in ambient {n}")
        self.d = {k: f for k, f in (d or {}).items() if not f.is_zero()}
        if check:
            self._check_shape()

    def _check_shape(self):
        for (j, i), f in self.d.items():
            (sj, aj), (si, ai) = self.summands[j], self.summands[i]
            if aj != ai + 1:
                raise ValueError(f"differential entry {i}->{j} joins degrees {ai} and {aj}")
            if f.source != si or f.target != sj or f.degree != 0:
                raise ValueError(f"differential entry {i}->{j} has the wrong type")

    def __len__(self):
        return len(self.summands)

    def obj(self, i):
        return self.summands[i][0]

    def hdeg(self, i):
        return self.summands[i][1]

    def __eq__(self, other):
        """Structural equality: same ordered summands and same differential."""
        if self is other:
            return True
        return (isinstance(other, Complex) and self.n == other.n and self.summands == other.summands
                and self.d.keys() == other.d.keys()
                and all(self.d[k] == other.d[k] for k in self.d))

    def __hash__(self):
        return hash((self.n, self.summands))

    def identity(self) -> "GradedMap":
        return GradedMap(self, self, 0, 0, {(i, i): identity(o) for i, (o, _) in enumerate(self.summands)})

    def differential(self) -> "GradedMap":
        return GradedMap(self, self, 1, 0, self.d)

    def d_squared_zero(self) -> bool:
        return self.differential().compose(self.differential()).is_zero()

    def qshift(self, j: int) -> "Complex":
        objs = [(o.shift(j), a) for o, a in self.summands]
        d = {k: f.with_objects(f.source.shift(j), f.target.shift(j)) for k, f in self.d.items()}
        return Complex(self.n, objs, d, check=False)

    def hshift(self, k: int) -> "Complex":
        """Homological shift by k with differential sign (-1)^k."""
        objs = [(o, a + k) for o, a in self.summands]
        s = -1 if k % 2 else 1
        return Complex(self.n, objs, {key: f.scale(s) for key, f in self.d.items()}, check=False)

    def hdegrees(self):
        return sorted({a for _, a in self.summands})

    def render(self) -> str:
        lines = [f"complex in ambient {self.n} with {len(self)} summands"]
        for i, (o, a) in enumerate(self.summands):
            lines.append(f"  [{i}] {o} @ {a}")
        for (j, i), f in sorted(self.d.items()):
            lines.append(f"  d[{j},{i}]: {len(f.cols)} nonzero columns")
        return "\n".join(lines)

    def __repr__(self):
        body = ", ".join(f"{o}@{a}" for o, a in self.summands)
        return f"<Complex n={self.n}: {body}>"


def one_term(obj: BSObject, a: int = 0) -> Complex:
    return Complex(obj.n, [(obj, a)], {})


@dataclass
class GradedMap:
    """A bihomogeneous map of complexes: homological degree k, quantum degree q."""

    source: Complex
    target: Complex
    k: int
    q: int
    comps: dict

    def __post_init__(self):
        self.comps = {key: f for key, f in self.comps.items() if not f.is_zero()}

    def check(self):
        for (j, i), f in self.comps.items():
            if self.target.hdeg(j) != self.source.hdeg(i) + self.k:
                raise ValueError(f"component {i}->{j} has the wrong homological degree")
            if f.source != self.source.obj(i) or f.target != self.target.obj(j) or f.degree != self.q:
                raise ValueError(f"component {i}->{j} has the wrong type")
        return self

    def is_zero(self):
        return not self.comps

    def _compatible(self, other):
        if self.source != other.source or self.target != other.target:
            raise ValueError("maps between different complexes")
        if (self.k, self.q) != (other.k, other.q) and self.comps and other.comps:
            raise ValueError(f"degree mismatch ({self.k},{self.q}) vs ({other.k},{other.q})")

    def __add__(self, other):
        self._compatible(other)
        comps = dict(self.comps)
        for key, f in other.comps.items():
            comps[key] = comps[key] + f if key in comps else f
        k, q = (self.k, self.q) if self.comps else (other.k, other.q)
        return GradedMap(self.source, self.target, k, q, comps)

    def scale(self, c):
        return GradedMap(self.source, self.target, self.k, self.q,
                         {key: f.scale(c) for key, f in self.comps.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        return self.scale(c)

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self o other."""
        if other.target != self.source:
            raise ValueError("cannot compose graded maps: middle complexes differ")
        by_src: dict = {}
        for (j, m), f in self.comps.items():
            by_src.setdefault(m, []).append((j, f))
        comps: dict = {}
        for (m, i), g in other.comps.items():
            for j, f in by_src.get(m, ()):
                h = f.compose(g)
                if h.is_zero():
                    continue
                comps[(j, i)] = comps[(j, i)] + h if (j, i) in comps else h
        return GradedMap(other.source, self.target, self.k + other.k, self.q + other.q, comps)

    def __eq__(self, other):
        if not isinstance(other, GradedMap):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        if self.comps.keys() != other.comps.keys():
            return False
        return all(self.comps[key].cols == other.comps[key].cols for key in self.comps)

    def differential(self) -> "GradedMap":
        return differential_of(self)

    def is_closed(self) -> bool:
        return differential_of(self).is_zero()

    def flatten(self):
        return homsolve.flatten({key: f for key, f in self.comps.items()})

    def render(self) -> str:
        lines = [f"graded map of degree ({self.k},{self.q})"]
        for (j, i), f in sorted(self.comps.items()):
            lines.append(f"  [{j}<-{i}] " + f.render().replace("\n", "\n    "))
        return "\n".join(lines)


def _zero_map(S, T, k, q):
    return GradedMap(S, T, k, q, {})


def differential_of(h: GradedMap) -> GradedMap:
    dT = h.target.differential()
    dS = h.source.differential()
    a = dT.compose(h)
    b = h.compose(dS)
    sign = -1 if h.k % 2 == 0 else 1
    out = a + b.scale(sign) if b.comps else a
    out.k, out.q = h.k + 1, h.q
    return out


# ---------------------------------------------------------------------------
# tensor products

def _pair_objects(mode, m, n, A: BSObject, B: BSObject):
    if mode == "hcomp":
        return A.concat(B)
    return boxtimes(A, B, m, n)


def _pair_maps(mode, m, n, f, g):
    if mode == "hcomp":
        return hcomp(f, g)
    return boxtimes(f, g, m, n)


def tensor_complexes(X: Complex, Y: Complex, mode: str = "hcomp", m: int | None = None,
                     n: int | None = None, order=None) -> Complex:
    """X o_1 Y (mode 'hcomp') or X boxtimes Y (mode 'box', ambients m and n).

    ``order`` overrides the summand order by a key function of the pair
    (i, j, a_i + b_j); only used to demonstrate that other orders are not
    associative on the nose.
    """
    if mode not in ("hcomp", "box"):
        raise ValueError(f"unknown tensor mode {mode!r}")
    if mode == "hcomp":
        if X.n != Y.n:
            raise ValueError(f"ambient mismatch {X.n} vs {Y.n}")
        m = n = None
        amb = X.n
    else:
        m = X.n if m is None else m
        n = Y.n if n is None else n
        if X.n != m or Y.n != n:
            raise ValueError("ambient mismatch in boxtimes")
        amb = m + n
    pairs = [(i, j) for i in range(len(X)) for j in range(len(Y))]
    if order is not None:
        pairs.sort(key=lambda p: order(p[0], p[1], X.hdeg(p[0]) + Y.hdeg(p[1])))
    index = {p: t for t, p in enumerate(pairs)}
    summands = [(_pair_objects(mode, m, n, X.obj(i), Y.obj(j)), X.hdeg(i) + Y.hdeg(j)) for i, j in pairs]
    d = {}
    for (i2, i), f in X.d.items():
        for j in range(len(Y)):
            d[(index[(i2, j)], index[(i, j)])] = _pair_maps(mode, m, n, f, identity(Y.obj(j)))
    for (j2, j), g in Y.d.items():
        for i in range(len(X)):
            h = _pair_maps(mode, m, n, identity(X.obj(i)), g)
            d[(index[(i, j2)], index[(i, j)])] = h.scale(-1) if X.hdeg(i) % 2 else h
    return Complex(amb, summands, d, check=False)


def tensor_maps(f: GradedMap, g: GradedMap, mode: str = "hcomp", m=None, n=None) -> GradedMap:
    """f (x) g with the Koszul sign (-1)^(|g| a_i) on the source pair (i, j)."""
    S = tensor_complexes(f.source, g.source, mode, m, n)
    T = tensor_complexes(f.target, g.target, mode, m, n)
    if mode == "box":
        m = f.source.n if m is None else m
        n = g.source.n if n is None else n
    nS2, nT2 = len(g.source), len(g.target)
    comps = {}
    for (i2, i), a in f.comps.items():
        sign_flip = (g.k * f.source.hdeg(i)) % 2
        for (j2, j), b in g.comps.items():
            h = _pair_maps(mode, m, n, a, b)
            if sign_flip:
                h = h.scale(-1)
            comps[(i2 * nT2 + j2, i * nS2 + j)] = h
    return GradedMap(S, T, f.k + g.k, f.q + g.q, comps)


def whisker_left(X: Complex, f: GradedMap, mode="hcomp", m=None, n=None) -> GradedMap:
    return tensor_maps(X.identity(), f, mode, m, n)


def whisker_right(f: GradedMap, Y: Complex, mode="hcomp", m=None, n=None) -> GradedMap:
    return tensor_maps(f, Y.identity(), mode, m, n)


def shift_complex(X: Complex, a: int, c: int) -> Complex:
    """Apply the variable/color shift j_{a|c} to every summand and differential entry."""
    objs = [(BSObject(X.n + a + c, tuple(i + a for i in o.word), o.qshift), h) for o, h in X.summands]
    d = {k: shift_morphism(f, a, c) for k, f in X.d.items()}
    return Complex(X.n + a + c, objs, d, check=False)


def shift_map(f: GradedMap, a: int, c: int) -> GradedMap:
    return GradedMap(shift_complex(f.source, a, c), shift_complex(f.target, a, c), f.k, f.q,
                     {k: shift_morphism(g, a, c) for k, g in f.comps.items()})


def shift_equivalence(e: "HomotopyEquivalence", a: int, c: int) -> "HomotopyEquivalence":
    return HomotopyEquivalence(shift_map(e.f, a, c), shift_map(e.g, a, c),
                               shift_map(e.h_source, a, c), shift_map(e.h_target, a, c))


def transport_complex(X: Complex, fn) -> Complex:
    """Apply a functor ``fn`` on morphisms (that also acts on objects) summand-wise."""
    objs = []
    for o, a in X.summands:
        objs.append((fn(identity(o)).source, a))
    d = {k: fn(f) for k, f in X.d.items()}
    return Complex(objs[0][0].n if objs else X.n, objs, d, check=False)


def transport_map(f: GradedMap, fn, S=None, T=None) -> GradedMap:
    S = transport_complex(f.source, fn) if S is None else S
    T = transport_complex(f.target, fn) if T is None else T
    return GradedMap(S, T, f.k, f.q, {k: fn(g) for k, g in f.comps.items()})


def swap_complexes(X: Complex, Y: Complex) -> GradedMap:
    """Isomorphism X o Y -> Y o X for complexes with pairwise distant colors.

    Components are four-valent braidings of the summand words with the
    Koszul sign (-1)^(a b).
    """
    T = tensor_complexes(Y, X)
    S = tensor_complexes(X, Y)
    ny, nx = len(Y), len(X)
    comps = {}
    for i, (u, a) in enumerate(X.summands):
        for j, (v, b) in enumerate(Y.summands):
            f = far_commute(X.n, u.word, v.word)
            f = f.with_objects(S.obj(i * ny + j), T.obj(j * nx + i))
            comps[(j * nx + i, i * ny + j)] = f.scale(-1) if (a * b) % 2 else f
    return GradedMap(S, T, 0, 0, comps)


def qshift_map(f: GradedMap, s: int) -> GradedMap:
    """The same map between the quantum-shifted complexes."""
    S, T = f.source.qshift(s), f.target.qshift(s)
    comps = {key: g.with_objects(S.obj(key[1]), T.obj(key[0])) for key, g in f.comps.items()}
    return GradedMap(S, T, f.k, f.q, comps)


# ---------------------------------------------------------------------------
# cones

def cone(f: GradedMap) -> Complex:
    """Cone of a closed degree-(0,0) map X -> Y: X[1] (x) Y with d = [[-d_X, 0], [f, d_Y]]."""
    if f.k != 0 or (f.q != 0 and f.comps):
        raise ValueError("cone needs a map of bidegree (0,0)")
    if not f.is_closed():
        raise NotClosedError("cone of a map that is not a chain map")
    X, Y = f.source, f.target
    nx = len(X)
    objs = [(o, a - 1) for o, a in X.summands] + list(Y.summands)
    d = {}
    for (j, i), g in X.d.items():
        d[(j, i)] = g.scale(-1)
    for (j, i), g in Y.d.items():
        d[(j + nx, i + nx)] = g
    for (j, i), g in f.comps.items():
        d[(j + nx, i)] = g
    return Complex(X.n, objs, d, check=False)


# ---------------------------------------------------------------------------
# morphism complexes

_HOM_CACHE: dict = {}


def hom_basis(S: Complex, T: Complex, k: int, q: int = 0):
    """Basis of bidegree-(k, q) graded maps S -> T as a list of GradedMaps."""
    out = []
    for i, (so, a) in enumerate(S.summands):
        for j, (to, b) in enumerate(T.summands):
            if b - a != k:
                continue
            for f in homsolve.hom_space_basis(so, to, q):
                out.append(GradedMap(S, T, k, q, {(j, i): f}))
    return out


def _vectors(maps):
    return [m.flatten() for m in maps]


def _rank(vecs):
    ech = linalg.Echelon(len(vecs))
    rows = {}
    for c, v in enumerate(vecs):
        for key, x in v.items():
            rows.setdefault(key, {})[c] = x
    r = 0
    for key in sorted(rows, key=repr):
        if ech.add(rows[key]):
            r += 1
    return r


def hom_complex_cohomology_dims(A: Complex, B: Complex, qdeg: int, hwindow):
    """dim H^k of Hom(A, B) in quantum degree qdeg, for k in hwindow."""
    ranks = {}
    dims = {}

    def dim_c(k):
        if k not in dims:
            dims[k] = len(hom_basis(A, B, k, qdeg))
        return dims[k]

    def rank_d(k):
        if k not in ranks:
            basis = hom_basis(A, B, k, qdeg)
            ranks[k] = _rank(_vectors([differential_of(b) for b in basis])) if basis else 0
        return ranks[k]

    return [dim_c(k) - rank_d(k) - rank_d(k - 1) for k in hwindow]


def solve_homotopy(delta: GradedMap, check_closed: bool = True):
    """Find h of bidegree (k-1, q) with d(h) = delta, or None."""
    if check_closed and not delta.is_closed():
        raise NotClosedError("the right-hand side is not closed")
    S, T = delta.source, delta.target
    basis = hom_basis(S, T, delta.k - 1, delta.q)
    if delta.is_zero():
        return _zero_map(S, T, delta.k - 1, delta.q)
    if not basis:
        return None
    coeffs = homsolve.solve_combination([differential_of(b).flatten() for b in basis], delta.flatten())
    if coeffs is None:
        return None
    h = _zero_map(S, T, delta.k - 1, delta.q)
    for c, b in zip(coeffs, basis):
        if c:
            h = h + b.scale(c)
    if differential_of(h) != delta:
        raise ArithmeticError("homotopy solution failed re-substitution")
    return h


def closed_maps(S: Complex, T: Complex, k: int = 0, q: int = 0):
    """(closed basis, exact span vectors) for bidegree (k, q)."""
    basis = hom_basis(S, T, k, q)
    if not basis:
        return [], []
    cols = [differential_of(b).flatten() for b in basis]
    rel = homsolve.kernel_combinations(cols)
    closed = []
    for vec in rel:
        g = _zero_map(S, T, k, q)
        for idx, c in vec.items():
            g = g + basis[idx].scale(c)
        closed.append(g)
    lower = hom_basis(S, T, k - 1, q)
    exact = [differential_of(b) for b in lower]
    return closed, exact


def noncohomologous(closed, exact):
    """Closed maps whose classes form a basis of their span modulo the exact ones."""
    ech = linalg.Echelon(0)
    keys: dict = {}

    def row(vec):
        r = {}
        for key, x in vec.items():
            if key not in keys:
                keys[key] = len(keys)
            r[keys[key]] = x
        return r

    for e in exact:
        ech.add(row(e.flatten()))
    out = []
    for g in closed:
        if ech.add(row(g.flatten())):
            out.append(g)
    return out


@dataclass
class HomotopyEquivalence:
    f: GradedMap
    g: GradedMap
    h_source: GradedMap
    h_target: GradedMap

    def verify(self) -> bool:
        X, Y = self.f.source, self.f.target
        return (self.f.is_closed() and self.g.is_closed()
                and differential_of(self.h_source) == self.g.compose(self.f) - X.identity()
                and differential_of(self.h_target) == self.f.compose(self.g) - Y.identity())


def iso_equivalence(f: GradedMap, g: GradedMap) -> HomotopyEquivalence:
    """An isomorphism with its exact inverse, as an equivalence with zero homotopies."""
    X, Y = f.source, f.target
    return HomotopyEquivalence(f, g, _zero_map(X, X, -1, 0), _zero_map(Y, Y, -1, 0))


def identity_equivalence(X: Complex) -> HomotopyEquivalence:
    return iso_equivalence(X.identity(), X.identity())


def compose_equivalences(*es: HomotopyEquivalence) -> HomotopyEquivalence:
    """The composite of equivalences applied left to right."""
    out = es[0]
    for e in es[1:]:
        f = e.f.compose(out.f)
        g = out.g.compose(e.g)
        hs = out.g.compose(e.h_source).compose(out.f) + out.h_source
        ht = e.f.compose(out.h_target).compose(e.g) + e.h_target
        out = HomotopyEquivalence(f, g, hs, ht)
    return out


def whisker_equivalence(left: Complex | None, e: HomotopyEquivalence,
                        right: Complex | None) -> HomotopyEquivalence:
    """id_left (x) e (x) id_right; homotopies are whiskered with the Koszul rule."""
    def w(g):
        if left is not None:
            g = tensor_maps(left.identity(), g)
        if right is not None:
            g = tensor_maps(g, right.identity())
        return g
    return HomotopyEquivalence(w(e.f), w(e.g), w(e.h_source), w(e.h_target))


def _identity_defect(gf: GradedMap, X: Complex):
    """Solve d(h) = gf - c id for (c, h)."""
    basis = hom_basis(X, X, -1, 0)
    cols = [differential_of(b).flatten() for b in basis]
    cols.append(X.identity().flatten())
    coeffs = homsolve.solve_combination(cols, gf.flatten())
    if coeffs is None:
        return None, None
    c = coeffs[-1]
    h = _zero_map(X, X, -1, 0)
    for a, b in zip(coeffs[:-1], basis):
        if a:
            h = h + b.scale(a)
    return c, h


def solve_homotopy_equivalence(X: Complex, Y: Complex, f: GradedMap | None = None, seed: int = 0,
                               attempts: int = 8):
    """Search for a homotopy equivalence X -> Y; returns HomotopyEquivalence or None.

    When ``f`` is given it is used as the forward map.  Otherwise closed,
    non-exact candidates are tried: the first basis class, then seeded random
    combinations of classes.
    """
    rng = random.Random(seed)
    if f is not None:
        return _equivalence_from_map(f)
    if f is None:
        cf, ef = closed_maps(X, Y)
        fs = noncohomologous(cf, ef)
        if not fs:
            return None
    else:
        fs = [f]
    cg, eg = closed_maps(Y, X)
    gs = noncohomologous(cg, eg)
    if not gs:
        return None
    for attempt in range(attempts):
        if attempt and len(fs) == 1 and len(gs) == 1:
            break
        cand_f = fs[0] if attempt == 0 or len(fs) == 1 else _random_combination(fs, rng)
        cand_g = gs[0] if attempt == 0 or len(gs) == 1 else _random_combination(gs, rng)
        c, hX = _identity_defect(cand_g.compose(cand_f), X)
        if not c:
            continue
        cand_g = cand_g.scale(1 / c)
        hX = hX.scale(1 / c)
        hY = solve_homotopy(cand_f.compose(cand_g) - Y.identity(), check_closed=False)
        if hY is None:
            continue
        eq = HomotopyEquivalence(cand_f, cand_g, hX, hY)
        if not eq.verify():
            raise ArithmeticError("homotopy equivalence failed verification")
        return eq
    return None


def _equivalence_from_map(f: GradedMap):
    """Complete f to an equivalence: solve g f - id = d(h) jointly (linear in g, h)."""
    X, Y = f.source, f.target
    gs, _ = closed_maps(Y, X, 0, -f.q)
    hs = hom_basis(X, X, -1, 0)
    cols = [g.compose(f).flatten() for g in gs]
    cols += [differential_of(h).scale(-1).flatten() for h in hs]
    coeffs = homsolve.solve_combination(cols, X.identity().flatten())
    if coeffs is None:
        return None
    g = _zero_map(Y, X, 0, -f.q)
    hX = _zero_map(X, X, -1, 0)
    for c, b in zip(coeffs[:len(gs)], gs):
        if c:
            g = g + b.scale(c)
    for c, b in zip(coeffs[len(gs):], hs):
        if c:
            hX = hX + b.scale(c)
    g.k, g.q = 0, -f.q
    hX.k, hX.q = -1, 0
    hY = solve_homotopy(f.compose(g) - Y.identity(), check_closed=False)
    if hY is None:
        return None
    eq = HomotopyEquivalence(f, g, hX, hY)
    if not eq.verify():
        raise ArithmeticError("homotopy equivalence failed verification")
    return eq


def _random_combination(maps, rng):
    out = maps[0].scale(0)
    for g in maps:
        out = out + g.scale(mpq(rng.randint(-3, 3)))
    if out.is_zero():
        out = maps[0]
    return out


# ---------------------------------------------------------------------------
# random complexes and the associativity check

def random_complex(rng: random.Random, n: int, max_len: int = 3, max_word: int = 2) -> Complex:
    """A seeded random complex of at most ``max_len`` summands in ambient n.

    Summands sit in consecutive homological degrees; each differential entry is
    a random integer combination of a degree-0 basis, dropped if d^2 would fail.
    """
    from .homsolve import hom_space_basis

    length = rng.randint(1, max_len)
    colors = list(range(1, n))
    start = rng.randint(-1, 1)
    objs = []
    for t in range(length):
        k = rng.randint(0, max_word) if colors else 0
        word = tuple(rng.choice(colors) for _ in range(k))
        objs.append((BSObject(n, word, rng.randint(-2, 2)), start + t))
    d = {}
    for t in range(length - 1):
        basis = hom_space_basis(objs[t][0], objs[t + 1][0], 0)
        if not basis:
            continue
        f = None
        for b in basis:
            c = mpq(rng.randint(-2, 2))
            f = b.scale(c) if f is None else f + b.scale(c)
        if f.is_zero():
            continue
        prev = d.get((t, t - 1))
        if prev is not None and not f.compose(prev).is_zero():
            continue
        d[(t + 1, t)] = f
    return Complex(n, objs, d)


def associativity_holds(X: Complex, Y: Complex, Z: Complex, mode: str = "hcomp", order=None) -> bool:
    """(X (x) Y) (x) Z == X (x) (Y (x) Z) structurally: same summand list, same differential."""
    if mode == "hcomp":
        left = tensor_complexes(tensor_complexes(X, Y, order=order), Z, order=order)
        right = tensor_complexes(X, tensor_complexes(Y, Z, order=order), order=order)
    else:
        a, b, c = X.n, Y.n, Z.n
        left = tensor_complexes(tensor_complexes(X, Y, "box", a, b, order=order), Z, "box", a + b, c, order=order)
        right = tensor_complexes(X, tensor_complexes(Y, Z, "box", b, c, order=order), "box", a, b + c, order=order)
    return left == right


def degree_first_order(i, j, deg):
    """Summands sorted by total homological degree first; not associative on the nose."""
    return (deg, i, j)
