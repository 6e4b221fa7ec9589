"""Naturality defects of slide maps, slide homotopies and their higher analogues.

For f = f_1 [x] f_2 : Y -> Y' the defect is the closed map

    (phi(f) o id_X) . slide_Y  -  slide_{Y'} . (id_X o psi(f))

where psi(f) = f_1 [x] f_2 and phi(f) = f_2 [x] f_1.  A slide homotopy h_f
has d(h_f) equal to the defect.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from gmpy2 import mpq

from . import generators as G
from .bimod import BSObject, BimodMorphism, boxtimes, hcomp, identity, shift_morphism
from .complex import (Complex, GradedMap, HomotopyEquivalence, differential_of, one_term,
                      shift_complex, shift_map, solve_homotopy, solve_homotopy_equivalence,
                      swap_complexes, tensor_complexes, tensor_maps)
from .homsolve import hom_space_basis
from .poly import Poly
from .rouquier import BraidWord, cabled_crossing, cabled_word, rouquier_of_word
from .slide import slide_for_word

__all__ = [
    "BoxMorphism",
    "naturality_defect",
    "solve_slide_homotopy",
    "generator_cases",
    "h_vcomp",
    "h_hcomp",
    "h_coxeter_assembly",
    "h_parabolic_embed",
    "embed_box",
    "higher_homotopy",
    "lemma_instances",
    "random_box_morphism",
    "ConeSlide",
    "cone_slide",
    "BarElement",
    "TauTable",
    "tau_base",
    "tau_extend",
    "tau_generators",
    "star",
    "a_infinity_pair",
    "dot_order_homotopies",
    "UnsolvableError",
]


class UnsolvableError(ArithmeticError):
    """An exact antiderivative that must exist was not found."""


# ---------------------------------------------------------------------------
# morphisms of D_m [x] D_n

def _as_morphism(x, amb):
    if x is None:
        return identity(BSObject(amb, ()))
    if isinstance(x, BSObject):
        return identity(x)
    if isinstance(x, tuple):
        return identity(BSObject(amb, x))
    return x


def _unshift(f: BimodMorphism) -> BimodMorphism:
    if f.source.qshift or f.target.qshift:
        return f.with_objects(f.source.unshifted(), f.target.unshifted())
    return f


@dataclass(eq=False)
class BoxMorphism:
    """f_1 [x] f_2 with f_1 in D_m, f_2 in D_n, both between unshifted words."""

    m: int
    n: int
    f1: BimodMorphism
    f2: BimodMorphism
    name: str = ""

    def __post_init__(self):
        self.f1 = _unshift(_as_morphism(self.f1, self.m))
        self.f2 = _unshift(_as_morphism(self.f2, self.n))
        if self.f1.n != self.m or self.f2.n != self.n:
            raise ValueError("factors live in the wrong ambients")

    @classmethod
    def right(cls, f, m, n, name=""):
        return cls(m, n, None, f, name)

    @classmethod
    def left(cls, f, m, n, name=""):
        return cls(m, n, f, None, name)

    @classmethod
    def ident(cls, m, n, Y1=(), Y2=()):
        return cls(m, n, tuple(Y1), tuple(Y2), "id")

    @property
    def source_words(self):
        return self.f1.source.word, self.f2.source.word

    @property
    def target_words(self):
        return self.f1.target.word, self.f2.target.word

    @property
    def degree(self) -> int:
        return self.f1.degree + self.f2.degree

    @property
    def psi(self) -> BimodMorphism:
        return boxtimes(self.f1, self.f2, self.m, self.n)

    @property
    def phi(self) -> BimodMorphism:
        return boxtimes(self.f2, self.f1, self.n, self.m)

    def compose(self, other: "BoxMorphism") -> "BoxMorphism":
        """self after other."""
        return BoxMorphism(self.m, self.n, self.f1.compose(other.f1), self.f2.compose(other.f2),
                           f"{self.name}.{other.name}")

    def whisker(self, W=((), ()), Z=((), ())) -> "BoxMorphism":
        """id_W o self o id_Z, factor-wise."""
        W1, W2 = W
        Z1, Z2 = Z
        f1 = hcomp(hcomp(BSObject(self.m, tuple(W1)), self.f1), BSObject(self.m, tuple(Z1)))
        f2 = hcomp(hcomp(BSObject(self.n, tuple(W2)), self.f2), BSObject(self.n, tuple(Z2)))
        return BoxMorphism(self.m, self.n, f1, f2, f"W{W}.{self.name}.Z{Z}")

    def is_zero(self) -> bool:
        return self.psi.is_zero()

    def __repr__(self):
        return f"<BoxMorphism ({self.m},{self.n}) {self.name or '?'}: {self.source_words} -> {self.target_words}>"


def _crossing(m, n):
    return cabled_crossing(m, n)


def _one(obj):
    return one_term(obj)


def _box_map(f: BimodMorphism, q) -> GradedMap:
    return GradedMap(_one(f.source), _one(f.target), 0, q, {(0, 0): f})


def _slide(m, n, words):
    return slide_for_word(words[0], words[1], m, n).chain


def phi_whisker(f: BoxMorphism) -> GradedMap:
    """phi(f) o id_X."""
    return tensor_maps(_box_map(f.phi, f.degree), _crossing(f.m, f.n).identity())


def psi_whisker(f: BoxMorphism) -> GradedMap:
    """id_X o psi(f)."""
    return tensor_maps(_crossing(f.m, f.n).identity(), _box_map(f.psi, f.degree))


def naturality_defect(f: BoxMorphism) -> GradedMap:
    lhs = phi_whisker(f).compose(_slide(f.m, f.n, f.source_words))
    rhs = _slide(f.m, f.n, f.target_words).compose(psi_whisker(f))
    out = lhs - rhs
    out.k, out.q = 0, f.degree
    return out


def solve_slide_homotopy(f: BoxMorphism) -> GradedMap:
    """h with d(h) = naturality_defect(f), checked exactly."""
    delta = naturality_defect(f)
    h = solve_homotopy(delta)
    if h is None:
        raise UnsolvableError(f"no slide homotopy for {f!r}")
    return h


def generator_cases():
    """(name, BoxMorphism, defect expected to vanish) at the minimal strand counts."""
    x = lambda n, i: Poly.var(n, i)  # noqa: E731
    return [
        ("polybox", BoxMorphism.left(G.polybox(1, x(1, 1)), 1, 1, "polybox(x1)"), False),
        ("startdot", BoxMorphism.right(G.startdot(2, 1), 1, 2, "startdot"), False),
        ("enddot", BoxMorphism.right(G.enddot(2, 1), 1, 2, "enddot"), False),
        ("merge", BoxMorphism.right(G.merge(2, 1), 1, 2, "merge"), True),
        ("split", BoxMorphism.right(G.split(2, 1), 1, 2, "split"), True),
        ("sixv-up", BoxMorphism.right(G.sixv(3, 1, "up"), 1, 3, "sixv-up"), False),
        ("sixv-down", BoxMorphism.right(G.sixv(3, 1, "down"), 1, 3, "sixv-down"), True),
        ("fourv", BoxMorphism.right(G.fourv(4, 1, 3), 1, 4, "fourv"), True),
    ]


# ---------------------------------------------------------------------------
# composition lemmas

def h_vcomp(h_fp: GradedMap, fp: BoxMorphism, h_f: GradedMap, f: BoxMorphism) -> GradedMap:
    """Homotopy for fp . f:  h_{fp} . (id o psi(f))  +  (phi(fp) o id) . h_f."""
    out = h_fp.compose(psi_whisker(f)) + phi_whisker(fp).compose(h_f)
    out.k, out.q = -1, f.degree + fp.degree
    return out


def _right_only(words):
    if words[0]:
        raise ValueError("the whiskering lemma is implemented for objects of the second factor")


def h_hcomp(h_f: GradedMap, f: BoxMorphism, W=(), Z=()) -> GradedMap:
    """Homotopy for id_W o f o id_Z (W, Z words of D_n, first factor trivial).

    (id_{phi(W) phi(Y')} o slide_Z) . (id_{phi(W)} o h_f o id_Z) . (slide_W o id_{Y Z})
    """
    _right_only(f.source_words)
    _right_only(f.target_words)
    m, n = f.m, f.n
    W, Z = tuple(W), tuple(Z)
    Y, Yp = f.source_words[1], f.target_words[1]
    N = m + n
    psi_o = lambda w: BSObject(N, tuple(c + m for c in w))  # noqa: E731
    phi_o = lambda w: BSObject(N, tuple(w))  # noqa: E731
    inner = h_f
    if W:
        inner = tensor_maps(_one(phi_o(W)).identity(), inner)
    if Z:
        inner = tensor_maps(inner, _one(psi_o(Z)).identity())
    out = inner
    if W:
        sW = _slide(m, n, ((), W))
        pre = tensor_maps(sW, _one(psi_o(Y + Z)).identity()) if (Y + Z) else sW
        out = out.compose(pre)
    if Z:
        sZ = _slide(m, n, ((), Z))
        post = tensor_maps(_one(phi_o(W + Yp)).identity(), sZ) if (W + Yp) else sZ
        out = post.compose(out)
    out.k, out.q = -1, f.degree
    return out


def _coxeter_steps(m, n, Y):
    """Whiskered shifted Coxeter slides, in the order they are applied, for 1_m [x] Y."""
    base = slide_for_word((), Y, 1, n).chain
    factors = [shift_complex(cabled_crossing(1, n), k, m - 1 - k) for k in range(m)]
    N = m + n
    steps = []
    for k in range(m - 1, -1, -1):
        s = shift_map(base, k, m - 1 - k)
        steps.append((k, _whisk(_prod(factors[:k], N), s, _prod(factors[k + 1:], N))))
    return steps


def _whisk(left, g, right):
    if left is not None:
        g = tensor_maps(left.identity(), g)
    if right is not None:
        g = tensor_maps(g, right.identity())
    return g


def _prod(cs, N):
    if not cs:
        return None
    out = cs[0]
    for c in cs[1:]:
        out = tensor_complexes(out, c)
    return out


def _chain(maps):
    out = maps[0]
    for g in maps[1:]:
        out = g.compose(out)
    return out


def coxeter_stack_slide(m, n, Y) -> GradedMap:
    """slide_{1_m, Y} as a stack of Coxeter slides of the whole word Y."""
    return _chain([s for _, s in _coxeter_steps(m, n, tuple(Y))])


def h_coxeter_assembly(h_f: GradedMap, f: BoxMorphism, m: int) -> GradedMap:
    """Homotopy for 1_m [x] f_2 through X_{m,n} from h at m = 1 (Leibniz sum over factors)."""
    if f.m != 1:
        raise ValueError("expects a homotopy computed at m = 1")
    _right_only(f.source_words)
    n = f.n
    N = m + n
    Y, Yp = f.source_words[1], f.target_words[1]
    steps_Y = _coxeter_steps(m, n, Y)
    steps_Yp = _coxeter_steps(m, n, Yp)
    factors = [shift_complex(cabled_crossing(1, n), k, m - 1 - k) for k in range(m)]
    total = None
    for t, (k, _) in enumerate(steps_Y):
        term = _whisk(_prod(factors[:k], N), shift_map(h_f, k, m - 1 - k), _prod(factors[k + 1:], N))
        if t:
            term = term.compose(_chain([s for _, s in steps_Y[:t]]))
        if t + 1 < m:
            term = _chain([s for _, s in steps_Yp[t + 1:]]).compose(term)
        total = term if total is None else total + term
    total.k, total.q = -1, f.degree
    return total


def embed_box(f: BoxMorphism, l: int, n: int) -> BoxMorphism:
    """1_1 [x] (1_l [x] f_2 [x] 1_{n-k-l}) for f at (1, k)."""
    k = f.n
    if f.m != 1 or not 0 <= l <= n - k:
        raise ValueError("bad embedding")
    return BoxMorphism(1, n, None, shift_morphism(f.f2, l, n - k - l), f"emb{l}({f.name})")


def h_parabolic_embed(h_f: GradedMap, f: BoxMorphism, l: int, n: int) -> GradedMap:
    """Conjugate the (1,k) homotopy by far-commutation isomorphisms into (1,n)."""
    k = f.n
    if f.m != 1 or not 0 <= l <= n - k:
        raise ValueError("bad embedding")
    N = n + 1
    letters = cabled_word(1, n)
    a, b = n - l - k, k                       # L = letters[:a], M = letters[a:a+b], R = rest
    F = lambda ls, s: rouquier_of_word(BraidWord(N, tuple(ls))).qshift(s) if ls else None  # noqa: E731
    L = F(letters[:a], -a)
    M = F(letters[a:a + b], -b)
    Rr = F(letters[a + b:], -(n - a - b))
    Z1 = _one(BSObject(N, tuple(c + l + 1 for c in f.source_words[1])))
    Z2 = _one(BSObject(N, tuple(c + l for c in f.target_words[1])))
    core = shift_map(h_f, l, n - k - l)
    if core.source != tensor_complexes(M, Z1):
        raise AssertionError("embedded homotopy has an unexpected source")
    parts = []
    if Rr is not None and Z1.obj(0).word:
        parts.append(_whisk(tensor_complexes(L, M) if L is not None else M, swap_complexes(Rr, Z1), None))
    parts.append(_whisk(L, core, Rr))
    if L is not None and Z2.obj(0).word:
        parts.append(_whisk(None, swap_complexes(L, Z2), tensor_complexes(M, Rr) if Rr is not None else M))
    out = _chain(parts)
    out.k, out.q = -1, f.degree
    return out


# ---------------------------------------------------------------------------
# cones

@dataclass
class ConeSlide:
    f: BoxMorphism
    source: Complex
    target: Complex
    chain: GradedMap
    h_f: GradedMap
    certificate: HomotopyEquivalence | None = None

    def verify(self) -> bool:
        return self.chain.is_closed() and self.certificate is not None and self.certificate.verify()


def _cone_of(g: BimodMorphism, s: int) -> Complex:
    """[source<s> @ -1  ->  target @ 0] for g of degree s between unshifted words."""
    src = g.source.shift(s)
    d = g.with_objects(src, g.target)
    return Complex(g.n, [(src, -1), (g.target, 0)], {(1, 0): d})


def _restamp(f: GradedMap, S: Complex, T: Complex, src_index, tgt_index, q=0) -> dict:
    """Components of f moved onto summands of (S, T) via index maps, objects restamped."""
    out = {}
    for (j, i), g in f.comps.items():
        jj, ii = tgt_index(j), src_index(i)
        out[(jj, ii)] = g.with_objects(S.obj(ii), T.obj(jj))
    return out


def cone_slide(f: BoxMorphism, certify: bool = True, h_f: GradedMap | None = None) -> ConeSlide:
    """Slide chain map for cone(f), f: Y -> Y' (one-term objects).

    Blocks: slide_Y and slide_{Y'} on the diagonal and -h_f off the diagonal,
    each twisted by the Koszul sign (-1)^a of the crossing's summand, where
    moving a homological shift past X requires it.
    """
    m, n = f.m, f.n
    X = _crossing(m, n)
    q = f.degree
    Cpsi = _cone_of(f.psi, q)
    Cphi = _cone_of(f.phi, q)
    S = tensor_complexes(X, Cpsi)
    T = tensor_complexes(Cphi, X)
    nx = len(X)
    s0 = _slide(m, n, f.source_words)
    s1 = _slide(m, n, f.target_words)
    if h_f is None:
        h_f = solve_slide_homotopy(f)
    comps = {}
    for (j, i), g in s0.comps.items():
        sign = -1 if X.hdeg(i) % 2 else 1
        ii, jj = 2 * i, j
        comps[(jj, ii)] = g.with_objects(S.obj(ii), T.obj(jj)).scale(sign)
    for (j, i), g in s1.comps.items():
        ii, jj = 2 * i + 1, nx + j
        comps[(jj, ii)] = g.with_objects(S.obj(ii), T.obj(jj))
    for (j, i), g in h_f.comps.items():
        sign = 1 if X.hdeg(i) % 2 else -1
        ii, jj = 2 * i, nx + j
        comps[(jj, ii)] = g.with_objects(S.obj(ii), T.obj(jj)).scale(sign)
    chain = GradedMap(S, T, 0, 0, comps)
    out = ConeSlide(f, S, T, chain, h_f)
    if certify:
        if not chain.is_closed():
            raise ArithmeticError("cone slide is not a chain map")
        eq = solve_homotopy_equivalence(S, T, f=chain)
        if eq is None:
            raise ArithmeticError("cone slide is not a homotopy equivalence")
        out.certificate = eq
    return out


def random_box_morphism(m, n, Y, Yp, degree, seed=0) -> BoxMorphism:
    """A seeded random combination of a basis of Hom^degree(Y, Y') in D_n (first factor trivial)."""
    rng = random.Random(seed)
    basis = hom_space_basis(BSObject(n, tuple(Y)), BSObject(n, tuple(Yp)), degree)
    if not basis:
        raise ValueError("empty morphism space")
    f = None
    while f is None or f.is_zero():
        f = None
        for b in basis:
            c = mpq(rng.randint(-3, 3))
            f = b.scale(c) if f is None else f + b.scale(c)
    return BoxMorphism.right(f, m, n, f"random(seed={seed})")


# ---------------------------------------------------------------------------
# bar elements and the tau table

@dataclass(eq=False)
class BarElement:
    """id_{Y_1} || f_1 || ... || f_r || id_{Y_{r+1}}, f_i : Y_{i+1} -> Y_i."""

    morphisms: tuple
    obj: tuple = None          # used when r = 0: the words (Y1, Y2)

    def __post_init__(self):
        ms = self.morphisms
        for a, b in zip(ms, ms[1:]):
            if a.source_words != b.target_words:
                raise ValueError("bar element is not composable")
        if not ms and self.obj is None:
            raise ValueError("length-zero bar element needs its object")

    @property
    def r(self) -> int:
        return len(self.morphisms)

    @property
    def top(self):
        return self.morphisms[0].target_words if self.morphisms else self.obj

    @property
    def bottom(self):
        return self.morphisms[-1].source_words if self.morphisms else self.obj

    @property
    def degree(self) -> int:
        return sum(f.degree for f in self.morphisms)

    @property
    def key(self):
        if not self.morphisms:
            return ("obj", self.obj)
        return tuple(f.name for f in self.morphisms)

    def __repr__(self):
        return "id||" + "||".join(f.name for f in self.morphisms) + "||id" if self.morphisms else f"id_{self.obj}"


@dataclass
class TauTable:
    m: int
    n: int
    r_max: int
    entries: dict = field(default_factory=dict)        # key -> (BarElement, GradedMap)
    composites: dict = field(default_factory=dict)     # name -> BoxMorphism for composed middles

    def value(self, e: BarElement) -> GradedMap:
        if e.key not in self.entries:
            self.entries[e.key] = (e, _tau_value(self, e))
        return self.entries[e.key][1]

    def bar_differential_image(self, e: BarElement) -> GradedMap | None:
        """tau(d_bar e), assembled from stored values; None for r = 0."""
        fs = e.morphisms
        r = len(fs)
        if r == 0:
            return None
        S = tensor_complexes(_crossing(self.m, self.n), _one(_psi_obj(self, e.bottom)))
        T = tensor_complexes(_one(_phi_obj(self, e.top)), _crossing(self.m, self.n))
        total = GradedMap(S, T, -(r - 1), e.degree, {})
        # i = 0: phi(f_1) . tau(id || f_2 || ... )
        rest = self.value(_bar(fs[1:], fs[0].source_words))
        term = phi_whisker(fs[0]).compose(rest)
        total = _acc(total, term)
        for i in range(1, r):
            comp = self._composite(fs[i - 1], fs[i])
            mid = fs[:i - 1] + (comp,) + fs[i + 1:]
            term = self.value(_bar(mid, None))
            total = _acc(total, term.scale(-1 if i % 2 else 1))
        last = self.value(_bar(fs[:-1], fs[-1].target_words))
        term = last.compose(psi_whisker(fs[-1]))
        total = _acc(total, term.scale(-1 if r % 2 else 1))
        total.k, total.q = -(r - 1), e.degree
        return total

    def _composite(self, a: BoxMorphism, b: BoxMorphism) -> BoxMorphism:
        name = f"({a.name}.{b.name})"
        if name not in self.composites:
            c = a.compose(b)
            c.name = name
            self.composites[name] = c
        return self.composites[name]

    def check_chain_map(self):
        """Pairs (element, ok) for every stored entry of positive length."""
        out = []
        for key, (e, val) in sorted(self.entries.items(), key=lambda kv: repr(kv[0])):
            if e.r == 0:
                out.append((e, val.is_closed()))
            else:
                out.append((e, differential_of(val) == self.bar_differential_image(e)))
        return out


def _acc(total, term):
    term = GradedMap(total.source, total.target, total.k, total.q, term.comps) if term.comps else None
    return total + term if term is not None else total


def _bar(fs, obj):
    return BarElement(tuple(fs), obj if not fs else None)


def _psi_obj(t: TauTable, words):
    return boxtimes(BSObject(t.m, words[0]), BSObject(t.n, words[1]), t.m, t.n)


def _phi_obj(t: TauTable, words):
    return boxtimes(BSObject(t.n, words[1]), BSObject(t.m, words[0]), t.n, t.m)


def _tau_value(t: TauTable, e: BarElement) -> GradedMap:
    if e.r == 0:
        return slide_for_word(e.obj[0], e.obj[1], t.m, t.n).chain
    if e.r == 1:
        return solve_slide_homotopy(e.morphisms[0])
    rhs = t.bar_differential_image(e)
    if not rhs.is_closed():
        raise ArithmeticError(f"obstruction for {e!r} is not closed")
    val = solve_homotopy(rhs, check_closed=False)
    if val is None:
        raise UnsolvableError(f"no antiderivative for {e!r}")
    return val


def tau_generators(m: int, n: int):
    """Generating morphisms of D_m [x] D_n on objects of length <= 2 used for the table."""
    gens = []
    if m == 1 and n == 1:
        gens.append(BoxMorphism.left(G.polybox(1, Poly.var(1, 1)), 1, 1, "x|"))
        gens.append(BoxMorphism.right(G.polybox(1, Poly.var(1, 1)), 1, 1, "|x"))
        return gens
    if (m, n) != (1, 2):
        raise ValueError("tau tables are built for (m,n) in {(1,1),(1,2)}")
    B = BSObject(2, (1,))
    sd, ed = G.startdot(2, 1), G.enddot(2, 1)
    gens += [
        BoxMorphism.left(G.polybox(1, Poly.var(1, 1)), 1, 2, "y|"),
        BoxMorphism.right(G.polybox(2, Poly.var(2, 1)), 1, 2, "|x1"),
        BoxMorphism.right(G.polybox(2, Poly.var(2, 2)), 1, 2, "|x2"),
        BoxMorphism.right(sd, 1, 2, "sd"),
        BoxMorphism.right(ed, 1, 2, "ed"),
        BoxMorphism.right(G.merge(2, 1), 1, 2, "mg"),
        BoxMorphism.right(G.split(2, 1), 1, 2, "sp"),
        BoxMorphism.right(hcomp(sd, B), 1, 2, "sd.B"),
        BoxMorphism.right(hcomp(B, sd), 1, 2, "B.sd"),
        BoxMorphism.right(hcomp(ed, B), 1, 2, "ed.B"),
        BoxMorphism.right(hcomp(B, ed), 1, 2, "B.ed"),
    ]
    return gens


def tau_base(m: int, n: int, r_max: int = 2) -> TauTable:
    t = TauTable(m, n, r_max)
    objs = set()
    for g in tau_generators(m, n):
        objs.add(g.source_words)
        objs.add(g.target_words)
    for o in sorted(objs):
        t.value(_bar((), o))
    for g in tau_generators(m, n):
        t.value(_bar((g,), None))
    return t


def tau_extend(t: TauTable, r_max: int | None = None) -> TauTable:
    """Fill in all generator-word bar elements of length <= r_max by antiderivatives."""
    r_max = t.r_max if r_max is None else r_max
    gens = tau_generators(t.m, t.n)
    frontier = [(g,) for g in gens]
    for r in range(2, r_max + 1):
        nxt = []
        for word in frontier:
            for g in gens:
                if word[-1].source_words == g.target_words:
                    nxt.append(word + (g,))
        for word in nxt:
            t.value(_bar(word, None))
        frontier = nxt
    t.r_max = max(t.r_max, r_max)
    return t


def star(F: GradedMap, G_: GradedMap, top_F: BSObject, bottom_G: BSObject) -> GradedMap:
    """F * G = (id_{phi(Y_1)} o G) . (F o id_{psi(Y'_{s+1})})."""
    left = tensor_maps(F, _one(bottom_G).identity()) if bottom_G.word else F
    right = tensor_maps(_one(top_F).identity(), G_) if top_F.word else G_
    out = right.compose(left)
    out.k, out.q = F.k + G_.k, F.q + G_.q
    return out


def a_infinity_pair(t: TauTable, a: BarElement, b: BarElement):
    """tau_2(a, b) with d tau_2 = tau(a * b) - tau(a) * tau(b), for r(a) + r(b) <= 1.

    Returns (delta, tau_2) with the identity checked exactly.
    """
    if a.r + b.r > 1:
        raise ValueError("pairs are sampled with total bar length at most one")
    Ya, Yb = a.top, b.top
    words = (Ya[0] + Yb[0], Ya[1] + Yb[1])
    if a.r == 0 and b.r == 0:
        ab = _bar((), words)
    else:
        f = a.morphisms[0] if a.r else b.morphisms[0]
        if a.r:
            fw = f.whisker(Z=b.obj)
        else:
            fw = f.whisker(W=a.obj)
        fw.name = f"{'' if a.r else str(a.obj)}{f.name}{str(b.obj) if a.r else ''}"
        ab = _bar((fw,), None)
    lhs = t.value(ab)
    prod = star(t.value(a), t.value(b), _phi_obj(t, a.top), _psi_obj(t, b.bottom))
    delta = lhs - GradedMap(lhs.source, lhs.target, prod.k, prod.q, prod.comps)
    delta.k, delta.q = lhs.k, lhs.q
    tau2 = solve_homotopy(delta)
    if tau2 is None:
        raise UnsolvableError("no A-infinity correction found")
    return delta, tau2


def dot_order_homotopies():
    """The two presentations of two start dots on B_1 B_1 and their homotopies.

    Returns (hA, hB, t, explicit) where d(t) = hA - hB and explicit is the
    composite (id_{B_1} o h_sd) . h_sd.
    """
    B = BSObject(2, (1,))
    sd = BoxMorphism.right(G.startdot(2, 1), 1, 2, "sd")
    h_sd = solve_slide_homotopy(sd)
    sdB = BoxMorphism.right(hcomp(G.startdot(2, 1), B), 1, 2, "sd.B")
    Bsd = BoxMorphism.right(hcomp(B, G.startdot(2, 1)), 1, 2, "B.sd")
    # A: right dot first, then the left dot; B: left dot first, then the right dot
    hA = h_vcomp(h_hcomp(h_sd, sd, Z=(1,)), sdB, h_sd, sd)
    hB = h_vcomp(h_hcomp(h_sd, sd, W=(1,)), Bsd, h_sd, sd)
    diff = hA - hB
    diff.k, diff.q = -1, 2
    t = solve_homotopy(diff)
    explicit = tensor_maps(_one(BSObject(3, (1,))).identity(), h_sd).compose(h_sd)
    return hA, hB, t, explicit


# ---------------------------------------------------------------------------
# sampled lemma instances

def higher_homotopy(h: GradedMap, f: BoxMorphism, h_direct: GradedMap | None = None):
    """t with d(t) = h - h_direct, where h_direct defaults to the solver's homotopy for f."""
    if h_direct is None:
        h_direct = solve_slide_homotopy(f)
    diff = h - h_direct
    diff.k, diff.q = -1, f.degree
    return solve_homotopy(diff)


def lemma_instances():
    """Yield (case id, composite morphism, homotopy produced by a composition lemma)."""
    sd = BoxMorphism.right(G.startdot(2, 1), 1, 2, "sd")
    ed = BoxMorphism.right(G.enddot(2, 1), 1, 2, "ed")
    mg = BoxMorphism.right(G.merge(2, 1), 1, 2, "mg")
    sp = BoxMorphism.right(G.split(2, 1), 1, 2, "sp")
    hs, he = solve_slide_homotopy(sd), solve_slide_homotopy(ed)
    hm, hp = solve_slide_homotopy(mg), solve_slide_homotopy(sp)
    yield "vcomp/ed.sd", ed.compose(sd), h_vcomp(he, ed, hs, sd)
    yield "vcomp/sd.ed", sd.compose(ed), h_vcomp(hs, sd, he, ed)
    yield "vcomp/mg.sp", mg.compose(sp), h_vcomp(hm, mg, hp, sp)
    yield "vcomp/ed.mg", ed.compose(mg), h_vcomp(he, ed, hm, mg)
    for W, Z in (((1,), ()), ((), (1,)), ((1,), (1,))):
        yield f"hcomp/sd/W={W}/Z={Z}", sd.whisker(((), W), ((), Z)), h_hcomp(hs, sd, W, Z)
    yield "hcomp/mg/W=(1,)", mg.whisker(((), (1,))), h_hcomp(hm, mg, (1,), ())
    for name, f, h in (("sd", sd, hs), ("ed", ed, he), ("mg", mg, hm)):
        yield f"coxeter/{name}/m=2", BoxMorphism.right(f.f2, 2, 2, name), h_coxeter_assembly(h, f, 2)
    yield "coxeter/sd/m=1", sd, h_coxeter_assembly(hs, sd, 1)
    for name, f, h in (("sd", sd, hs), ("ed", ed, he), ("mg", mg, hm)):
        for l in (0, 1):
            yield f"embed/{name}/l={l}/n=3", embed_box(f, l, 3), h_parabolic_embed(h, f, l, 3)
