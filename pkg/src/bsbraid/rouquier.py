"""Rouquier complexes of braid words, cabled crossings, duals and R2 structure maps."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import generators as G
from . import homsolve
from .bimod import BSObject, identity, r_yz
from .complex import (Complex, GradedMap, differential_of, hom_basis, one_term, shift_complex,
                      solve_homotopy, tensor_complexes, tensor_maps)

__all__ = [
    "BraidWord",
    "parse_braid_word",
    "elementary",
    "rouquier_of_word",
    "cabled_word",
    "cabled_crossing",
    "coxeter_factorization",
    "dual_complex",
    "solve_closed_map",
    "R2Data",
    "r2_structure_maps",
]


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for x in self.letters:
            if x == 0 or not 1 <= abs(x) <= self.n - 1:
                raise ValueError(f"braid letter {x} out of range for {self.n} strands")

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n, tuple(-x for x in reversed(self.letters)))

    def __str__(self):
        return " ".join(str(x) for x in self.letters) or "(empty)"


def parse_braid_word(text: str, n: int) -> BraidWord:
    """Space-separated signed indices, e.g. "1 2 -1"."""
    parts = text.replace(",", " ").split()
    try:
        letters = [int(p) for p in parts]
    except ValueError:
        raise ValueError(f"braid word must be signed integers, got {text!r}") from None
    return BraidWord(n, letters)


@lru_cache(maxsize=None)
def elementary(n: int, letter: int) -> Complex:
    """F(sigma_i) = [B_i -> R<-1>] via the end dot; F(sigma_i^-1) = [R<1> -> B_i] via the start dot."""
    i = abs(letter)
    Bi = BSObject(n, (i,))
    if letter > 0:
        tgt = BSObject(n, (), -1)
        d = G.enddot(n, i).with_objects(Bi, tgt)
        return Complex(n, [(Bi, 0), (tgt, 1)], {(1, 0): d})
    src = BSObject(n, (), 1)
    d = G.startdot(n, i).with_objects(src, Bi)
    return Complex(n, [(src, -1), (Bi, 0)], {(1, 0): d})


def rouquier_of_word(w) -> Complex:
    if not isinstance(w, BraidWord):
        raise TypeError("expected a BraidWord")
    if not w.letters:
        return one_term(BSObject(w.n, ()))
    return _product(w.n, w.letters)


@lru_cache(maxsize=None)
def _product(n, letters):
    if len(letters) == 1:
        return elementary(n, letters[0])
    return tensor_complexes(_product(n, letters[:-1]), elementary(n, letters[-1]))


def cabled_word(m: int, n: int, sign: int = 1) -> tuple:
    """Braid letters of the positive (sign=+1) or negative cabled crossing on m+n strands."""
    if m < 0 or n < 0:
        raise ValueError("cable sizes must be nonnegative")
    if m == 0 or n == 0:
        return ()
    if sign > 0:
        out = []
        for i in range(1, m + 1):
            out.extend(range(i + n - 1, i - 1, -1))
        return tuple(out)
    out = []
    for i in range(n, 0, -1):
        out.extend(-k for k in range(i, i + m))
    return tuple(out)


def cabled_crossing(m: int, n: int, sign: int = 1) -> Complex:
    """X_{m,n} = F(word)<-mn> or X'_{m,n} = F(word)<mn> in ambient m+n."""
    word = BraidWord(m + n, cabled_word(m, n, sign))
    X = rouquier_of_word(word)
    return X.qshift(-m * n if sign > 0 else m * n)


def coxeter_factorization(m: int, n: int, sign: int = 1) -> Complex:
    """The cabled crossing assembled from shifted Coxeter braids.

    positive: (X_{1,n} [x] 1_{m-1}) o ... o (1_{m-1} [x] X_{1,n})
    negative: (1_{n-1} [x] X'_{m,1}) o ... o (X'_{m,1} [x] 1_{n-1})
    """
    if m == 0 or n == 0:
        return one_term(BSObject(m + n, ()))
    if sign > 0:
        C = cabled_crossing(1, n, 1)
        factors = [shift_complex(C, k, m - 1 - k) for k in range(m)]
    else:
        C = cabled_crossing(m, 1, -1)
        factors = [shift_complex(C, n - 1 - k, k) for k in range(n)]
    out = factors[0]
    for f in factors[1:]:
        out = tensor_complexes(out, f)
    return out


def dual_complex(X: Complex) -> Complex:
    """Apply r_yz summand-wise, negating quantum shifts and homological degrees.

    Summands are listed in reverse so homological degrees stay ascending.
    """
    last = len(X) - 1
    objs = [(BSObject(o.n, tuple(reversed(o.word)), -o.qshift), -a) for o, a in reversed(X.summands)]
    d = {(last - i, last - j): r_yz(f) for (j, i), f in X.d.items()}
    return Complex(X.n, objs, d)


# ---------------------------------------------------------------------------
# closed maps with linear side conditions

def solve_closed_map(S: Complex, T: Complex, constraints, k: int = 0, q: int = 0):
    """A closed bidegree-(k,q) map S -> T satisfying linear constraints, or None.

    ``constraints`` is a list of (L, target) where L maps a GradedMap S -> T to
    a GradedMap (or a flattened dict) and target is of the same kind.  The
    particular solution with zero free coordinates is returned.
    """
    basis = hom_basis(S, T, k, q)
    cols = []
    for b in basis:
        vec = {("d",) + key: v for key, v in differential_of(b).flatten().items()}
        for idx, (L, _) in enumerate(constraints):
            img = L(b)
            img = img.flatten() if isinstance(img, GradedMap) else img
            for key, v in img.items():
                vec[("c", idx) + key] = v
        cols.append(vec)
    rhs = {}
    for idx, (_, target) in enumerate(constraints):
        tgt = target.flatten() if isinstance(target, GradedMap) else target
        for key, v in tgt.items():
            rhs[("c", idx) + key] = v
    coeffs = homsolve.solve_combination(cols, rhs)
    if coeffs is None:
        return None
    out = GradedMap(S, T, k, q, {})
    for c, b in zip(coeffs, basis):
        if c:
            out = out + b.scale(c)
    out.k, out.q = k, q
    return out


def _component(j, i):
    def L(g: GradedMap):
        f = g.comps.get((j, i))
        return homsolve.flatten({(j, i): f}) if f is not None else {}
    return L


@dataclass
class R2Data:
    X: Complex
    Xp: Complex
    ev: GradedMap          # X o X' -> R
    coev: GradedMap        # R -> X' o X
    ev_p: GradedMap        # X' o X -> R
    coev_p: GradedMap      # R -> X o X'
    homotopies: dict


def _unit_index(C: Complex):
    for idx, (o, a) in enumerate(C.summands):
        if not o.word and o.qshift == 0 and a == 0:
            return idx
    raise ValueError("complex has no unshifted R summand in degree 0")


def _evaluation(XXp: Complex, R: Complex):
    u = _unit_index(XXp)
    target = GradedMap(XXp, R, 0, 0, {(0, u): identity(R.obj(0))})
    ev = solve_closed_map(XXp, R, [(_component(0, u), homsolve.flatten({(0, u): target.comps[(0, u)]}))])
    if ev is None:
        raise ArithmeticError("no evaluation map with unit component 1")
    return ev


def _coevaluation(R: Complex, XXp: Complex, ev: GradedMap):
    cv = solve_closed_map(R, XXp, [(lambda g: ev.compose(g), R.identity())])
    if cv is None:
        raise ArithmeticError("no coevaluation inverting the evaluation on the nose")
    return cv


def r2_structure_maps(n: int, i: int, sign: int = 1, with_homotopies: bool = True) -> R2Data:
    """ev/coev data for X = F(sigma_i^sign), X' = F(sigma_i^-sign).

    ev_X is normalised to be the identity on the R summand of X o X'; coev_X'
    is then solved with ev_X o coev_X' = id_R as a hard constraint, and
    likewise for the primed pair.  Remaining relations hold up to homotopies
    found by the solver (keys name the relation).
    """
    X = elementary(n, sign * i)
    Xp = elementary(n, -sign * i)
    R = one_term(BSObject(n, ()))
    XXp = tensor_complexes(X, Xp)
    XpX = tensor_complexes(Xp, X)
    ev = _evaluation(XXp, R)
    coev_p = _coevaluation(R, XXp, ev)
    ev_p = _evaluation(XpX, R)
    coev = _coevaluation(R, XpX, ev_p)
    data = R2Data(X, Xp, ev, coev, ev_p, coev_p, {})
    if with_homotopies:
        data.homotopies = r2_homotopies(data)
    return data


def _unitors(X: Complex):
    """X o R and R o X are structurally X; return identity maps typed accordingly."""
    R = one_term(BSObject(X.n, ()))
    XR = tensor_complexes(X, R)
    RX = tensor_complexes(R, X)
    if XR != X or RX != X:
        raise AssertionError("unit object is not strictly neutral")
    return R


def r2_homotopies(data: R2Data) -> dict:
    X, Xp = data.X, data.Xp
    _unitors(X)
    out = {}

    def need(name, delta):
        h = solve_homotopy(delta)
        if h is None:
            raise ArithmeticError(f"relation {name} does not hold up to homotopy")
        out[name] = h

    XXp = data.coev_p.target
    XpX = data.coev.target
    need("coev'∘ev ~ id", data.coev_p.compose(data.ev) - XXp.identity())
    need("coev∘ev' ~ id", data.coev.compose(data.ev_p) - XpX.identity())
    idX, idXp = X.identity(), Xp.identity()
    # (ev_X o id_X)(id_X o coev_X) ~ id_X
    s1 = tensor_maps(data.ev, idX).compose(tensor_maps(idX, data.coev))
    need("snake X (ev, coev)", s1 - idX)
    s2 = tensor_maps(idXp, data.ev).compose(tensor_maps(data.coev, idXp))
    need("snake X' (ev, coev)", s2 - idXp)
    s3 = tensor_maps(data.ev_p, idXp).compose(tensor_maps(idXp, data.coev_p))
    need("snake X' (ev', coev')", s3 - idXp)
    s4 = tensor_maps(idX, data.ev_p).compose(tensor_maps(data.coev_p, idX))
    need("snake X (ev', coev')", s4 - idX)
    return out
