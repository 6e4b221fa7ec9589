"""Slide chain maps X_{m,n} o (Y_1 [x] Y_2) -> (Y_2 [x] Y_1) o X_{m,n}.

Atomic slides on three strands are solved for; everything else is assembled
from them, far-commutation isomorphisms and identities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import homsolve
from .bimod import BSObject, boxtimes, far_commute, identity
from .complex import (Complex, GradedMap, HomotopyEquivalence, compose_equivalences,
                      hom_complex_cohomology_dims, identity_equivalence, iso_equivalence, one_term,
                      qshift_map, shift_complex, shift_equivalence, solve_homotopy_equivalence,
                      swap_complexes, tensor_complexes, tensor_maps, whisker_equivalence)
from .rouquier import (BraidWord, cabled_crossing, cabled_word, r2_structure_maps, rouquier_of_word,
                       solve_closed_map)

__all__ = [
    "SlideMap",
    "atomic_slide",
    "slide_generator",
    "slide_for_word",
    "slide_cabled",
    "slide_prime",
    "slide_source",
    "slide_target",
    "commutation_isomorphism",
    "cabled_ev_coev",
]


@dataclass
class SlideMap:
    m: int
    n: int
    Y1: tuple
    Y2: tuple
    chain: GradedMap
    sign: int = 1
    certificate: HomotopyEquivalence | None = None
    info: dict = field(default_factory=dict)

    @property
    def source(self) -> Complex:
        return self.chain.source

    @property
    def target(self) -> Complex:
        return self.chain.target

    def certify(self, seed: int = 0) -> HomotopyEquivalence:
        """Find and verify a homotopy inverse with both homotopies."""
        if self.certificate is None:
            eq = solve_homotopy_equivalence(self.source, self.target, f=self.chain, seed=seed)
            if eq is None:
                raise ArithmeticError(f"slide {self.Y1}|{self.Y2} for ({self.m},{self.n}) is not invertible")
            self.certificate = eq
        return self.certificate

    def verify(self) -> bool:
        if not self.chain.is_closed():
            return False
        return self.certificate is not None and self.certificate.verify()


def _unit(n):
    return one_term(BSObject(n, ()))


def _objects(m, n, Y1, Y2):
    src = boxtimes(BSObject(m, tuple(Y1)), BSObject(n, tuple(Y2)), m, n)
    tgt = boxtimes(BSObject(n, tuple(Y2)), BSObject(m, tuple(Y1)), n, m)
    return src, tgt


def _crossing(m, n, sign=1):
    return cabled_crossing(m, n, sign)


def slide_source(m, n, Y1=(), Y2=(), sign=1) -> Complex:
    src, _ = _objects(m, n, Y1, Y2)
    return tensor_complexes(_crossing(m, n, sign), one_term(src))


def slide_target(m, n, Y1=(), Y2=(), sign=1) -> Complex:
    _, tgt = _objects(m, n, Y1, Y2)
    return tensor_complexes(one_term(tgt), _crossing(m, n, sign))


def _is_unit(C: Complex | None) -> bool:
    return C is None or (len(C.summands) == 1 and not C.obj(0).word and not C.obj(0).qshift)


def _whisker(left: Complex | None, f: GradedMap, right: Complex | None) -> GradedMap:
    if not _is_unit(left):
        f = tensor_maps(left.identity(), f)
    if not _is_unit(right):
        f = tensor_maps(f, right.identity())
    return f


def _wh(left, e: HomotopyEquivalence, right) -> HomotopyEquivalence:
    return whisker_equivalence(None if _is_unit(left) else left, e, None if _is_unit(right) else right)


def _chain(maps):
    out = maps[0]
    for g in maps[1:]:
        out = g.compose(out)
    return out


def _swap_eq(X: Complex, Y: Complex) -> HomotopyEquivalence:
    return iso_equivalence(swap_complexes(X, Y), swap_complexes(Y, X))


# ---------------------------------------------------------------------------
# atomic slides

@lru_cache(maxsize=None)
def atomic_slide(kind: str = "12") -> SlideMap:
    """slide_{1_1,B_1} for (m,n) = (1,2) (kind "12") or slide_{B_1,1_1} for (2,1) (kind "21").

    The degree-0 chain-map space has one-dimensional cohomology; the solution
    is normalised so that its component between the two equal summands of
    homological degree 1 (the strand passing straight through) is +id.
    """
    if kind == "12":
        m, n, Y1, Y2 = 1, 2, (), (1,)
    elif kind == "21":
        m, n, Y1, Y2 = 2, 1, (1,), ()
    else:
        raise ValueError("atomic slide kind must be '12' or '21'")
    S = slide_source(m, n, Y1, Y2)
    T = slide_target(m, n, Y1, Y2)
    pairs = [(j, i) for i, (o, a) in enumerate(S.summands) for j, (p, b) in enumerate(T.summands)
             if a == b == 1 and o == p]
    if len(pairs) != 1:
        raise ArithmeticError("normalisation anchor is not unique")
    j0, i0 = pairs[0]
    anchor = homsolve.flatten({(j0, i0): identity(S.obj(i0))})

    def comp(g):
        f = g.comps.get((j0, i0))
        return homsolve.flatten({(j0, i0): f}) if f is not None else {}

    chain = solve_closed_map(S, T, [(comp, anchor)])
    if chain is None:
        raise ArithmeticError("normalisation anchor vanishes on the space of chain maps")
    h0 = hom_complex_cohomology_dims(S, T, 0, [0])[0]
    sm = SlideMap(m, n, Y1, Y2, chain, info={"H0": h0, "anchor": (j0, i0)})
    sm.certify()
    return sm


# ---------------------------------------------------------------------------
# generator slides

def _split_word(n_amb, letters, lo, hi):
    """F(letters[:lo]), F(letters[lo:hi]), F(letters[hi:]) with unit for empty pieces."""
    def F(ls):
        return rouquier_of_word(BraidWord(n_amb, tuple(ls))) if ls else _unit(n_amb)
    return F(letters[:lo]), F(letters[lo:hi]), F(letters[hi:])


def _qs(C: Complex, s: int) -> Complex:
    return C.qshift(s) if s else C


def _three_stage(n_amb, letters, lo, atom: HomotopyEquivalence, b_in: int, b_out: int):
    """F(L) F(M) F(Rr) o B_{b_in} -> B_{b_out} o F(L) F(M) F(Rr), with F(M) = letters[lo:lo+2].

    Each factor carries the quantum shift <-length> of its letters.
    """
    L, M, Rr = _split_word(n_amb, letters, lo, lo + 2)
    L, M, Rr = _qs(L, -lo), _qs(M, -2), _qs(Rr, -(len(letters) - lo - 2))
    Bin = one_term(BSObject(n_amb, (b_in,)))
    Bout = one_term(BSObject(n_amb, (b_out,)))
    steps = []
    if lo + 2 < len(letters):
        steps.append(_wh(tensor_complexes(L, M), _swap_eq(Rr, Bin), None))
    steps.append(_wh(L, atom, Rr))
    if lo:
        steps.append(_wh(None, _swap_eq(L, Bout), tensor_complexes(M, Rr)))
    return compose_equivalences(*steps)


@lru_cache(maxsize=None)
def slide_generator(m: int, n: int, side: str, j: int) -> SlideMap:
    """slide_{1_m, B_j} (side "1B", B_j in D_n) or slide_{B_j, 1_n} (side "B1", B_j in D_m)."""
    if side == "1B":
        if not 1 <= j <= n - 1:
            raise ValueError(f"B_{j} is not a generator of D_{n}")
        Y1, Y2 = (), (j,)
    elif side == "B1":
        if not 1 <= j <= m - 1:
            raise ValueError(f"B_{j} is not a generator of D_{m}")
        Y1, Y2 = (j,), ()
    else:
        raise ValueError("side must be '1B' or 'B1'")
    N = m + n
    if side == "1B" and m == 1:
        atom = shift_equivalence(atomic_slide("12").certificate, j - 1, N - 3 - (j - 1))
        letters = cabled_word(1, n)              # n, n-1, ..., 1
        lo = letters.index(j + 1)
        eq = _three_stage(N, letters, lo, atom, j + 1, j)
    elif side == "B1" and n == 1:
        atom = shift_equivalence(atomic_slide("21").certificate, j - 1, N - 3 - (j - 1))
        letters = cabled_word(m, 1)              # 1, 2, ..., m
        lo = letters.index(j)
        eq = _three_stage(N, letters, lo, atom, j, j + 1)
    elif side == "1B":
        eq = _coxeter_stack(m, n, j)
    else:
        eq = _phi_conjugated(m, n, j)
    S, T = slide_source(m, n, Y1, Y2), slide_target(m, n, Y1, Y2)
    eq = _retype_eq(eq, S, T)
    return SlideMap(m, n, Y1, Y2, eq.f, certificate=eq)


def _retype(f: GradedMap, S: Complex, T: Complex) -> GradedMap:
    """Check that f runs between S and T structurally and restamp it."""
    if f.source != S or f.target != T:
        raise AssertionError("assembled slide does not have the expected source/target")
    return GradedMap(S, T, f.k, f.q, f.comps)


def _retype_eq(e: HomotopyEquivalence, S: Complex, T: Complex) -> HomotopyEquivalence:
    f = _retype(e.f, S, T)
    g = _retype(e.g, T, S)
    return HomotopyEquivalence(f, g, _retype(e.h_source, S, S), _retype(e.h_target, T, T))


def _coxeter_stack(m, n, j):
    """Stack of whiskered Coxeter slides through X_{m,n} = prod_k (1_k [x] X_{1,n} [x] 1_{m-1-k})."""
    base = slide_generator(1, n, "1B", j).certificate
    factors = [shift_complex(cabled_crossing(1, n), k, m - 1 - k) for k in range(m)]
    steps = []
    for k in range(m - 1, -1, -1):
        s = shift_equivalence(base, k, m - 1 - k)
        steps.append(_wh(_prod(factors[:k], m + n), s, _prod(factors[k + 1:], m + n)))
    return compose_equivalences(*steps)


def _prod(cs, N):
    if not cs:
        return _unit(N)
    out = cs[0]
    for c in cs[1:]:
        out = tensor_complexes(out, c)
    return out


def _phi_conjugated(m, n, j):
    """phi^-1 o (stack of whiskered slides through prod X_{m,1}) o phi."""
    N = m + n
    base = slide_generator(m, 1, "B1", j).certificate
    factors = [shift_complex(cabled_crossing(m, 1), n - 1 - k, k) for k in range(n)]
    X = cabled_crossing(m, n)
    P = _prod(factors, N)
    w_from = cabled_word(m, n)
    w_to = sum((tuple(c + n - 1 - k for c in cabled_word(m, 1)) for k in range(n)), ())
    phi = qshift_map(commutation_isomorphism(N, w_from, w_to), -m * n)
    phi_inv = qshift_map(commutation_isomorphism(N, w_to, w_from), -m * n)
    if phi.target != P or phi.source != X:
        raise AssertionError("Coxeter factorisation does not match")
    phi_eq = iso_equivalence(phi, phi_inv)
    steps = [_wh(None, phi_eq, one_term(BSObject(N, (j,))))]
    for k in range(n - 1, -1, -1):
        s = shift_equivalence(base, n - 1 - k, k)
        steps.append(_wh(_prod(factors[:k], N), s, _prod(factors[k + 1:], N)))
    inv = iso_equivalence(phi_inv, phi)
    steps.append(_wh(one_term(BSObject(N, (j + n,))), inv, None))
    return compose_equivalences(*steps)


def commutation_isomorphism(n: int, w_from, w_to) -> GradedMap:
    """F(w_from) -> F(w_to) for words related by commuting distant letters only."""
    cur = list(w_from)
    target = list(w_to)
    if sorted(cur) != sorted(target):
        raise ValueError("words are not related by far commutation")
    F = lambda ls: rouquier_of_word(BraidWord(n, tuple(ls)))  # noqa: E731
    steps = [F(cur).identity()]
    for pos in range(len(target)):
        k = cur.index(target[pos], pos)
        while k > pos:
            a, b = cur[k - 1], cur[k]
            if abs(abs(a) - abs(b)) < 2:
                raise ValueError("words are not related by far commutation")
            sw = swap_complexes(F([a]), F([b]))
            left = F(cur[:k - 1]) if k - 1 else None
            right = F(cur[k + 1:]) if cur[k + 1:] else None
            steps.append(_whisker(left, sw, right))
            cur[k - 1], cur[k] = b, a
            k -= 1
    return _chain(steps)


# ---------------------------------------------------------------------------
# word-level slides

def _slide_step(m, n, side, j, left_word, right_word):
    """id_{B_left} o slide_generator o id_{B_right} (words already in ambient m+n)."""
    N = m + n
    e = slide_generator(m, n, side, j).certificate
    left = one_term(BSObject(N, tuple(left_word))) if left_word else None
    right = one_term(BSObject(N, tuple(right_word))) if right_word else None
    return _wh(left, e, right)


@lru_cache(maxsize=None)
def _slide_word_cached(m, n, Y1, Y2):
    N = m + n
    S, T = slide_source(m, n, Y1, Y2), slide_target(m, n, Y1, Y2)
    if (not Y1 and not Y2) or m == 0 or n == 0:
        # the crossing is the unit (or nothing moves): source and target coincide
        if S != T:
            raise AssertionError("degenerate slide between different complexes")
        return identity_equivalence(S)
    steps = []
    y1_in = list(Y1)                        # B_c [x] 1 has color c
    y1_out = [c + n for c in Y1]            # 1 [x] B_c has color c + n
    y2_in = [c + m for c in Y2]
    y2_out = list(Y2)
    for k, c in enumerate(Y1):
        steps.append(_slide_step(m, n, "B1", c, y1_out[:k], y1_in[k + 1:] + y2_in))
    for k, c in enumerate(Y2):
        steps.append(_slide_step(m, n, "1B", c, y1_out + y2_out[:k], y2_in[k + 1:]))
    if Y1 and Y2:
        fc = far_commute(N, y1_out, y2_out)
        back = far_commute(N, y2_out, y1_out)
        A, B = one_term(fc.source), one_term(fc.target)
        sw = iso_equivalence(GradedMap(A, B, 0, 0, {(0, 0): fc}), GradedMap(B, A, 0, 0, {(0, 0): back}))
        steps.append(_wh(None, sw, _crossing(m, n)))
    return _retype_eq(compose_equivalences(*steps), S, T)


def slide_for_word(Y1, Y2, m: int, n: int, certify: bool = False) -> SlideMap:
    """slide_{Y_1,Y_2} assembled from generator slides.

    Letters of Y_1 slide first, then those of Y_2; the resulting
    (1 [x] Y_1)(Y_2 [x] 1) is brought to Y_2 [x] Y_1 by four-valent vertices.
    """
    Y1, Y2 = tuple(Y1), tuple(Y2)
    for c in Y1:
        if not 1 <= c <= m - 1:
            raise ValueError(f"B_{c} is not an object of D_{m}")
    for c in Y2:
        if not 1 <= c <= n - 1:
            raise ValueError(f"B_{c} is not an object of D_{n}")
    eq = _slide_word_cached(m, n, Y1, Y2)
    sm = SlideMap(m, n, Y1, Y2, eq.f, certificate=eq)
    if certify and not eq.verify():
        raise ArithmeticError("assembled slide certificate failed verification")
    return sm


def slide_cabled(m: int, n: int, Y, side: str = "right", certify: bool = False) -> SlideMap:
    """Slide of 1_m [x] Y (side "right", Y in D_n) or Y [x] 1_n (side "left", Y in D_m)."""
    if side == "right":
        return slide_for_word((), Y, m, n, certify)
    if side == "left":
        return slide_for_word(Y, (), m, n, certify)
    raise ValueError("side must be 'right' or 'left'")


# ---------------------------------------------------------------------------
# negative crossings

def _nested(n, letters, which):
    """ev': F(w^-1) F(w) -> R or coev': R -> F(w) F(w^-1), nested from elementary R2 maps."""
    F = lambda ls: rouquier_of_word(BraidWord(n, tuple(ls))) if ls else _unit(n)  # noqa: E731
    if not letters:
        return _unit(n).identity()
    first, rest = letters[0], tuple(letters[1:])
    r2 = r2_structure_maps(n, abs(first), 1 if first > 0 else -1, with_homotopies=False)
    if not rest:
        return r2.coev_p if which == "coev" else r2.ev_p
    inner = _nested(n, rest, which)
    rest_inv = tuple(-x for x in reversed(rest))
    if which == "coev":
        # R -> F(first) F(-first) -> F(first) F(rest) F(rest^-1) F(-first)
        return _whisker(F([first]), inner, F([-first])).compose(r2.coev_p)
    # F(rest^-1) F(-first) F(first) F(rest) -> F(rest^-1) F(rest) -> R
    return inner.compose(_whisker(F(rest_inv), r2.ev_p, F(rest)))


def cabled_ev_coev(m: int, n: int):
    """(ev': X'_{m,n} o X_{n,m} -> R, coev: R -> X_{n,m} o X'_{m,n})."""
    N = m + n
    w = cabled_word(n, m)
    ev = _nested(N, w, "ev")
    coev = _nested(N, w, "coev")
    return ev, coev


def slide_prime(Y1, Y2, m: int, n: int, certify: bool = False) -> SlideMap:
    """slide'_{Y_1,Y_2}: X'_{m,n} o Y -> swap(Y) o X'_{m,n}.

    X' o Y -> X' o Y o X o X' -> X' o X o swap(Y) o X' -> swap(Y) o X',
    using coev, a homotopy inverse of slide_{Y_2,Y_1} and ev'.
    """
    Y1, Y2 = tuple(Y1), tuple(Y2)
    Xp = cabled_crossing(m, n, -1)
    Xr = cabled_crossing(n, m, 1)
    ev, coev = cabled_ev_coev(m, n)
    base = slide_for_word(Y2, Y1, n, m, certify=True)
    back = base.certificate.g                   # (Y1 [x] Y2) o X_{n,m} -> X_{n,m} o (Y2 [x] Y1)
    Y = one_term(boxtimes(BSObject(m, Y1), BSObject(n, Y2), m, n))
    Ys = one_term(boxtimes(BSObject(n, Y2), BSObject(m, Y1), n, m))
    # the nested maps are built on unshifted words; the shifts of X' and X cancel summand-wise
    coev_s = _retype(coev, coev.source, tensor_complexes(Xr, Xp))
    ev_s = _retype(ev, tensor_complexes(Xp, Xr), ev.target)
    s1 = _whisker(tensor_complexes(Xp, Y), coev_s, None)
    s2 = _whisker(Xp, back, Xp)
    s3 = _whisker(None, ev_s, tensor_complexes(Ys, Xp))
    chain = _chain([s1, s2, s3])
    S, T = tensor_complexes(Xp, Y), tensor_complexes(Ys, Xp)
    sm = SlideMap(m, n, Y1, Y2, _retype(chain, S, T), sign=-1)
    if certify:
        sm.certify()
    return sm
