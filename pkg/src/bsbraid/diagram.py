"""S-expression terms for string diagrams, their evaluation, and the relation suite.

Grammar::

    term := (gen startdot|enddot|merge|split I)
          | (gen sixv I up|down) | (gen fourv I J) | (gen polybox POLY)
          | (id I ...)                       identity of a word (possibly empty)
          | (vcomp T1 T2 ...)                T1 o T2 o ... (rightmost applied first)
          | (hcomp T1 T2 ...)                horizontal composition, left to right
          | (box M N T1 T2)                  T1 in ambient M, T2 in ambient N
          | (shift J T) | (scale Q T) | (sum T1 T2 ...)

POLY is either a bare token without spaces (``x1-x2``) or a double-quoted
string (``"x1 - x2"``).  Terms are typed against an ambient strand count.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from . import generators as G
from .bimod import BSObject, BimodMorphism, boxtimes, hcomp, hcomp_many, identity
from .poly import Poly, parse_poly

__all__ = [
    "Term", "Gen", "Id", "VComp", "HComp", "Box", "Shift", "ScalarMul", "Sum",
    "TermSyntaxError", "TermTypeError", "parse_term", "evaluate_term", "term_type",
    "relation_instances", "run_relation_suite",
]


class TermSyntaxError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class TermTypeError(ValueError):
    def __init__(self, msg, expected=None, found=None, pos=None):
        detail = msg
        if expected is not None:
            detail += f": expected {list(expected)}, found {list(found)}"
        if pos is not None:
            detail += f" (at position {pos})"
        super().__init__(detail)
        self.expected = expected
        self.found = found
        self.pos = pos


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Term:
    pass


@dataclass(frozen=True)
class Gen(Term):
    kind: G.GeneratorKind


@dataclass(frozen=True)
class Id(Term):
    word: tuple


@dataclass(frozen=True)
class VComp(Term):
    outer: Term
    inner: Term


@dataclass(frozen=True)
class HComp(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Box(Term):
    m: int
    n: int
    left: Term
    right: Term


@dataclass(frozen=True)
class Shift(Term):
    j: int
    body: Term


@dataclass(frozen=True)
class ScalarMul(Term):
    q: Fraction
    body: Term


@dataclass(frozen=True)
class Sum(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class TermType:
    n: int
    source: tuple
    target: tuple
    degree: int
    sshift: int = 0
    tshift: int = 0


_GEN_DEGREE = {"startdot": 1, "enddot": 1, "merge": -1, "split": -1, "sixv": 0, "fourv": 0}


def term_type(t: Term, n: int) -> TermType:
    """Boundary words and degree of a term in ambient n; raises TermTypeError."""
    if isinstance(t, Gen):
        k = t.kind
        if k.name == "polybox":
            if k.poly.n != n:
                raise TermTypeError(f"polynomial has {k.poly.n} variables in ambient {n}")
            d = k.poly.degree() if k.poly.terms else 0
            return TermType(n, (), (), d)
        cols = [k.i] if k.name != "fourv" else [k.i, k.j]
        if k.name == "sixv":
            cols.append(k.i + 1)
        for c in cols:
            if not 1 <= c <= n - 1:
                raise TermTypeError(f"color {c} not available in ambient {n}")
        i = k.i
        src, tgt = {
            "startdot": ((), (i,)),
            "enddot": ((i,), ()),
            "merge": ((i, i), (i,)),
            "split": ((i,), (i, i)),
            "sixv": ((i, i + 1, i), (i + 1, i, i + 1)) if k.orientation == "up"
            else ((i + 1, i, i + 1), (i, i + 1, i)),
            "fourv": ((i, k.j), (k.j, i)),
        }[k.name]
        if k.name == "fourv" and abs(i - k.j) < 2:
            raise TermTypeError(f"four-valent vertex needs distant colors, got {i},{k.j}")
        return TermType(n, src, tgt, _GEN_DEGREE[k.name])
    if isinstance(t, Id):
        for c in t.word:
            if not 1 <= c <= n - 1:
                raise TermTypeError(f"color {c} not available in ambient {n}")
        return TermType(n, t.word, t.word, 0)
    if isinstance(t, VComp):
        a = term_type(t.outer, n)
        b = term_type(t.inner, n)
        if (b.target, b.tshift) != (a.source, a.sshift):
            raise TermTypeError("vertical composition boundary mismatch", a.source, b.target)
        return TermType(n, b.source, a.target, a.degree + b.degree, b.sshift, a.tshift)
    if isinstance(t, HComp):
        a = term_type(t.left, n)
        b = term_type(t.right, n)
        return TermType(n, a.source + b.source, a.target + b.target, a.degree + b.degree,
                        a.sshift + b.sshift, a.tshift + b.tshift)
    if isinstance(t, Box):
        if t.m + t.n != n:
            raise TermTypeError(f"box of ambients {t.m}+{t.n} used in ambient {n}")
        a = term_type(t.left, t.m)
        b = term_type(t.right, t.n)
        sh = lambda w: tuple(c + t.m for c in w)  # noqa: E731
        return TermType(n, a.source + sh(b.source), a.target + sh(b.target), a.degree + b.degree,
                        a.sshift + b.sshift, a.tshift + b.tshift)
    if isinstance(t, Shift):
        a = term_type(t.body, n)
        return TermType(n, a.source, a.target, a.degree, a.sshift + t.j, a.tshift + t.j)
    if isinstance(t, ScalarMul):
        return term_type(t.body, n)
    if isinstance(t, Sum):
        a = term_type(t.left, n)
        b = term_type(t.right, n)
        if (a.source, a.target) != (b.source, b.target):
            raise TermTypeError("sum of terms with different boundaries",
                                (a.source, a.target), (b.source, b.target))
        if a.degree != b.degree:
            raise TermTypeError(f"sum of terms of degrees {a.degree} and {b.degree}")
        return a
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r'\s*(?:(\()|(\))|"([^"]*)"|([^\s()"]+))')


def _tokenize(text):
    pos = 0
    out = []
    while True:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            rest = text[pos:]
            if rest.strip():
                raise TermSyntaxError(f"unexpected character {rest.strip()[0]!r}", pos + len(rest) - len(rest.lstrip()))
            return out
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("(", None, start))
        elif m.group(2):
            out.append((")", None, start))
        elif m.group(3) is not None:
            out.append(("str", m.group(3), start))
        else:
            out.append(("atom", m.group(4), start))
        pos = m.end()


def _read(tokens, i):
    if i >= len(tokens):
        raise TermSyntaxError("unexpected end of input", tokens[-1][2] + 1 if tokens else 0)
    kind, val, pos = tokens[i]
    if kind == ")":
        raise TermSyntaxError("unexpected ')'", pos)
    if kind != "(":
        return (kind, val, pos), i + 1
    items = []
    i += 1
    while True:
        if i >= len(tokens):
            raise TermSyntaxError("unclosed '('", pos)
        if tokens[i][0] == ")":
            return ("list", items, pos), i + 1
        node, i = _read(tokens, i)
        items.append(node)


def _int(node):
    kind, val, pos = node
    if kind != "atom" or not re.fullmatch(r"-?\d+", val):
        raise TermSyntaxError(f"expected an integer, found {val!r}", pos)
    return int(val)


def _build(node, n):
    kind, val, pos = node
    if kind != "list":
        raise TermSyntaxError(f"expected a parenthesised term, found {val!r}", pos)
    if not val:
        raise TermSyntaxError("empty term", pos)
    head_kind, head, hpos = val[0]
    if head_kind != "atom":
        raise TermSyntaxError("term must start with a keyword", hpos)
    args = val[1:]

    def need(k):
        if len(args) != k:
            raise TermSyntaxError(f"'{head}' takes {k} arguments, got {len(args)}", pos)

    if head == "gen":
        if not args or args[0][0] != "atom":
            raise TermSyntaxError("missing generator name", pos)
        name = args[0][1]
        rest = args[1:]
        if name in ("startdot", "enddot", "merge", "split"):
            if len(rest) != 1:
                raise TermSyntaxError(f"{name} takes one color", pos)
            return Gen(G.GeneratorKind(name, _int(rest[0])))
        if name == "sixv":
            if len(rest) != 2 or rest[1][1] not in ("up", "down"):
                raise TermSyntaxError("sixv takes a color and up|down", pos)
            return Gen(G.GeneratorKind("sixv", _int(rest[0]), orientation=rest[1][1]))
        if name == "fourv":
            if len(rest) != 2:
                raise TermSyntaxError("fourv takes two colors", pos)
            return Gen(G.GeneratorKind("fourv", _int(rest[0]), _int(rest[1])))
        if name == "polybox":
            if len(rest) != 1 or rest[0][0] not in ("atom", "str"):
                raise TermSyntaxError("polybox takes one polynomial literal", pos)
            try:
                p = parse_poly(rest[0][1], n)
            except ValueError as exc:
                raise TermSyntaxError(f"bad polynomial: {exc}", rest[0][2]) from None
            if not p.is_homogeneous():
                raise TermSyntaxError("polybox polynomial must be homogeneous", rest[0][2])
            return Gen(G.GeneratorKind("polybox", poly=p))
        raise TermSyntaxError(f"unknown generator {name!r}", args[0][2])
    if head == "id":
        return Id(tuple(_int(a) for a in args))
    if head in ("vcomp", "hcomp", "sum"):
        if len(args) < 2:
            raise TermSyntaxError(f"'{head}' needs at least two terms", pos)
        parts = [_build(a, n) for a in args]
        ctor = {"vcomp": VComp, "hcomp": HComp, "sum": Sum}[head]
        out = parts[-1]
        for p in reversed(parts[:-1]):
            out = ctor(p, out)
        return out
    if head == "box":
        need(4)
        m, k = _int(args[0]), _int(args[1])
        return Box(m, k, _build(args[2], m), _build(args[3], k))
    if head == "shift":
        need(2)
        return Shift(_int(args[0]), _build(args[1], n))
    if head == "scale":
        need(2)
        qk, qv, qpos = args[0]
        try:
            q = Fraction(qv)
        except (TypeError, ValueError):
            raise TermSyntaxError(f"bad scalar {qv!r}", qpos) from None
        return ScalarMul(q, _build(args[1], n))
    raise TermSyntaxError(f"unknown keyword {head!r}", hpos)


def parse_term(text: str, n: int) -> Term:
    """Parse and type-check a term in ambient n."""
    tokens = _tokenize(text)
    if not tokens:
        raise TermSyntaxError("empty input", 0)
    node, i = _read(tokens, 0)
    if i != len(tokens):
        raise TermSyntaxError("trailing input", tokens[i][2])
    t = _build(node, n)
    term_type(t, n)
    return t


# ---------------------------------------------------------------------------
# evaluation

def evaluate_term(t: Term, n: int) -> BimodMorphism:
    term_type(t, n)
    return _eval(t, n)


def _eval(t, n):
    if isinstance(t, Gen):
        return G.generator_morphism(t.kind, n)
    if isinstance(t, Id):
        return identity(BSObject(n, t.word))
    if isinstance(t, VComp):
        return _eval(t.outer, n).compose(_eval(t.inner, n))
    if isinstance(t, HComp):
        return hcomp(_eval(t.left, n), _eval(t.right, n))
    if isinstance(t, Box):
        return boxtimes(_eval(t.left, t.m), _eval(t.right, t.n), t.m, t.n)
    if isinstance(t, Shift):
        f = _eval(t.body, n)
        return f.with_objects(f.source.shift(t.j), f.target.shift(t.j))
    if isinstance(t, ScalarMul):
        return _eval(t.body, n).scale(mpq(t.q.numerator, t.q.denominator))
    if isinstance(t, Sum):
        return _eval(t.left, n) + _eval(t.right, n)
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# relation suite

def _ids(n, *words):
    return [BSObject(n, tuple(w)) for w in words]


def _hc(n, *parts):
    """Horizontal composite; ints and tuples stand for identities of words."""
    conv = []
    for p in parts:
        if isinstance(p, int):
            conv.append(BSObject(n, (p,)))
        elif isinstance(p, tuple):
            conv.append(BSObject(n, p))
        else:
            conv.append(p)
    return hcomp_many(*conv)


def _chain(*maps):
    """maps[0] o maps[1] o ... (last applied first)."""
    out = maps[-1]
    for f in reversed(maps[:-1]):
        out = f.compose(out)
    return out


def _move_sequence(n, word, moves):
    """Compose local moves (position, morphism) applied to ``word`` in order."""
    cur = tuple(word)
    total = identity(BSObject(n, cur))
    for pos, f in moves:
        w = len(f.source.word)
        if cur[pos:pos + w] != f.source.word:
            raise ValueError(f"move {f.source.word}->{f.target.word} does not apply at {pos} in {cur}")
        step = _hc(n, cur[:pos], f, cur[pos + w:])
        total = step.compose(total)
        cur = cur[:pos] + f.target.word + cur[pos + w:]
    return total, cur


def _sixv_for(n, bottom):
    """Six-valent vertex with the given three-letter bottom word."""
    a, b, _ = bottom
    return G.sixv(n, min(a, b), "up" if a < b else "down")


def _crossing_left(n, letter, word):
    """Move ``letter`` (distant from all of ``word``) from the right end to the left end."""
    moves = []
    k = len(word)
    for pos in range(k - 1, -1, -1):
        moves.append((pos, G.fourv(n, word[pos], letter)))
    return _move_sequence(n, tuple(word) + (letter,), moves)[0]


def relation_instances(n: int):
    """Yield (case id, lhs thunk, rhs thunk) for every relation available in ambient n."""
    colors = range(1, n)
    for i in colors:
        Bi = BSObject(n, (i,))
        m, D, s, e = G.merge(n, i), G.split(n, i), G.startdot(n, i), G.enddot(n, i)
        yield f"frob/unit-left/{i}", lambda m=m, s=s, Bi=Bi: m.compose(hcomp(s, Bi)), lambda Bi=Bi: identity(Bi)
        yield f"frob/unit-right/{i}", lambda m=m, s=s, Bi=Bi: m.compose(hcomp(Bi, s)), lambda Bi=Bi: identity(Bi)
        yield f"frob/counit-left/{i}", lambda D=D, e=e, Bi=Bi: hcomp(e, Bi).compose(D), lambda Bi=Bi: identity(Bi)
        yield f"frob/counit-right/{i}", lambda D=D, e=e, Bi=Bi: hcomp(Bi, e).compose(D), lambda Bi=Bi: identity(Bi)
        yield f"frob/assoc/{i}", (lambda m=m, Bi=Bi: m.compose(hcomp(m, Bi))), (lambda m=m, Bi=Bi: m.compose(hcomp(Bi, m)))
        yield f"frob/coassoc/{i}", (lambda D=D, Bi=Bi: hcomp(D, Bi).compose(D)), (lambda D=D, Bi=Bi: hcomp(Bi, D).compose(D))
        yield f"frob/frobenius-left/{i}", (lambda m=m, D=D, Bi=Bi: hcomp(Bi, m).compose(hcomp(D, Bi))), (lambda m=m, D=D: D.compose(m))
        yield f"frob/frobenius-right/{i}", (lambda m=m, D=D, Bi=Bi: hcomp(m, Bi).compose(hcomp(Bi, D))), (lambda m=m, D=D: D.compose(m))
        yield f"frob/unit-map-formula/{i}", (lambda i=i: G.startdot_frobenius(n, i)), (lambda s=s: s)
        # polynomial forcing for x_k and a degree-2 sample
        samples = [Poly.var(n, k) for k in range(1, n + 1)]
        samples.append(Poly.var(n, i) * Poly.var(n, i) + Poly.var(n, 1) * Poly.var(n, n))
        for idx, p in enumerate(samples):
            def lhs(p=p, Bi=Bi):
                return hcomp(G.polybox(n, p), Bi)

            def rhs(p=p, Bi=Bi, i=i, s=s, e=e):
                a = hcomp(Bi, G.polybox(n, p.transpose(i)))
                dp = p.demazure(i)
                if dp.terms:
                    a = a + hcomp(G.polybox(n, dp), s.compose(e))
                return a
            yield f"polyforce/{i}/{idx}", lhs, rhs
        yield f"barbell/{i}", (lambda e=e, s=s: e.compose(s)), (lambda i=i: G.polybox(n, Poly.var(n, i) - Poly.var(n, i + 1)))
        yield f"needle/{i}", (lambda m=m, D=D: m.compose(D)), (lambda Bi=Bi: BimodMorphism(Bi, Bi, -2, {}, check=False))
        yield f"snake-left/{i}", (lambda i=i, Bi=Bi: hcomp(Bi, G.cap(n, i)).compose(hcomp(G.cup(n, i), Bi))), (lambda Bi=Bi: identity(Bi))
        yield f"snake-right/{i}", (lambda i=i, Bi=Bi: hcomp(G.cap(n, i), Bi).compose(hcomp(Bi, G.cup(n, i)))), (lambda Bi=Bi: identity(Bi))
        # rotating merge into split by a cup and a cap
        yield f"rotate-trivalent/{i}", (
            lambda i=i, m=m: _chain(_hc(n, m, i), _hc(n, i, G.cup(n, i)))), (lambda D=D: D)

    # two adjacent colors
    for i in range(1, n - 1):
        for b, r in ((i, i + 1), (i + 1, i)):
            V = _sixv_for(n, (b, r, b))       # b r b -> r b r
            W = _sixv_for(n, (r, b, r))       # r b r -> b r b
            tag = f"{b},{r}"

            def dot_lhs(V=V, b=b, r=r):
                return _hc(n, r, G.enddot(n, b), r).compose(V)

            def dot_rhs(b=b, r=r):
                t1 = _chain(G.cup(n, r), G.cap(n, b), _hc(n, b, G.enddot(n, r), b))
                t2 = _chain(G.split(n, r), _hc(n, G.enddot(n, b), r, G.enddot(n, b)))
                return t1 + t2
            yield f"comp/dot-sixv/{tag}", dot_lhs, dot_rhs

            def assoc_lhs(V=V, b=b, r=r):
                return V.compose(_hc(n, b, G.merge(n, r), b))

            def assoc_rhs(V=V, b=b, r=r):
                return _chain(_hc(n, r, G.merge(n, b), r),
                              _hc(n, (r, b), G.cap(n, r), (b, r)),
                              _hc(n, V, V),
                              _hc(n, (b, r), G.cup(n, b), (r, b)))
            yield f"comp/merge-sixv/{tag}", assoc_lhs, assoc_rhs

            def rot_lhs(V=V, b=b, r=r):
                return _chain(_hc(n, (b, r, b), G.cap(n, r)), _hc(n, b, V, r), _hc(n, G.cup(n, b), (r, b, r)))
            yield f"rotate-sixv/{tag}", rot_lhs, (lambda W=W: W)

    # distant colors
    for g in colors:
        for b in colors:
            if abs(g - b) < 2:
                continue
            F, Fr = G.fourv(n, g, b), G.fourv(n, b, g)
            tag = f"{g},{b}"
            yield f"comp/dot-fourv/{tag}", (lambda F=F, g=g, b=b: _hc(n, b, G.enddot(n, g)).compose(F)), \
                (lambda g=g, b=b: _hc(n, G.enddot(n, g), b))
            yield f"comp/merge-fourv/{tag}", (lambda F=F, g=g, b=b: F.compose(_hc(n, G.merge(n, g), b))), \
                (lambda F=F, g=g, b=b: _chain(_hc(n, b, G.merge(n, g)), _hc(n, F, g), _hc(n, g, F)))
            yield f"reidemeister2/{tag}", (lambda F=F, Fr=Fr: Fr.compose(F)), (lambda g=g, b=b: identity(BSObject(n, (g, b))))
            yield f"rotate-fourv/{tag}", (lambda Fr=Fr, g=g, b=b: _chain(
                _hc(n, (b, g), G.cap(n, b)), _hc(n, b, Fr, b), _hc(n, G.cup(n, b), (g, b)))), (lambda F=F: F)

    # parabolic relations
    for b in colors:
        for g in colors:
            for p in colors:
                if min(abs(b - g), abs(b - p), abs(g - p)) < 2 or len({b, g, p}) < 3:
                    continue

                def z3_lhs(b=b, g=g, p=p):
                    return _move_sequence(n, (b, g, p), [(0, G.fourv(n, b, g)), (1, G.fourv(n, b, p)),
                                                         (0, G.fourv(n, g, p))])[0]

                def z3_rhs(b=b, g=g, p=p):
                    return _move_sequence(n, (b, g, p), [(1, G.fourv(n, g, p)), (0, G.fourv(n, b, p)),
                                                         (1, G.fourv(n, b, g))])[0]
                yield f"para/A1xA1xA1/{b},{g},{p}", z3_lhs, z3_rhs
    for i in range(1, n - 1):
        for b, r in ((i, i + 1), (i + 1, i)):
            for o in colors:
                if abs(o - i) < 2 or abs(o - i - 1) < 2:
                    continue

                def a12_lhs(b=b, r=r, o=o):
                    V = _sixv_for(n, (b, r, b))
                    return _crossing_left(n, o, (r, b, r)).compose(hcomp(V, BSObject(n, (o,))))

                def a12_rhs(b=b, r=r, o=o):
                    V = _sixv_for(n, (b, r, b))
                    return hcomp(BSObject(n, (o,)), V).compose(_crossing_left(n, o, (b, r, b)))
                yield f"para/A1xA2/{b},{r},{o}", a12_lhs, a12_rhs
    for i in range(1, n - 2):
        for (g, bl, r) in ((i, i + 1, i + 2), (i + 2, i + 1, i)):
            yield f"para/A3/{g},{bl},{r}", (lambda g=g, bl=bl, r=r: _zamolodchikov(n, g, bl, r, False)), \
                (lambda g=g, bl=bl, r=r: _zamolodchikov(n, g, bl, r, True))


def _zamolodchikov(n, g, b, r, mirrored):
    """One side of the A3 relation, from g b r g b g up to r b r g b r."""
    bottom = (g, b, r, g, b, g)
    moves = [(2, (r, g)), (0, (g, b, g)), (2, (b, r, b)), (1, (g, r)), (4, (r, g)),
             (2, (g, b, g)), (0, (b, r, b))]

    def gen(src):
        return G.fourv(n, *src) if len(src) == 2 else _sixv_for(n, src)

    if not mirrored:
        return _move_sequence(n, bottom, [(p, gen(s)) for p, s in moves])[0]
    # mirror image: positions reflected, local source words reversed; the reflected
    # boundary differs from the original by a distant crossing at both ends
    mmoves = [(6 - p - len(s), gen(tuple(reversed(s)))) for p, s in moves]
    fix_in = [(2, G.fourv(n, r, g))]
    body, top = _move_sequence(n, bottom, fix_in + mmoves)
    if top != (r, b, r, g, b, r):
        fix_out = [(2, G.fourv(n, top[2], top[3]))]
        body = _move_sequence(n, top, fix_out)[0].compose(body)
    return body


def run_relation_suite(n: int):
    """Evaluate both sides of every relation instance; returns a list of result dicts."""
    results = []
    for case, lhs, rhs in relation_instances(n):
        t0 = time.perf_counter()
        status, details = "pass", ""
        try:
            a, b = lhs(), rhs()
            if a.source != b.source or a.target != b.target:
                status, details = "fail", f"boundary mismatch {a.source}->{a.target} vs {b.source}->{b.target}"
            elif a.cols != b.cols:
                status = "fail"
                details = "lhs:\n" + a.render() + "\nrhs:\n" + b.render()
        except Exception as exc:  # noqa: BLE001 - reported per case
            status, details = "error", f"{type(exc).__name__}: {exc}"
        results.append({"suite": "relations", "case": f"n={n}/{case}", "status": status,
                        "runtime_ms": round((time.perf_counter() - t0) * 1000, 3), "details": details})
    return results
