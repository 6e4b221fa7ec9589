"""Bott-Samelson bimodules as free left modules with a computed right action.

B_w for a word w = (i_1, ..., i_k) in ambient n is
R (x)_{R^{i_1}} R (x)_{R^{i_2}} ... (x)_{R^{i_k}} R.  As a left R-module it is
free on the elements [1 (x) z_1 (x) ... (x) z_k] with z_t in {1, x_{i_t}}.
A basis element is stored as an int whose bit t-1 records z_t = x_{i_t}.
Elements are dicts {bits: Poly} of left coefficients.

Morphisms are left-linear maps stored by the images of basis elements.  Being
a bimodule map is a checkable property (``BimodMorphism.check_bimodule``), not
an invariant of the representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from gmpy2 import mpq

from .poly import Poly, VarShift

__all__ = [
    "BSObject",
    "BimodElement",
    "BimodMorphism",
    "CertificateError",
    "basis_times_poly",
    "elem_times_poly",
    "normal_form",
    "right_action",
    "identity",
    "zero_morphism",
    "hcomp",
    "hcomp_many",
    "shift_morphism",
    "boxtimes",
    "tensorator",
    "far_commute",
    "swap_mn",
    "r_x",
    "r_yz",
    "transport",
]


class CertificateError(RuntimeError):
    """A constructed map failed its bimodule-map certificate."""


@dataclass(frozen=True)
class BSObject:
    n: int
    word: tuple = ()
    qshift: int = 0

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(int(i) for i in self.word))
        for i in self.word:
            if not 1 <= i <= self.n - 1:
                raise ValueError(f"color {i} out of range for n={self.n}")

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def rank(self) -> int:
        return 1 << len(self.word)

    def basis(self):
        return range(1 << len(self.word))

    def degree_of(self, bits: int) -> int:
        return 2 * bin(bits).count("1") - len(self.word) + self.qshift

    def shift(self, j: int) -> "BSObject":
        return BSObject(self.n, self.word, self.qshift + j)

    def unshifted(self) -> "BSObject":
        return BSObject(self.n, self.word, 0)

    def concat(self, other: "BSObject") -> "BSObject":
        if other.n != self.n:
            raise ValueError(f"ambient mismatch {self.n} vs {other.n}")
        return BSObject(self.n, self.word + other.word, self.qshift + other.qshift)

    def basis_label(self, bits: int) -> str:
        slots = ["1"] + [f"x{i}" if bits >> t & 1 else "1" for t, i in enumerate(self.word)]
        return "[" + "⊗".join(slots) + "]"

    def __str__(self):
        s = f"B[{','.join(map(str, self.word))}]"
        if self.qshift:
            s += f"<{self.qshift}>"
        return s + f"@n={self.n}"


# ---------------------------------------------------------------------------
# right action and normal form

_RA_CACHE: dict = {}


def _add_into(acc: dict, key, val: Poly):
    cur = acc.get(key)
    if cur is None:
        acc[key] = val
    else:
        s = cur + val
        if s.terms:
            acc[key] = s
        else:
            del acc[key]


def basis_times_poly(n: int, word: tuple, bits: int, p: Poly) -> dict:
    """Normal form of (basis element ``bits`` of B_word) * p."""
    if not p.terms:
        return {}
    if p.is_constant():
        return {bits: p}
    if not word:
        return {0: p}
    key = (n, word, bits, p)
    hit = _RA_CACHE.get(key)
    if hit is not None:
        return hit
    k = len(word)
    i = word[-1]
    top = 1 << (k - 1)
    prefix = word[:-1]
    pre_bits = bits & (top - 1)
    q = Poly.var(n, i) * p if bits & top else p
    a, c = q.invariant_decompose(i)
    out: dict = {}
    if a.terms:
        for b, v in basis_times_poly(n, prefix, pre_bits, a).items():
            _add_into(out, b, v)
    if c.terms:
        for b, v in basis_times_poly(n, prefix, pre_bits, c).items():
            _add_into(out, b | top, v)
    _RA_CACHE[key] = out
    return out


def elem_times_poly(n: int, word: tuple, elem: dict, p: Poly) -> dict:
    out: dict = {}
    for b, coeff in elem.items():
        for b2, v in basis_times_poly(n, word, b, p).items():
            _add_into(out, b2, coeff * v)
    return out


def elem_add(a: dict, b: dict, scale=None) -> dict:
    out = dict(a)
    for k, v in b.items():
        _add_into(out, k, v if scale is None else v * scale)
    return out


def elem_left(p, elem: dict) -> dict:
    out = {}
    for k, v in elem.items():
        w = v * p
        if w.terms:
            out[k] = w
    return out


class BimodElement:
    """An element of a Bott-Samelson bimodule in left normal form."""

    __slots__ = ("obj", "coeffs")

    def __init__(self, obj: BSObject, coeffs: dict):
        self.obj = obj
        self.coeffs = {b: v for b, v in coeffs.items() if v.terms}

    def __eq__(self, other):
        return isinstance(other, BimodElement) and self.obj == other.obj and self.coeffs == other.coeffs

    def __add__(self, other):
        return BimodElement(self.obj, elem_add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return BimodElement(self.obj, elem_add(self.coeffs, other.coeffs, mpq(-1)))

    def left(self, p: Poly):
        return BimodElement(self.obj, elem_left(p, self.coeffs))

    def right(self, p: Poly):
        return BimodElement(self.obj, elem_times_poly(self.obj.n, self.obj.word, self.coeffs, p))

    def is_zero(self):
        return not self.coeffs

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for b in sorted(self.coeffs):
            parts.append(f"({self.coeffs[b]})·{self.obj.basis_label(b)}")
        return " + ".join(parts)

    __repr__ = __str__


def normal_form(obj: BSObject, tensors) -> BimodElement:
    """Normal form of a sum of pure tensors f_0 (x) f_1 (x) ... (x) f_k.

    ``tensors`` is a list of pure tensors, each a sequence of k+1 polynomials
    (k = len(obj.word)); an optional leading scalar may be given as
    ``(c, [f_0, ..., f_k])``.
    """
    n, word = obj.n, obj.word
    total: dict = {}
    for t in tensors:
        c = 1
        if isinstance(t, tuple) and len(t) == 2 and not isinstance(t[0], Poly):
            c, t = t
        t = list(t)
        if len(t) != len(word) + 1:
            raise ValueError(f"pure tensor has {len(t)} slots, word needs {len(word) + 1}")
        for f in t:
            if f.n != n:
                raise ValueError("tensor factor in the wrong ambient ring")
        elem = {0: t[0] * c} if (t[0] * c).terms else {}
        for s in range(1, len(t)):
            elem = elem_times_poly(n, word[:s], elem, t[s])
        total = elem_add(total, elem)
    return BimodElement(obj, total)


def right_action(e: BimodElement, j: int) -> BimodElement:
    return e.right(Poly.var(e.obj.n, j))


# ---------------------------------------------------------------------------
# morphisms


class BimodMorphism:
    """Left-linear map between Bott-Samelson bimodules, stored by columns.

    ``cols[s]`` is the image of source basis element ``s`` as a dict
    {target bits: Poly}.  ``degree`` is the quantum degree with respect to the
    shifted gradings of source and target.
    """

    __slots__ = ("source", "target", "degree", "cols")

    def __init__(self, source: BSObject, target: BSObject, degree: int, cols: dict, check=True):
        if source.n != target.n:
            raise ValueError("source and target live in different ambients")
        self.source = source
        self.target = target
        self.degree = degree
        self.cols = {s: col for s, col in cols.items() if col}
        if check:
            self._check_degrees()

    def _check_degrees(self):
        for s, col in self.cols.items():
            ds = self.source.degree_of(s) + self.degree
            for t, p in col.items():
                dp = p.degree()
                if dp + self.target.degree_of(t) != ds:
                    raise ValueError(
                        f"entry ({t},{s}) = {p} has the wrong degree for a degree-{self.degree} map "
                        f"{self.source} -> {self.target}")

    @property
    def n(self):
        return self.source.n

    def image(self, s: int) -> dict:
        return self.cols.get(s, {})

    def apply(self, elem: dict) -> dict:
        out: dict = {}
        for s, coeff in elem.items():
            for t, p in self.cols.get(s, {}).items():
                _add_into(out, t, coeff * p)
        return out

    def is_zero(self):
        return not self.cols

    def __eq__(self, other):
        if not isinstance(other, BimodMorphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and (self.degree == other.degree or (not self.cols and not other.cols))
                and self.cols == other.cols)

    def __hash__(self):
        return hash((self.source, self.target, self.degree, len(self.cols)))

    def _same_type(self, other):
        if self.source != other.source or self.target != other.target:
            raise ValueError(f"cannot add maps {self.source}->{self.target} and "
                             f"{other.source}->{other.target}")
        if self.degree != other.degree and self.cols and other.cols:
            raise ValueError("cannot add maps of different degrees")

    def __add__(self, other):
        self._same_type(other)
        cols = {s: dict(c) for s, c in self.cols.items()}
        for s, col in other.cols.items():
            cols[s] = elem_add(cols.get(s, {}), col)
        deg = self.degree if self.cols else other.degree
        return BimodMorphism(self.source, self.target, deg, cols, check=False)

    def scale(self, c):
        c = mpq(c)
        if not c:
            return BimodMorphism(self.source, self.target, self.degree, {}, check=False)
        return BimodMorphism(self.source, self.target, self.degree,
                             {s: {t: p.scale(c) for t, p in col.items()} for s, col in self.cols.items()},
                             check=False)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        return self.scale(c)

    def left_mul(self, p: Poly, degree_change: int | None = None):
        """Post-multiply on the left by a polynomial (left multiplication in the target)."""
        dp = p.degree() if p.terms else 0
        cols = {s: elem_left(p, col) for s, col in self.cols.items()}
        return BimodMorphism(self.source, self.target, self.degree + dp, cols, check=False)

    def compose(self, other: "BimodMorphism") -> "BimodMorphism":
        """self ∘ other (vertical composition)."""
        if other.target != self.source:
            raise ValueError(f"cannot compose: {other.target} != {self.source}")
        cols = {}
        mine = self.cols
        for s, col in other.cols.items():
            out: dict = {}
            for m, p in col.items():
                for t, q in mine.get(m, {}).items():
                    _add_into(out, t, p * q)
            if out:
                cols[s] = out
        return BimodMorphism(other.source, self.target, self.degree + other.degree, cols, check=False)

    __matmul__ = compose

    def with_objects(self, source: BSObject, target: BSObject) -> "BimodMorphism":
        """Reinterpret between shifted copies of the same words (degree recomputed)."""
        if source.word != self.source.word or target.word != self.target.word:
            raise ValueError("with_objects only changes shifts")
        deg = self.degree + (target.qshift - self.target.qshift) - (source.qshift - self.source.qshift)
        return BimodMorphism(source, target, deg, self.cols, check=False)

    def entries(self):
        for s, col in self.cols.items():
            for t, p in col.items():
                yield t, s, p

    def check_bimodule(self, raise_error=True) -> bool:
        """Certificate: f(b * x_j) == f(b) * x_j for all basis b and all j."""
        n = self.n
        sw, tw = self.source.word, self.target.word
        for j in range(1, n + 1):
            xj = Poly.var(n, j)
            for s in self.source.basis():
                lhs = self.apply(basis_times_poly(n, sw, s, xj))
                rhs = elem_times_poly(n, tw, self.cols.get(s, {}), xj)
                if lhs != rhs:
                    if raise_error:
                        raise CertificateError(
                            f"map {self.source} -> {self.target} fails right x{j} commutation on "
                            f"{self.source.basis_label(s)}")
                    return False
        return True

    def matrix_rows(self):
        """Dense row-major matrix (target basis x source basis) of Polys."""
        z = Poly.zero(self.n)
        return [[self.cols.get(s, {}).get(t, z) for s in self.source.basis()]
                for t in self.target.basis()]

    def render(self) -> str:
        lines = [f"{self.source} -> {self.target} (degree {self.degree})"]
        for t, s, p in sorted(self.entries()):
            lines.append(f"  {self.source.basis_label(s)} -> ({p})·{self.target.basis_label(t)}")
        if len(lines) == 1:
            lines.append("  0")
        return "\n".join(lines)

    def __repr__(self):
        return f"<BimodMorphism {self.source} -> {self.target} deg {self.degree}, {len(self.cols)} cols>"


def identity(obj: BSObject) -> BimodMorphism:
    one = Poly.one(obj.n)
    return BimodMorphism(obj, obj, 0, {b: {b: one} for b in obj.basis()}, check=False)


def zero_morphism(source: BSObject, target: BSObject, degree: int = 0) -> BimodMorphism:
    return BimodMorphism(source, target, degree, {}, check=False)


def from_images(source: BSObject, target: BSObject, images: dict, degree=None) -> BimodMorphism:
    """Build a morphism from images (BimodElement or dict) of source basis elements."""
    cols = {}
    for s, img in images.items():
        cols[s] = img.coeffs if isinstance(img, BimodElement) else img
    if degree is None:
        degree = None
        for s, col in cols.items():
            for t, p in col.items():
                degree = p.degree() + target.degree_of(t) - source.degree_of(s)
                break
            if degree is not None:
                break
        if degree is None:
            raise ValueError("cannot infer the degree of the zero map")
    return BimodMorphism(source, target, degree, cols)


# ---------------------------------------------------------------------------
# horizontal composition

def _whisker_left_cols(n, left_word, f: BimodMorphism, shift_target_word):
    """Columns of id_{B_left} ∘₁ f."""
    lu = len(left_word)
    cols = {}
    for a in range(1 << lu):
        for b, col in f.cols.items():
            out: dict = {}
            for b2, q in col.items():
                hi = b2 << lu
                for a2, v in basis_times_poly(n, left_word, a, q).items():
                    _add_into(out, a2 | hi, v)
            if out:
                cols[a | (b << lu)] = out
    return cols


def hcomp(f, g):
    """Horizontal composition f ∘₁ g (tensor product over R_n)."""
    if isinstance(f, BSObject) and isinstance(g, BSObject):
        return f.concat(g)
    if isinstance(f, BSObject):
        f = identity(f)
    if isinstance(g, BSObject):
        g = identity(g)
    if f.n != g.n:
        raise ValueError(f"ambient mismatch {f.n} vs {g.n}")
    n = f.n
    src = f.source.concat(g.source)
    tgt = f.target.concat(g.target)
    deg = f.degree + g.degree
    lu_s, lu_t = f.source.length, f.target.length
    g_is_id = g.source == g.target and g.cols == identity(g.source).cols
    f_is_id = f.source == f.target and f.cols == identity(f.source).cols
    if f_is_id:
        cols = _whisker_left_cols(n, f.source.word, g, None)
        return BimodMorphism(src, tgt, deg, cols, check=False)
    if g_is_id:
        cols = {}
        for a, col in f.cols.items():
            for b in g.source.basis():
                cols[a | (b << lu_s)] = {a2 | (b << lu_t): p for a2, p in col.items()}
        return BimodMorphism(src, tgt, deg, cols, check=False)
    # general: (f ⊗ id) ∘ (id ⊗ g)
    left = hcomp(identity(f.source), g)
    right = hcomp(f, identity(g.target))
    return right.compose(left)


def hcomp_many(*items):
    out = items[0]
    for it in items[1:]:
        out = hcomp(out, it)
    return out


# ---------------------------------------------------------------------------
# variable/color shifts, boxtimes, swap, symmetries

def shift_object(obj: BSObject, a: int, c: int) -> BSObject:
    return BSObject(obj.n + a + c, tuple(i + a for i in obj.word), obj.qshift)


def shift_morphism(f: BimodMorphism, a: int, c: int) -> BimodMorphism:
    """Apply j_{a|c}: colors and variables shifted up by a, ambient grown by a + c."""
    s = VarShift(a, c)
    cols = {b: {t: p.shift(s) for t, p in col.items()} for b, col in f.cols.items()}
    return BimodMorphism(shift_object(f.source, a, c), shift_object(f.target, a, c), f.degree, cols,
                         check=False)


def boxtimes(a, b, m: int, n: int):
    """a ⊠ b = j_{0|n}(a) ∘₁ j_{m|0}(b) for a in ambient m and b in ambient n."""
    if isinstance(a, BSObject) and isinstance(b, BSObject):
        if a.n != m or b.n != n:
            raise ValueError("ambient mismatch in boxtimes")
        return shift_object(a, 0, n).concat(shift_object(b, m, 0))
    if isinstance(a, BSObject):
        a = identity(a)
    if isinstance(b, BSObject):
        b = identity(b)
    if a.n != m or b.n != n:
        raise ValueError("ambient mismatch in boxtimes")
    return hcomp(shift_morphism(a, 0, n), shift_morphism(b, m, 0))


def transport(f: BimodMorphism, perm, signs, color_map, n_out=None) -> BimodMorphism:
    """Transport a morphism along a signed variable permutation.

    The ring map x_i -> signs[i-1] * x_{perm[i-1]} must carry R^{s_c} onto
    R^{s_{color_map(c)}} for every color c used.
    """
    n = f.n
    n_out = n if n_out is None else n_out
    inv = [0] * n_out
    for k, p in enumerate(perm):
        inv[p - 1] = k + 1
    inv_signs = [signs[inv[k] - 1] for k in range(n_out)] if signs else None

    def fwd(p):
        return p.permute(perm, n_out, signs)

    def bwd(p):
        return p.permute(inv, n, inv_signs)

    def phi(obj_from, obj_to, ring_map, bits):
        slots = [Poly.one(obj_to.n)]
        for t, i in enumerate(obj_from.word):
            slots.append(ring_map(Poly.var(obj_from.n, i)) if bits >> t & 1 else Poly.one(obj_to.n))
        return normal_form(obj_to, [slots]).coeffs

    src2 = BSObject(n_out, tuple(color_map(i) for i in f.source.word), f.source.qshift)
    tgt2 = BSObject(n_out, tuple(color_map(i) for i in f.target.word), f.target.qshift)
    tgt_phi = {}
    cols = {}
    for c in src2.basis():
        pre = phi(src2, f.source, bwd, c)  # element of B_source
        img = f.apply(pre)
        out: dict = {}
        for t, q in img.items():
            if t not in tgt_phi:
                tgt_phi[t] = phi(f.target, tgt2, fwd, t)
            fq = fwd(q)
            for t2, v in tgt_phi[t].items():
                _add_into(out, t2, fq * v)
        if out:
            cols[c] = out
    return BimodMorphism(src2, tgt2, f.degree, cols, check=False)


def r_x(f: BimodMorphism) -> BimodMorphism:
    """Covariant symmetry c_i -> c_{n-i}, x_i -> -x_{n+1-i}."""
    n = f.n
    perm = [n + 1 - i for i in range(1, n + 1)]
    return transport(f, perm, [-1] * n, lambda c: n - c)


def r_x_object(obj: BSObject) -> BSObject:
    return BSObject(obj.n, tuple(obj.n - i for i in obj.word), obj.qshift)


def _swap_perm(m, n):
    return [n + i for i in range(1, m + 1)] + [j for j in range(1, n + 1)]


def _swap_color(m, n):
    def cmap(c):
        if c < m:
            return c + n
        if c > m:
            return c - m
        raise ValueError(f"swap_{{{m},{n}}} is undefined on color c_{m}")
    return cmap


def swap_mn(x, m: int, n: int):
    """The swap functor D_{m,n} -> D_{n,m} on objects, morphisms and polynomials."""
    cmap = _swap_color(m, n)
    perm = _swap_perm(m, n)
    if isinstance(x, Poly):
        return x.permute(perm)
    if isinstance(x, BSObject):
        if x.n != m + n:
            raise ValueError("object not in ambient m+n")
        return BSObject(x.n, tuple(cmap(i) for i in x.word), x.qshift)
    if x.n != m + n:
        raise ValueError("morphism not in ambient m+n")
    for w in (x.source.word, x.target.word):
        for c in w:
            cmap(c)
    # basis elements map to basis elements, so entries just get relabelled
    src = swap_mn(x.source, m, n)
    tgt = swap_mn(x.target, m, n)
    cols = {b: {t: p.permute(perm) for t, p in col.items()} for b, col in x.cols.items()}
    return BimodMorphism(src, tgt, x.degree, cols, check=False)


# cups and caps are needed by r_yz; the generator module supplies them lazily

def _cup(n, i):
    from .generators import cup
    return cup(n, i)


def _cap(n, i):
    from .generators import cap
    return cap(n, i)


def _nested_cup(n, word):
    """R -> B_{rev w} B_w, nested cups (outermost pairs the last letter)."""
    f = identity(BSObject(n, ()))
    for idx in range(len(word) - 1, -1, -1):
        tail = word[idx + 1:]
        f = hcomp_many(BSObject(n, tuple(reversed(tail))), _cup(n, word[idx]),
                       BSObject(n, tail)).compose(f)
    return f


def _nested_cap(n, word):
    """B_w B_{rev w} -> R, nested caps (innermost pairs the last letter)."""
    f = identity(BSObject(n, word + tuple(reversed(word))))
    for idx in range(len(word) - 1, -1, -1):
        left = word[:idx]
        f = hcomp_many(BSObject(n, left), _cap(n, word[idx]),
                       BSObject(n, tuple(reversed(left)))).compose(f)
    return f


def r_yz(f: BimodMorphism) -> BimodMorphism:
    """Contravariant rotation by pi: f: B_u<a> -> B_v<b> becomes B_{rev v}<-b> -> B_{rev u}<-a>."""
    n = f.n
    u, v = f.source.word, f.target.word
    ru, rv = tuple(reversed(u)), tuple(reversed(v))
    base = BimodMorphism(f.source.unshifted(), f.target.unshifted(),
                         f.degree - f.target.qshift + f.source.qshift, f.cols, check=False)
    cup_u = _nested_cup(n, u)                     # R -> B_{ru} B_u
    cap_v = _nested_cap(n, v)                     # B_v B_{rv} -> R
    step1 = hcomp(cup_u, BSObject(n, rv))         # B_rv -> B_ru B_u B_rv
    step2 = hcomp_many(BSObject(n, ru), base, BSObject(n, rv))
    step3 = hcomp(BSObject(n, ru), cap_v)
    g = step3.compose(step2).compose(step1)
    src = BSObject(n, rv, -f.target.qshift)
    tgt = BSObject(n, ru, -f.source.qshift)
    return g.with_objects(src, tgt)


def far_commute(n: int, u, v) -> BimodMorphism:
    """B_u B_v -> B_v B_u for words whose colors are pairwise distant, via four-valent vertices."""
    from .generators import fourv
    u, v = tuple(u), tuple(v)
    for a in u:
        for b in v:
            if abs(a - b) < 2:
                raise ValueError(f"colors {a} and {b} are not distant")
    cur = list(u + v)
    f = identity(BSObject(n, tuple(cur)))
    # move each letter of v leftwards past all letters of u
    for idx in range(len(v)):
        pos = len(u) + idx
        while pos > idx:
            left = BSObject(n, tuple(cur[:pos - 1]))
            right = BSObject(n, tuple(cur[pos + 1:]))
            f = hcomp_many(left, fourv(n, cur[pos - 1], cur[pos]), right).compose(f)
            cur[pos - 1], cur[pos] = cur[pos], cur[pos - 1]
            pos -= 1
    return f


def tensorator(word_i, word_j, m: int, n: int) -> BimodMorphism:
    """(c_i ⊠ 1) ∘₁ (1 ⊠ c_j) -> (1 ⊠ c_j) ∘₁ (c_i ⊠ 1), built from four-valent vertices."""
    for c in word_i:
        if not 1 <= c <= m - 1:
            raise ValueError(f"color {c} is not a color of D_{m}")
    for c in word_j:
        if not 1 <= c <= n - 1:
            raise ValueError(f"color {c} is not a color of D_{n}")
    return far_commute(m + n, tuple(word_i), tuple(c + m for c in word_j))


def all_bits(k):
    return range(1 << k)


def product_bits(*lens):
    return product(*(range(1 << k) for k in lens))
