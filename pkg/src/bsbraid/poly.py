"""Exact polynomials in x_1..x_n over the rationals.

Coefficients are ``gmpy2.mpq``.  A polynomial is a sparse map from exponent
tuples to nonzero coefficients and always carries its variable count ``n``;
combining polynomials with different ``n`` raises ``ValueError``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from gmpy2 import mpq

__all__ = ["Poly", "VarShift", "parse_poly", "demazure_monomial"]

_ZERO = mpq(0)
_ONE = mpq(1)


def as_coeff(c) -> mpq:
    if type(c) is mpq:
        return c
    if isinstance(c, Fraction):
        return mpq(c.numerator, c.denominator)
    return mpq(c)


class VarShift:
    """The variable shift j_{a|c}: x_i -> x_{i+a}, ambient n -> a + n + c."""

    __slots__ = ("a", "c")

    def __init__(self, a: int = 0, c: int = 0):
        if a < 0 or c < 0:
            raise ValueError("shift pads must be nonnegative")
        self.a = a
        self.c = c

    def __repr__(self):
        return f"VarShift({self.a}|{self.c})"

    def then(self, other: "VarShift") -> "VarShift":
        """Composite: apply self first, then other."""
        return VarShift(self.a + other.a, self.c + other.c)


class Poly:
    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms=None, _trusted: bool = False):
        if n < 0:
            raise ValueError("variable count must be nonnegative")
        self.n = n
        self._hash = None
        if terms is None:
            self.terms = {}
        elif _trusted:
            self.terms = terms
        else:
            clean = {}
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n or any(k < 0 for k in e):
                    raise ValueError(f"bad exponent {e} for n={n}")
                c = as_coeff(c)
                if c:
                    clean[e] = clean.get(e, _ZERO) + c
                    if not clean[e]:
                        del clean[e]
            self.terms = clean

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, n):
        return cls(n, {}, True)

    @classmethod
    def const(cls, n, c=1):
        c = as_coeff(c)
        return cls(n, {(0,) * n: c} if c else {}, True)

    @classmethod
    def one(cls, n):
        return cls.const(n, 1)

    @classmethod
    def var(cls, n, i):
        if not 1 <= i <= n:
            raise ValueError(f"variable x{i} out of range for n={n}")
        e = [0] * n
        e[i - 1] = 1
        return cls(n, {tuple(e): _ONE}, True)

    @classmethod
    def monomial(cls, n, exps, c=1):
        return cls(n, {tuple(exps): c})

    # -- basic protocol -----------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)) or type(other) is mpq:
            return self == Poly.const(self.n, other)
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((self.n, frozenset(self.terms.items())))
        return h

    def _check(self, other):
        if other.n != self.n:
            raise ValueError(f"mixed variable counts {self.n} and {other.n}")

    def _coerce(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.const(self.n, other)

    def __add__(self, other):
        other = self._coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e)
            if v is None:
                t[e] = c
            else:
                v = v + c
                if v:
                    t[e] = v
                else:
                    del t[e]
        return Poly(self.n, t, True)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.n, {e: -c for e, c in self.terms.items()}, True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        c = as_coeff(c)
        if not c:
            return Poly(self.n, {}, True)
        if c == 1:
            return self
        return Poly(self.n, {e: v * c for e, v in self.terms.items()}, True)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly(self.n, {}, True)
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (eb, cb), = b.items()
            if not any(eb):
                return Poly(self.n, {e: c * cb for e, c in a.items()}, True) if cb != 1 else (
                    self if self.terms is a else other)
        t = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = t.get(e)
                if v is None:
                    t[e] = c1 * c2
                else:
                    v = v + c1 * c2
                    if v:
                        t[e] = v
                    else:
                        del t[e]
        return Poly(self.n, t, True)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Poly.one(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- grading --------------------------------------------------------
    def degree(self):
        """Graded degree (deg x_i = 2) of a homogeneous polynomial; None for 0."""
        if not self.terms:
            return None
        degs = {2 * sum(e) for e in self.terms}
        if len(degs) != 1:
            raise ValueError(f"polynomial {self} is not homogeneous")
        return degs.pop()

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self):
        return self.terms.get((0,) * self.n, _ZERO)

    # -- symmetric group and Demazure -----------------------------------
    def _idx(self, i):
        if not 1 <= i <= self.n - 1:
            raise ValueError(f"reflection index {i} out of range for n={self.n}")

    def transpose(self, i: int) -> "Poly":
        """s_i: swap x_i and x_{i+1}."""
        self._idx(i)
        a = i - 1
        t = {}
        for e, c in self.terms.items():
            if e[a] != e[a + 1]:
                e = e[:a] + (e[a + 1], e[a]) + e[a + 2:]
            t[e] = c
        return Poly(self.n, t, True)

    def is_invariant(self, i: int) -> bool:
        return self.transpose(i) == self

    def demazure(self, i: int) -> "Poly":
        """(p - s_i p) / (x_i - x_{i+1}), computed monomial by monomial."""
        self._idx(i)
        a = i - 1
        t = {}
        for e, c in self.terms.items():
            p, q = e[a], e[a + 1]
            if p == q:
                continue
            for (u, v), s in demazure_monomial(p, q):
                f = e[:a] + (u, v) + e[a + 2:]
                val = t.get(f, _ZERO) + c * s
                if val:
                    t[f] = val
                else:
                    t.pop(f, None)
        return Poly(self.n, t, True)

    def invariant_decompose(self, i: int):
        """Return (a, b), both s_i-invariant, with p = a + x_i * b."""
        b = self.demazure(i)
        if not b.terms:
            return self, b
        return self - Poly.var(self.n, i) * b, b

    # -- ring maps ------------------------------------------------------
    def shift(self, s: VarShift) -> "Poly":
        pre, post = (0,) * s.a, (0,) * s.c
        return Poly(self.n + s.a + s.c,
                    {pre + e + post: c for e, c in self.terms.items()}, True)

    def permute(self, perm, n_out=None, signs=None) -> "Poly":
        """Ring map x_i -> sign_i * x_{perm[i-1]} (perm is 1-based images)."""
        n_out = self.n if n_out is None else n_out
        t = {}
        for e, c in self.terms.items():
            f = [0] * n_out
            s = c
            for k, ek in enumerate(e):
                if ek:
                    f[perm[k] - 1] += ek
                    if signs is not None and signs[k] < 0 and ek & 1:
                        s = -s
            f = tuple(f)
            v = t.get(f, _ZERO) + s
            if v:
                t[f] = v
            else:
                t.pop(f, None)
        return Poly(n_out, t, True)

    def substitute(self, images) -> "Poly":
        """General ring map x_i -> images[i-1] (all in a common ring)."""
        if len(images) != self.n:
            raise ValueError("need one image per variable")
        m = images[0].n if images else 0
        out = Poly.zero(m)
        for e, c in self.terms.items():
            term = Poly.const(m, c)
            for k, ek in enumerate(e):
                if ek:
                    term = term * images[k] ** ek
            out = out + term
        return out

    def variables_used(self):
        used = set()
        for e in self.terms:
            used.update(k + 1 for k, v in enumerate(e) if v)
        return used

    # -- text -------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-x for x in kv[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"x{k + 1}" + (f"^{v}" if v > 1 else "")
                            for k, v in enumerate(e) if v)
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = _fmt(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fmt(a)}*{mono}"
            parts.append(("-" if neg else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Poly({self.n}, '{self}')"


def _fmt(c: mpq) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


_DEM_CACHE: dict = {}


def demazure_monomial(p: int, q: int):
    """Terms ((u, v), coeff) of the Demazure image of x^p y^q in two variables."""
    key = (p, q)
    out = _DEM_CACHE.get(key)
    if out is None:
        if p == q:
            out = ()
        elif p > q:
            # x^q y^q (x^{p-q} - y^{p-q}) / (x - y)
            r = p - q
            out = tuple(((q + k, q + r - 1 - k), _ONE) for k in range(r))
        else:
            out = tuple((uv, -c) for uv, c in demazure_monomial(q, p))
        _DEM_CACHE[key] = out
    return out


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")
_NUMBER = re.compile(r"^\d+(?:/\d+)?$")


def parse_poly(text: str, n: int) -> Poly:
    """Parse text like "x1^2*x3 - 1/2*x2" into a Poly with n variables."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    out = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at position {pos}: {s[pos:]!r}")
        sign, body = m.group(1), m.group(2).strip()
        if sign is None and not first:
            raise ValueError(f"missing operator at position {pos}")
        first = False
        coeff = mpq(-1 if sign == "-" else 1)
        exps = [0] * n
        for factor in body.split("*"):
            factor = factor.strip()
            if _NUMBER.match(factor):
                coeff *= mpq(factor)
                continue
            fm = _FACTOR.match(factor)
            if not fm:
                raise ValueError(f"bad factor {factor!r} at position {m.start(2)}")
            k = int(fm.group(1))
            if not 1 <= k <= n:
                raise ValueError(f"variable x{k} out of range for n={n}")
            exps[k - 1] += int(fm.group(2) or 1)
        e = tuple(exps)
        out[e] = out.get(e, _ZERO) + coeff
        pos = m.end()
    return Poly(n, out)
