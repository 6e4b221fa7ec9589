"""Bases of bimodule-map spaces and exact linear solves over them.

``hom_space_basis`` parametrises a degree-d left-linear map B_u -> B_v by the
images of the basis elements whose last tensor slot is 1; the image of the
partner element with last slot x_i is then forced to be (image) * x_i.  Right
linearity reduces, by the induction adjunction for B_u = B_u' (x)_{R^i} R, to
commuting with the generators x_j (j != i, i+1), x_i + x_{i+1}, x_i x_{i+1} of
R^i on B_u'.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement

from gmpy2 import mpq

from . import linalg
from .bimod import BSObject, BimodMorphism, basis_times_poly, _add_into
from .poly import Poly

__all__ = [
    "monomials",
    "graded_basis",
    "hom_space_basis",
    "hom_dimension",
    "LinearSystem",
    "solve_morphism_equation",
    "flatten",
    "solve_combination",
]


@lru_cache(maxsize=None)
def monomials(n: int, k: int):
    """Exponent tuples of all monomials of polynomial degree k in n variables."""
    if k < 0:
        return ()
    if n == 0:
        return ((),) if k == 0 else ()
    out = []
    for combo in combinations_with_replacement(range(n), k):
        e = [0] * n
        for c in combo:
            e[c] += 1
        out.append(tuple(e))
    return tuple(sorted(out, reverse=True))


def graded_basis(obj: BSObject, d: int):
    """Monomial-times-basis spanning list of the degree-d part of B_obj."""
    out = []
    for b in obj.basis():
        rest = d - obj.degree_of(b)
        if rest >= 0 and rest % 2 == 0:
            for e in monomials(obj.n, rest // 2):
                out.append((e, b))
    return out


def _invariant_generators(n: int, i: int):
    gens = [Poly.var(n, j) for j in range(1, n + 1) if j not in (i, i + 1)]
    xi, xj = Poly.var(n, i), Poly.var(n, i + 1)
    gens.append(xi + xj)
    gens.append(xi * xj)
    return gens


def _mono(n, e):
    return Poly(n, {e: mpq(1)}, True)


@lru_cache(maxsize=None)
def _hom_basis_cols(n: int, u: tuple, v: tuple, d: int):
    """Kernel basis for unshifted B_u -> B_v of degree d, as column dicts."""
    src = BSObject(n, u)
    tgt = BSObject(n, v)
    k = len(u)
    free_src = [s for s in src.basis() if not (k and s >> (k - 1) & 1)]
    unknowns = []  # (s, t, exps)
    index = {}
    for s in free_src:
        for t in tgt.basis():
            rest = src.degree_of(s) + d - tgt.degree_of(t)
            if rest < 0 or rest % 2:
                continue
            for e in monomials(n, rest // 2):
                index[(s, t, e)] = len(unknowns)
                unknowns.append((s, t, e))
    if not unknowns:
        return ()
    ech = linalg.Echelon(len(unknowns))
    by_src: dict = {}
    for idx, (s, t, e) in enumerate(unknowns):
        by_src.setdefault(s, []).append((idx, t, e))

    def right_image(idx_list, p):
        """Row contributions of phi(s) * p, keyed by (t', exponent)."""
        rows: dict = {}
        for idx, t, e in idx_list:
            for t2, q in basis_times_poly(n, v, t, p).items():
                for e2, c in (_mono(n, e) * q).terms.items():
                    rows.setdefault((t2, e2), {})
                    r = rows[(t2, e2)]
                    r[idx] = r.get(idx, 0) + c
        return rows

    if k == 0:
        for j in range(1, n + 1):
            xj = Poly.var(n, j)
            rows = right_image(by_src.get(0, []), xj)
            for idx, t, e in by_src.get(0, []):
                for e2, c in (xj * _mono(n, e)).terms.items():
                    r = rows.setdefault((t, e2), {})
                    r[idx] = r.get(idx, 0) - c
            for r in rows.values():
                ech.add(r)
    else:
        i = u[-1]
        prefix = u[:-1]
        for p in _invariant_generators(n, i):
            for g in free_src:
                rows = right_image(by_src.get(g, []), p)
                # minus phi(g * p): g * p expanded in B_prefix, last slot 1
                for g2, coeff in basis_times_poly(n, prefix, g, p).items():
                    for idx, t, e in by_src.get(g2, []):
                        for e2, c in (coeff * _mono(n, e)).terms.items():
                            r = rows.setdefault((t, e2), {})
                            r[idx] = r.get(idx, 0) - c
                for r in rows.values():
                    ech.add(r)
    out = []
    for vec in ech.kernel():
        cols: dict = {}
        for idx, c in vec.items():
            s, t, e = unknowns[idx]
            col = cols.setdefault(s, {})
            _add_into(col, t, Poly(n, {e: c}, True))
        if k:
            i = u[-1]
            xi = Poly.var(n, i)
            top = 1 << (k - 1)
            for s in list(cols):
                img: dict = {}
                for t, q in cols[s].items():
                    for t2, w in basis_times_poly(n, v, t, xi).items():
                        _add_into(img, t2, q * w)
                if img:
                    cols[s | top] = img
        out.append(cols)
    return tuple(out)


def hom_space_basis(u: BSObject, v: BSObject, d: int, certify: bool = False):
    """A QQ-basis of degree-d bimodule maps u -> v (shifts included in u, v)."""
    if u.n != v.n:
        raise ValueError("objects live in different ambients")
    d_eff = d + u.qshift - v.qshift
    out = []
    for cols in _hom_basis_cols(u.n, u.word, v.word, d_eff):
        f = BimodMorphism(u, v, d, {s: dict(c) for s, c in cols.items()}, check=False)
        if certify:
            f._check_degrees()
            f.check_bimodule()
        out.append(f)
    return out


def hom_dimension(u: BSObject, v: BSObject, d: int) -> int:
    return len(_hom_basis_cols(u.n, u.word, v.word, d + u.qshift - v.qshift))


# ---------------------------------------------------------------------------
# generic systems

def flatten(f, tag=None, out=None, scale=None):
    """Coordinates of a morphism (or dict of tagged morphisms) as {key: mpq}."""
    if out is None:
        out = {}
    if isinstance(f, BimodMorphism):
        for s, col in f.cols.items():
            for t, p in col.items():
                for e, c in p.terms.items():
                    key = (tag, s, t, e)
                    v = out.get(key, 0) + (c if scale is None else c * scale)
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
        return out
    for k, g in f.items():
        flatten(g, (tag, k) if tag is not None else k, out, scale)
    return out


@dataclass
class LinearSystem:
    """Columns are unknowns; each column is a sparse vector {row key: value}."""

    columns: list = field(default_factory=list)
    rhs: dict = field(default_factory=dict)

    def add_unknown(self, vec: dict) -> int:
        self.columns.append(vec)
        return len(self.columns) - 1


def solve_morphism_equation(sys: LinearSystem):
    """Particular solution (free unknowns zero) as {unknown: mpq}, or None."""
    rows: dict = {}
    for j, col in enumerate(sys.columns):
        for key, v in col.items():
            rows.setdefault(key, {})[j] = v
    for key in sys.rhs:
        rows.setdefault(key, {})
    ech = linalg.Echelon(len(sys.columns))
    # row order is irrelevant for the solution set; sort for determinism
    for key in sorted(rows, key=repr):
        ech.add(rows[key], sys.rhs.get(key, 0))
        if ech.inconsistent:
            return None
    return ech.particular()


def solve_combination(candidates, target):
    """Coefficients c with sum c_k * candidates[k] == target (flattened), or None."""
    sys = LinearSystem()
    for c in candidates:
        sys.add_unknown(c if isinstance(c, dict) and not isinstance(c, BimodMorphism) else flatten(c))
    sys.rhs = target if isinstance(target, dict) else flatten(target)
    sol = solve_morphism_equation(sys)
    if sol is None:
        return None
    return [sol.get(j, mpq(0)) for j in range(len(candidates))]


def kernel_combinations(candidates):
    """Basis of relations sum c_k * candidates[k] == 0."""
    rows: dict = {}
    for j, c in enumerate(candidates):
        vec = c if isinstance(c, dict) and not isinstance(c, BimodMorphism) else flatten(c)
        for key, v in vec.items():
            rows.setdefault(key, {})[j] = v
    ech = linalg.Echelon(len(candidates))
    for key in sorted(rows, key=repr):
        ech.add(rows[key])
    return ech.kernel()
