"""Independent reference computations used by the tests."""

from math import comb


def _length(w):
    return sum(1 for a in range(len(w)) for b in range(a + 1, len(w)) if w[a] > w[b])


def _left_mul_s(elem, i, v_neg_minus_v):
    """H_s * elem in the standard basis, with H_s^2 = 1 + (v^-1 - v) H_s."""
    out = {}

    def add(w, lp):
        acc = out.setdefault(w, {})
        for k, c in lp.items():
            acc[k] = acc.get(k, 0) + c
            if not acc[k]:
                del acc[k]
        if not acc:
            del out[w]

    for w, lp in elem.items():
        sw = list(w)
        a, b = sw.index(i), sw.index(i + 1)   # s_i acts on values
        sw[a], sw[b] = sw[b], sw[a]
        sw = tuple(sw)
        add(sw, lp)
        if _length(sw) < _length(w):
            add(w, {k + d: c * s for k, c in lp.items() for d, s in v_neg_minus_v.items()})
    return out


def character(n, word):
    """Standard-basis expansion of b_{s_1} ... b_{s_k} with b_s = H_s + v; Laurent polys as {exp: coeff}."""
    e = tuple(range(1, n + 1))
    elem = {e: {0: 1}}
    for i in reversed(word):
        moved = _left_mul_s(elem, i, {-1: 1, 1: -1})
        for w, lp in elem.items():
            acc = moved.setdefault(w, {})
            for k, c in lp.items():
                acc[k + 1] = acc.get(k + 1, 0) + c
        elem = {w: {k: c for k, c in lp.items() if c} for w, lp in moved.items()}
        elem = {w: lp for w, lp in elem.items() if lp}
    return elem


def graded_rank(n, u, v):
    """Soergel's hom formula: graded rank of Hom(B_u, B_v) as a free left R-module."""
    cu, cv = character(n, u), character(n, v)
    out = {}
    for w, a in cu.items():
        b = cv.get(w)
        if not b:
            continue
        for i, x in a.items():
            for j, y in b.items():
                out[i + j] = out.get(i + j, 0) + x * y
    return {k: c for k, c in out.items() if c}


def hom_dimension_oracle(n, u, v, d):
    total = 0
    for k, c in graded_rank(n, u, v).items():
        r = d - k
        if r >= 0 and r % 2 == 0:
            total += c * comb(n + r // 2 - 1, r // 2)
    return total
