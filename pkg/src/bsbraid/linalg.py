"""Exact sparse linear algebra over the rationals.

Rows are dicts ``{column: mpq}``.  Elimination keeps every stored pivot row
with its pivot at its smallest column, so reducing a new row only ever
introduces larger columns and the loop terminates.  Results are reported in
reduced row echelon form, which makes solutions canonical: free variables are
set to zero.
"""

from __future__ import annotations

import heapq

from gmpy2 import mpq

__all__ = ["Echelon", "nullspace", "solve", "rank"]

_ZERO = mpq(0)


class Echelon:
    """Incremental row echelon form over QQ.

    ``pivots[c]`` is a row whose smallest column is ``c`` with coefficient 1.
    An optional augmented right-hand side is carried in ``rhs[c]``.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict] = {}
        self.rhs: dict[int, mpq] = {}
        self.inconsistent = False

    def add(self, row: dict, b=_ZERO) -> bool:
        """Insert a row; return True if it increased the rank."""
        row = {c: v for c, v in row.items() if v}
        b = mpq(b)
        pivots = self.pivots
        heap = [c for c in row if c in pivots]
        heapq.heapify(heap)
        seen = set(heap)
        while heap:
            c = heapq.heappop(heap)
            v = row.get(c)
            if not v:
                continue
            prow = pivots[c]
            for k, pv in prow.items():
                nv = row.get(k, _ZERO) - v * pv
                if nv:
                    row[k] = nv
                    if k not in seen and k in pivots:
                        seen.add(k)
                        heapq.heappush(heap, k)
                else:
                    row.pop(k, None)
            pb = self.rhs.get(c)
            if pb:
                b -= v * pb
        if not row:
            if b:
                self.inconsistent = True
            return False
        c0 = min(row)
        inv = 1 / row[c0]
        if inv != 1:
            row = {k: v * inv for k, v in row.items()}
            b = b * inv
        pivots[c0] = row
        if b:
            self.rhs[c0] = b
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce_fully(self):
        """Back-substitute so that every pivot column appears in one row only."""
        pivots = self.pivots
        order = sorted(pivots, reverse=True)
        for c in order:
            row = pivots[c]
            b = self.rhs.get(c, _ZERO)
            changed = False
            for k in sorted(k for k in row if k != c and k in pivots):
                v = row.get(k)
                if not v:
                    continue
                changed = True
                for kk, pv in pivots[k].items():
                    nv = row.get(kk, _ZERO) - v * pv
                    if nv:
                        row[kk] = nv
                    else:
                        row.pop(kk, None)
                pb = self.rhs.get(k)
                if pb:
                    b -= v * pb
            if changed:
                if b:
                    self.rhs[c] = b
                else:
                    self.rhs.pop(c, None)

    def particular(self):
        """Solution with all free variables zero, or None if inconsistent."""
        if self.inconsistent:
            return None
        self.reduce_fully()
        return {c: v for c, v in self.rhs.items() if v}

    def kernel(self):
        """Basis of the solution space of the homogeneous system."""
        self.reduce_fully()
        free_to_entries: dict[int, dict] = {}
        for c, row in self.pivots.items():
            for k, v in row.items():
                if k != c:
                    free_to_entries.setdefault(k, {})[c] = -v
        out = []
        for f in range(self.ncols):
            if f in self.pivots:
                continue
            vec = {f: mpq(1)}
            vec.update(free_to_entries.get(f, {}))
            out.append(vec)
        return out


def nullspace(rows, ncols: int):
    ech = Echelon(ncols)
    for r in rows:
        ech.add(r)
    return ech.kernel()


def solve(rows, rhs, ncols: int):
    """Exact particular solution (free slots zero) of rows * x = rhs, or None."""
    ech = Echelon(ncols)
    for r, b in zip(rows, rhs):
        ech.add(r, b)
        if ech.inconsistent:
            return None
    return ech.particular()


def rank(rows, ncols: int) -> int:
    ech = Echelon(ncols)
    for r in rows:
        ech.add(r)
    return ech.rank
