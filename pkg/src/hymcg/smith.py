"""Smith normal form of sparse integer matrices.

Only the diagonal (the invariant factors) is computed; no transformation
matrices are kept.  Unit pivots are eliminated sparsely first, which handles
boundary matrices of simplicial complexes almost entirely; whatever is left
is finished by a dense exact reduction.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Mapping


class SparseMatrix:
    """Integer matrix stored as ``{row: {col: value}}`` with zero entries omitted."""

    def __init__(self, nrows: int, ncols: int, entries: Iterable[tuple[int, int, int]] = ()):
        self.nrows = nrows
        self.ncols = ncols
        self.rows: dict[int, dict[int, int]] = {}
        for r, c, v in entries:
            if v:
                self.rows.setdefault(r, {})[c] = self.rows.get(r, {}).get(c, 0) + v
        self.rows = {r: {c: v for c, v in row.items() if v} for r, row in self.rows.items()}
        self.rows = {r: row for r, row in self.rows.items() if row}

    @classmethod
    def from_dense(cls, dense) -> SparseMatrix:
        dense = [list(r) for r in dense]
        ncols = len(dense[0]) if dense else 0
        return cls(len(dense), ncols,
                   ((i, j, v) for i, r in enumerate(dense) for j, v in enumerate(r)))

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for r, row in self.rows.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self.rows.values())


def _dense_invariant_factors(a: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of a dense integer matrix, in divisibility order."""
    a = [row[:] for row in a if any(row)]
    factors = []
    while a and a[0]:
        nrows, ncols = len(a), len(a[0])
        # pivot: entry of least nonzero absolute value
        best = None
        for i in range(nrows):
            for j in range(ncols):
                v = a[i][j]
                if v and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[0], a[i] = a[i], a[0]
        for row in a:
            row[0], row[j] = row[j], row[0]
        while True:
            p = a[0][0]
            dirty = False
            for i in range(1, len(a)):
                q = a[i][0] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[0])]
                if a[i][0]:
                    dirty = True
            for j in range(1, len(a[0])):
                q = a[0][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[0]
                if a[0][j]:
                    dirty = True
            if not dirty:
                # p must divide every remaining entry for the diagonal to be Smith form
                bad = next(((i, j) for i in range(1, len(a)) for j in range(1, len(a[0]))
                            if a[i][j] % p), None)
                if bad is None:
                    break
                a[0] = [x + y for x, y in zip(a[0], a[bad[0]])]
                continue
            # move the smallest remaining entry of row/column 0 to the corner
            cands = [(abs(a[i][0]), i, 0) for i in range(len(a)) if a[i][0]]
            cands += [(abs(a[0][j]), 0, j) for j in range(len(a[0])) if a[0][j]]
            _, i, j = min(cands)
            if i:
                a[0], a[i] = a[i], a[0]
            if j:
                for row in a:
                    row[0], row[j] = row[j], row[0]
        factors.append(abs(a[0][0]))
        a = [row[1:] for row in a[1:]]
        a = [row for row in a if any(row)]
    return factors


def invariant_factors(m: SparseMatrix) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form, sorted so each divides the next."""
    rows = {r: dict(row) for r, row in m.rows.items()}
    cols: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)

    units = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(cols, key=lambda c: len(cols[c])):
            if c not in cols:
                continue
            pivot_row = None
            for r in cols[c]:
                if abs(rows[r][c]) == 1 and (pivot_row is None or len(rows[r]) < len(rows[pivot_row])):
                    pivot_row = r
            if pivot_row is None:
                continue
            prow = rows.pop(pivot_row)
            u = prow[c]
            for cc in prow:
                cols[cc].discard(pivot_row)
            for r in list(cols[c]):
                row = rows[r]
                q = row[c] * u  # u = +-1, so row[c] / u == row[c] * u
                for cc, v in prow.items():
                    nv = row.get(cc, 0) - q * v
                    if nv:
                        if cc not in row:
                            cols[cc].add(r)
                        row[cc] = nv
                    elif cc in row:
                        del row[cc]
                        cols[cc].discard(r)
                if not row:
                    del rows[r]
            del cols[c]
            for cc in prow:
                if cc in cols and not cols[cc]:
                    del cols[cc]
            units += 1
            progress = True

    if not rows:
        return [1] * units
    row_ids = sorted(rows)
    col_ids = sorted(cols)
    col_pos = {c: j for j, c in enumerate(col_ids)}
    dense = [[0] * len(col_ids) for _ in row_ids]
    for i, r in enumerate(row_ids):
        for c, v in rows[r].items():
            dense[i][col_pos[c]] = v
    rest = _dense_invariant_factors(dense)
    return [1] * units + _normalize(rest)


def _normalize(factors: list[int]) -> list[int]:
    """Turn any list of diagonal entries into the divisibility chain of the same group."""
    factors = [abs(f) for f in factors if f]
    changed = True
    while changed:
        changed = False
        factors.sort()
        for i in range(len(factors)):
            for j in range(i + 1, len(factors)):
                a, b = factors[i], factors[j]
                if b % a:
                    g = gcd(a, b)
                    factors[i], factors[j] = g, a * b // g
                    changed = True
    return sorted(factors)


def smith_diagonal(dense) -> list[int]:
    """Convenience wrapper: invariant factors of a dense matrix given as nested lists."""
    return invariant_factors(SparseMatrix.from_dense(dense))


def rank(m: SparseMatrix | Mapping) -> int:
    return len(invariant_factors(m))
