"""Exact linear algebra over Q used by the classifier and the tangent-space code.

Dense helpers operate on lists of lists of mpqs (small matrices).
:class:`Echelon` is a sparse, fraction-free row echelon form over the integers
for the larger spanning problems.
"""
from __future__ import annotations

from math import gcd
from typing import Iterable, Mapping, Sequence

from .jetalg import as_scalar, mpq


def _copy(m: Sequence[Sequence]) -> list:
    return [[as_scalar(v) for v in row] for row in m]


def row_reduce(m: Sequence[Sequence]) -> tuple:
    """Reduced row echelon form.  Returns (rref, pivot_columns)."""
    a = _copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m or not m[0]:
        return 0
    return len(row_reduce(m)[1])


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> list:
    """Basis of {v : m v = 0} as a list of mpq vectors."""
    if not m:
        return [[mpq(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    a, pivots = row_reduce(m)
    cols = len(a[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [mpq(0)] * cols
        v[f] = mpq(1)
        for r, pc in enumerate(pivots):
            v[pc] = -a[r][f]
        basis.append(v)
    return basis


def determinant(m: Sequence[Sequence]) -> mpq:
    a = _copy(m)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    det = mpq(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return mpq(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [vi - f * vc for vi, vc in zip(a[i], a[c])]
    return det


def inverse(m: Sequence[Sequence]) -> list:
    n = len(m)
    aug = [list(row) + [mpq(int(i == j)) for j in range(n)] for i, row in enumerate(_copy(m))]
    red, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), mpq(0))
             for j in range(len(b[0]))] for i in range(len(a))]


def transpose(a: Sequence[Sequence]) -> list:
    return [list(col) for col in zip(*a)]


def congruence_diagonalize(sym: Sequence[Sequence]) -> tuple:
    """Find invertible P with P^T S P diagonal.

    Returns (P, diag).  Symmetric Gaussian elimination; a zero pivot with a
    nonzero off-diagonal entry is repaired by e_k -> e_k + e_j.
    """
    s = _copy(sym)
    n = len(s)
    p = [[mpq(int(i == j)) for j in range(n)] for i in range(n)]

    def add_col_row(k, j, f):
        # basis change e_k += f e_j : column k += f col j, then row k += f row j
        for i in range(n):
            s[i][k] += f * s[i][j]
        for i in range(n):
            s[k][i] += f * s[j][i]
        for i in range(n):
            p[i][k] += f * p[i][j]

    def swap(k, j):
        for row in s:
            row[k], row[j] = row[j], row[k]
        s[k], s[j] = s[j], s[k]
        for row in p:
            row[k], row[j] = row[j], row[k]

    for k in range(n):
        if not s[k][k]:
            j = next((j for j in range(k + 1, n) if s[j][j]), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((j for j in range(k + 1, n) if s[k][j]), None)
                if j is None:
                    continue
                add_col_row(k, j, mpq(1))
        piv = s[k][k]
        for j in range(k + 1, n):
            if s[k][j]:
                add_col_row(j, k, -s[k][j] / piv)
    return p, [s[i][i] for i in range(n)]


def signature(sym: Sequence[Sequence]) -> tuple:
    """(positive, negative, zero) inertia counts of a symmetric matrix."""
    if not sym:
        return 0, 0, 0
    _, d = congruence_diagonalize(sym)
    pos = sum(1 for v in d if v > 0)
    neg = sum(1 for v in d if v < 0)
    return pos, neg, len(d) - pos - neg


# ----------------------------------------------------------------------
# sparse fraction-free echelon form


def _integer_row(row: Mapping[int, mpq]) -> dict:
    den = 1
    for v in row.values():
        den = den * as_scalar(v).denominator // gcd(den, as_scalar(v).denominator)
    out = {c: int(as_scalar(v) * den) for c, v in row.items() if v}
    return _primitive(out)


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


class Echelon:
    """Incremental row echelon basis over Z of sparse rows ``{column: value}``.

    Rows are cleared of denominators and kept primitive, so elimination never
    divides.  ``add`` returns True when the row enlarged the span.
    """

    def __init__(self):
        self.pivots: dict = {}  # pivot column -> row with that leading column

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping[int, mpq]) -> dict:
        r = _integer_row(row)
        while r:
            lead = min(r)
            prow = self.pivots.get(lead)
            if prow is None:
                return r
            a, b = r[lead], prow[lead]
            g = gcd(a, b)
            fa, fb = b // g, a // g
            new = {c: v * fa for c, v in r.items()}
            for c, v in prow.items():
                nv = new.get(c, 0) - fb * v
                if nv:
                    new[c] = nv
                else:
                    new.pop(c, None)
            r = _primitive(new)
        return r

    def add(self, row: Mapping[int, mpq]) -> bool:
        r = self.reduce(row)
        if not r:
            return False
        self.pivots[min(r)] = r
        return True

    def add_all(self, rows: Iterable[Mapping[int, mpq]]) -> "Echelon":
        for row in rows:
            self.add(row)
        return self

    def contains(self, row: Mapping[int, mpq]) -> bool:
        return not self.reduce(row)
