"""Exact linear algebra over any field of tower scalars, plus integer Smith form.

Matrices are lists of rows. Entries only need ``+ - * /`` and ``== 0``, so the
same routines serve Fractions, number-field elements and rational functions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

Matrix = list[list[Any]]


class InconsistentSystem(ValueError):
    pass


def rref(rows: Sequence[Sequence[Any]], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form with first-nonzero pivoting in column order."""
    m = [[Fraction(x) if isinstance(x, int) else x for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def solve(a: Sequence[Sequence[Any]], b: Sequence[Any], zero: Any = Fraction(0)) -> list[Any]:
    """A particular solution of ``a x = b``; free variables are set to zero."""
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, piv = rref(aug, ncols + 1)
    if ncols in piv:
        raise InconsistentSystem("linear system has no solution")
    x = [zero] * ncols
    for row, c in zip(red, piv):
        x[c] = row[ncols]
    return x


def nullspace(a: Sequence[Sequence[Any]], ncols: int, zero: Any = Fraction(0), one: Any = Fraction(1)) -> list[list[Any]]:
    """Basis of the kernel, one vector per free column (in column order)."""
    if not a:
        return [[one if i == k else zero for i in range(ncols)] for k in range(ncols)]
    red, piv = rref(a, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, c in zip(red, piv):
            v[c] = -row[f]
        basis.append(v)
    return basis


def rank(a: Sequence[Sequence[Any]]) -> int:
    if not a:
        return 0
    return len(rref(a)[1])


def matmul(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> Matrix:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), 0) for col in bt] for row in a]


def identity(n: int, one: Any = 1, zero: Any = 0) -> Matrix:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def inverse(a: Sequence[Sequence[Any]]) -> Matrix:
    n = len(a)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    red, piv = rref(aug, n)
    if piv != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


# ---------------------------------------------------------------------------
# Smith normal form over Z


def smith_normal_form(mat: Sequence[Sequence[int]], ncols: int | None = None):
    """Return ``(D, U, V)`` with ``U @ M @ V == D``, U and V unimodular.

    D is diagonal with nonnegative entries, each dividing the next.
    """
    m = [[int(x) for x in row] for row in mat]
    rows = len(m)
    cols = ncols if ncols is not None else (len(m[0]) if m else 0)
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        m[dst] = [a + k * b for a, b in zip(m[dst], m[src])]
        u[dst] = [a + k * b for a, b in zip(u[dst], u[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for row in m:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for s in range(min(rows, cols)):
        while True:
            entries = [
                (abs(m[i][j]), i, j)
                for i in range(s, rows)
                for j in range(s, cols)
                if m[i][j] != 0
            ]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(s, pi)
            swap_cols(s, pj)
            piv = m[s][s]
            dirty = False
            for i in range(s + 1, rows):
                q = m[i][s] // piv
                if q:
                    add_row(i, s, -q)
                dirty |= m[i][s] != 0
            for j in range(s + 1, cols):
                q = m[s][j] // piv
                if q:
                    add_col(j, s, -q)
                dirty |= m[s][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(s + 1, rows) for j in range(s + 1, cols) if m[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(s, bad, 1)
        if s < rows and s < cols and m[s][s] < 0:
            m[s] = [-x for x in m[s]]
            u[s] = [-x for x in u[s]]
    return m, u, v


def int_det(a: Sequence[Sequence[int]]) -> int:
    """Exact determinant via Fraction elimination."""
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return int(det)
