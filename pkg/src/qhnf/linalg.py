"""Exact linear algebra over the rationals.

Plain list-of-lists matrices with Fraction entries and textbook Gaussian
elimination.  Rank decisions are exact, so downstream resonant-space
dimensions are exact too.  All functions leave their inputs untouched.
"""

from __future__ import annotations

from fractions import Fraction

Vector = list[Fraction]
Matrix = list[Vector]


def _copy(m: Matrix) -> Matrix:
    return [row[:] for row in m]


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = _copy(m)
    if not a:
        return a, []
    rows, cols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot_row = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace(m: Matrix, ncols: int | None = None) -> list[Vector]:
    """Basis of the kernel of m (acting on column vectors).

    Each basis vector has a 1 in one free column and zeros in the other free
    columns; vectors are ordered by their free column index.
    """
    if not m:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        basis = []
        for j in range(ncols):
            v = [Fraction(0)] * ncols
            v[j] = Fraction(1)
            basis.append(v)
        return basis
    a, pivots = rref(m)
    cols = len(m[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -a[r][fc]
        basis.append(v)
    return basis


def solve(m: Matrix, b: Vector) -> Vector | None:
    """One exact solution of m x = b with free coordinates set to zero,
    pivoting in column order; None if the system is inconsistent."""
    if not m:
        return [] if all(x == 0 for x in b) else None
    aug = [row[:] + [bv] for row, bv in zip(m, b)]
    a, pivots = rref(aug)
    cols = len(m[0])
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, pc in enumerate(pivots):
        x[pc] = a[r][cols]
    return x


def det(m: Matrix) -> Fraction:
    """Determinant by fraction-preserving elimination."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return Fraction(1)
    a = _copy(m)
    result = Fraction(1)
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            a[c], a[pivot_row] = a[pivot_row], a[c]
            result = -result
        result *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result


def row_space(m: Matrix) -> Matrix:
    """Canonical (rref, nonzero rows) basis of the row space."""
    a, pivots = rref(m)
    return a[: len(pivots)]


def intersect_row_spaces(a: Matrix, b: Matrix, ncols: int) -> Matrix:
    """Canonical basis of span(rows of a) intersected with span(rows of b)."""
    if not a or not b:
        return []
    # x in both spans: x = u^T a = v^T b; kernel of [a^T | -b^T].
    stacked = [
        [a[i][c] for i in range(len(a))] + [-b[j][c] for j in range(len(b))]
        for c in range(ncols)
    ]
    vectors = []
    for k in nullspace(stacked):
        x = [
            sum(k[i] * a[i][c] for i in range(len(a)))
            for c in range(ncols)
        ]
        if any(v != 0 for v in x):
            vectors.append(x)
    return row_space(vectors)
