"""Exact rational linear algebra on lists of rows.

Matrices are plain ``Sequence[Sequence[Fraction]]``; nothing here touches
floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = Sequence[Sequence[Fraction]]


def _integer_rows(rows: Matrix) -> tuple[list[list[int]], int]:
    """Scale each row to integers; return the rows and the product of scalings."""
    scaled, factor = [], 1
    for row in rows:
        m = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        scaled.append([int(Fraction(x) * m) for x in row])
        factor *= m
    return scaled, factor


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError(f"determinant needs a square matrix, got {n}x{len(rows[0]) if rows else 0}")
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact: Sylvester's identity guarantees divisibility
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def det(rows: Matrix) -> Fraction:
    """Exact determinant of a square rational matrix."""
    ints, factor = _integer_rows(rows)
    return Fraction(bareiss_det(ints), factor)


def rref(rows: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form and the pivot column indices."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return a, []
    n_rows, n_cols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(n_rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(rows: Matrix) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Matrix, n_cols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}``, one vector per free column.

    ``n_cols`` is needed only when ``rows`` is empty.
    """
    if not rows:
        n = n_cols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    reduced, pivots = rref(rows)
    n = len(reduced[0])
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[free]
        basis.append(v)
    return basis


def transpose(rows: Matrix) -> list[list[Fraction]]:
    return [list(col) for col in zip(*rows)]
