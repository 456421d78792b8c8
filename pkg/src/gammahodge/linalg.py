"""Exact linear algebra over the rationals for small dense matrices.

Matrices are plain sequences of rows holding ints or Fractions.  Ranks come
from fraction-free (Bareiss) elimination after clearing denominators row by
row, positive semidefiniteness is decided by exact symmetric elimination,
and Kronecker sums are assembled entrywise.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = Sequence[Sequence]


def _integer_rows(matrix: Matrix) -> list[list[int]]:
    """Copy the matrix with each row scaled to integers (rank-preserving)."""
    out = []
    for row in matrix:
        entries = [e if isinstance(e, int) else Fraction(e) for e in row]
        denom = 1
        for e in entries:
            if isinstance(e, Fraction):
                denom = denom * e.denominator // gcd(denom, e.denominator)
        out.append([int(e * denom) for e in entries])
    return out


def rank(matrix: Matrix) -> int:
    """Exact rank over the rationals via fraction-free Gaussian elimination."""
    rows = _integer_rows(matrix)
    if not rows or not rows[0]:
        return 0
    ncols = len(rows[0])
    r = 0
    prev = 1
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pivot = rows[r][c]
        row_r = rows[r]
        for i in range(r + 1, len(rows)):
            row_i = rows[i]
            factor = row_i[c]
            for j in range(c + 1, ncols):
                row_i[j] = (pivot * row_i[j] - factor * row_r[j]) // prev
            row_i[c] = 0
        prev = pivot
        r += 1
        if r == len(rows):
            break
    return r


def nullity(matrix: Matrix) -> int:
    ncols = len(matrix[0]) if matrix else 0
    return ncols - rank(matrix)


def is_psd(matrix: Matrix) -> bool:
    """Exact positive-semidefiniteness test (symmetric input required).

    Symmetric rational elimination: a negative pivot is a certificate of
    failure, and a zero pivot with any nonzero entry left in its row gives a
    negative 2x2 principal minor, so it fails too.
    """
    n = len(matrix)
    a = [[Fraction(e) for e in row] for row in matrix]
    for i in range(n):
        if len(a[i]) != n:
            raise ValueError("matrix is not square")
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    for k in range(n):
        d = a[k][k]
        if d < 0:
            return False
        if d == 0:
            if any(a[k][j] for j in range(k + 1, n)):
                return False
            continue
        row_k = a[k]
        for i in range(k + 1, n):
            f = a[i][k] / d
            if f:
                row_i = a[i]
                for j in range(k + 1, n):
                    row_i[j] -= f * row_k[j]
    return True


def kron_sum(a: Matrix, b: Matrix) -> list[list]:
    """A (x) I + I (x) B for square a (p x p) and b (q x q)."""
    p, q = len(a), len(b)
    n = p * q
    out = [[0] * n for _ in range(n)]
    for i1 in range(p):
        for i2 in range(p):
            e = a[i1][i2]
            if e:
                for j in range(q):
                    out[i1 * q + j][i2 * q + j] += e
    for j1 in range(q):
        for j2 in range(q):
            e = b[j1][j2]
            if e:
                for i in range(p):
                    out[i * q + j1][i * q + j2] += e
    return out


def gram(rows: Matrix, ncols: int) -> list[list]:
    """G^T G for G given by rows of length ncols (works for zero rows)."""
    out = [[0] * ncols for _ in range(ncols)]
    for row in rows:
        for i in range(ncols):
            ri = row[i]
            if ri:
                for j in range(ncols):
                    out[i][j] += ri * row[j]
    return out


def outer_gram(rows: Matrix) -> list[list]:
    """G G^T for G given by rows (works for zero-length rows)."""
    n = len(rows)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            s = 0
            for x, y in zip(rows[i], rows[j]):
                s += x * y
            out[i][j] = s
            out[j][i] = s
    return out
