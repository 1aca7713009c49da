"""Exact rational Gaussian elimination: rank and inverse over Q.

Pivots are chosen by smallest combined bit-length of numerator and
denominator, which keeps intermediate fractions small on the sparse
integer matrices this library produces.
"""

from __future__ import annotations

from fractions import Fraction


def _pivot_weight(x: Fraction) -> int:
    return x.numerator.bit_length() + x.denominator.bit_length()


def rank(rows) -> int:
    """Rank of a matrix given as a list of equal-length Fraction rows."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        best = None
        for i in range(r, len(rows)):
            x = rows[i][col]
            if x:
                if best is None or _pivot_weight(x) < _pivot_weight(rows[best][col]):
                    best = i
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        piv = rows[r][col]
        for i in range(r + 1, len(rows)):
            x = rows[i][col]
            if x:
                factor = x / piv
                row_i, row_r = rows[i], rows[r]
                for j in range(col, ncols):
                    row_i[j] -= factor * row_r[j]
        r += 1
        if r == len(rows):
            break
    return r


def det_and_inverse(matrix):
    """(determinant, inverse) of a square integer/Fraction matrix.

    Returns (det, None) when the matrix is singular.
    """
    n = len(matrix)
    a = [[Fraction(matrix[i][j]) for j in range(n)] for i in range(n)]
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    det = Fraction(1)
    for col in range(n):
        best = None
        for i in range(col, n):
            if a[i][col]:
                if best is None or _pivot_weight(a[i][col]) < _pivot_weight(a[best][col]):
                    best = i
        if best is None:
            return Fraction(0), None
        if best != col:
            a[col], a[best] = a[best], a[col]
            inv[col], inv[best] = inv[best], inv[col]
            det = -det
        piv = a[col][col]
        det *= piv
        a[col] = [x / piv for x in a[col]]
        inv[col] = [x / piv for x in inv[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
                inv[i] = [x - f * y for x, y in zip(inv[i], inv[col])]
    return det, inv
