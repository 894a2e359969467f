"""Exact integer linear algebra: fraction-free determinants and ranks.

Determinant densities enter logarithmically, so every count feeding them
(spanning trees, Goeritz minors) is computed in exact integer arithmetic.
"""

from __future__ import annotations

from math import gcd


def bareiss_det(mat):
    """Exact determinant of a square integer matrix (Bareiss fraction-free
    elimination with row pivoting)."""
    n = len(mat)
    if n == 0:
        return 1
    m = [list(row) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def int_matrix_rank(rows, ncols):
    """Rank over Q of a sparse integer matrix.

    ``rows`` is a list of dicts column -> nonzero int.  Elimination
    prefers +-1 pivots (all arithmetic stays integral and small, which
    covers almost every Khovanov boundary matrix); general pivots fall
    back to gcd-scaled integer row operations.
    """
    rows = [dict(r) for r in rows if r]
    rank = 0
    while rows:
        # prefer a unit pivot, otherwise the entry of smallest magnitude
        best = None
        for ri, row in enumerate(rows):
            for col, val in row.items():
                a = abs(val)
                if a == 1:
                    best = (ri, col)
                    break
                if best is None or a < abs(rows[best[0]][best[1]]):
                    best = (ri, col)
            if best and abs(rows[best[0]][best[1]]) == 1:
                break
        ri, col = best
        pivot_row = rows.pop(ri)
        pivot = pivot_row[col]
        rank += 1
        remaining = []
        for row in rows:
            val = row.get(col)
            if val:
                g = gcd(pivot, val)
                mult_row = pivot // g
                mult_piv = val // g
                new = {}
                for c, v in row.items():
                    new[c] = v * mult_row
                for c, v in pivot_row.items():
                    w = new.get(c, 0) - v * mult_piv
                    if w:
                        new[c] = w
                    else:
                        new.pop(c, None)
                if new:
                    remaining.append(new)
            else:
                remaining.append(row)
        rows = remaining
    return rank


def gf2_rank(rows):
    """Rank over GF(2); rows are Python ints used as bit vectors."""
    pivots = {}  # lowest set bit -> pivot row
    rank = 0
    for row in rows:
        while row:
            low = row & -row
            pivot = pivots.get(low)
            if pivot is None:
                pivots[low] = row
                rank += 1
                break
            row ^= pivot
    return rank
