"""Exact linear algebra over the package's fields."""

from __future__ import annotations

from .poly import Field, Polynomial


def rank(matrix, field: Field) -> int:
    """Rank of a matrix whose entries are elements of ``field``."""
    rows = [list(r) for r in matrix if any(x != 0 for x in r)]
    if not rows:
        return 0
    p = field.p
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        pivot = rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                f = f * inv
                row = rows[i]
                for k in range(c, ncols):
                    v = row[k] - f * pivot[k]
                    row[k] = v % p if p else v
        r += 1
        if r == len(rows):
            break
    return r


def poly_det(matrix: list) -> Polynomial:
    """Determinant of a square matrix of polynomials (Laplace expansion with memoisation)."""
    k = len(matrix)
    ring = matrix[0][0].ring
    if k == 0:
        return ring.one
    memo = {}

    def minor(row: int, cols: tuple) -> Polynomial:
        # determinant of rows row..k-1 restricted to the columns in ``cols``
        if row == k:
            return ring.one
        if cols in memo:
            return memo[cols]
        total = ring.zero
        for pos, c in enumerate(cols):
            entry = matrix[row][c]
            if not entry:
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
            if not sub:
                continue
            term = entry * sub
            total = total - term if pos % 2 else total + term
        memo[cols] = total
        return total

    return minor(0, tuple(range(k)))


def mat_mul_poly(A: list, M: list, B: list) -> list:
    """A * M * B where A, B are scalar matrices and M is a polynomial matrix."""
    ring = M[0][0].ring
    rows = len(M)
    cols = len(M[0])
    AM = []
    for a in A:
        out = []
        for j in range(cols):
            acc = ring.zero
            for i in range(rows):
                if a[i]:
                    acc = acc + M[i][j].scale(a[i])
            out.append(acc)
        AM.append(out)
    res = []
    for r in AM:
        out = []
        for j in range(len(B[0])):
            acc = ring.zero
            for i in range(cols):
                if B[i][j]:
                    acc = acc + r[i].scale(B[i][j])
            out.append(acc)
        res.append(out)
    return res
