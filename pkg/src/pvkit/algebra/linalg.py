"""Exact Gaussian elimination over any field-like element type.

Entries need ``+ - * /`` and truthiness (zero is falsy).  Works for
``Fraction``, :class:`FieldElement` and :class:`RatFunc` alike.  Matrices
are lists of row lists.
"""

from __future__ import annotations


def rref(matrix, *, ncols=None):
    """Reduced row echelon form.  Returns ``(rows, pivot_columns)``."""
    rows = [list(r) for r in matrix]
    if not rows:
        return rows, []
    ncols = len(rows[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv if x else x for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][col]
                if f:
                    rows[i] = [a - f * b if b else a for a, b in zip(rows[i], prow)]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def nullspace(matrix, ncols, zero, one):
    """Basis of the right kernel ``{v : M v = 0}`` as a list of column vectors."""
    if not matrix:
        return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    rows, pivots = rref(matrix, ncols=ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for i, p in enumerate(pivots):
            v[p] = -rows[i][f]
        basis.append(v)
    return basis


def rank(matrix):
    if not matrix:
        return 0
    return len(rref(matrix)[1])


def solve(matrix, rhs, zero):
    """One solution of ``M v = rhs`` or ``None`` when inconsistent."""
    ncols = len(matrix[0]) if matrix else 0
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rows, pivots = rref(aug, ncols=ncols + 1)
    if ncols in pivots:
        return None
    v = [zero] * ncols
    for i, p in enumerate(pivots):
        v[p] = rows[i][ncols]
    return v


def inverse(matrix, zero, one):
    n = len(matrix)
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(matrix)]
    rows, pivots = rref(aug, ncols=n)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in rows]


def det(matrix, zero, one):
    n = len(matrix)
    rows = [list(r) for r in matrix]
    d = one
    for col in range(n):
        piv = next((i for i in range(col, n) if rows[i][col]), None)
        if piv is None:
            return zero
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            d = -d
        p = rows[col][col]
        d = d * p
        inv = 1 / p
        for i in range(col + 1, n):
            f = rows[i][col]
            if f:
                f = f * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[col])]
    return d


def matmul(a, b, zero):
    if not a:
        return []
    inner = len(b)
    ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(ncols):
            acc = zero
            for k in range(inner):
                x = row[k]
                if x:
                    y = b[k][j]
                    if y:
                        acc = acc + x * y
            new.append(acc)
        out.append(new)
    return out


def matvec(a, v, zero):
    out = []
    for row in a:
        acc = zero
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def transpose(a):
    return [list(col) for col in zip(*a)]


def identity(n, zero, one):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]
