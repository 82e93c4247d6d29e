"""Integer matrices: Smith and Hermite normal forms, kernels, sublattices of Z^n."""

from __future__ import annotations

from functools import cached_property


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(matrix, ncols=None):
    """Return ``(U, D, V)`` with ``U * A * V = D``.

    U and V are unimodular and D is diagonal with d_1 | d_2 | ... and
    nonnegative entries.  ``ncols`` gives the width when ``matrix`` has no rows.
    """
    U, D, V, _ = _snf(matrix, ncols)
    return U, D, V


def _snf(matrix, ncols=None):
    A = [[int(x) for x in row] for row in matrix]
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    U = _identity(m)
    V = _identity(n)
    Vi = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            changed = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        changed = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        changed = True
            if changed:
                best = None
                for i in range(t, m):
                    if A[i][t] and (best is None or abs(A[i][t]) < abs(A[best][t])):
                        best = i
                if best is not None and best != t and abs(A[best][t]) < abs(A[t][t]):
                    swap_rows(t, best)
                    continue
                bestc = None
                for j in range(t, n):
                    if A[t][j] and (bestc is None or abs(A[t][j]) < abs(A[t][bestc])):
                        bestc = j
                if bestc is not None and bestc != t and abs(A[t][bestc]) < abs(A[t][t]):
                    swap_cols(t, bestc)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % A[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return U, A, V, Vi


def hermite_normal_form(rows, ncols):
    """Row-style HNF of the lattice spanned by ``rows``: echelon, positive pivots,
    entries above each pivot reduced into [0, pivot).  Zero rows are dropped."""
    A = [[int(x) for x in r] for r in rows if any(r)]
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(A)) if A[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[i0] = A[i0], A[r]
            if len(nz) == 1:
                break
            for i in range(r + 1, len(A)):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
        if r >= len(A) or not A[r][c]:
            continue
        if A[r][c] < 0:
            A[r] = [-a for a in A[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
        r += 1
        A = A[:r] + [row for row in A[r:] if any(row)]
    return [row for row in A[:r]]


def integer_kernel(matrix, ncols=None):
    """Lattice ``{k in Z^n : A k = 0}``."""
    n = len(matrix[0]) if matrix else (ncols or 0)
    U, D, V, _ = _snf(matrix, n)
    rank = sum(1 for i in range(min(len(D), n)) if D[i][i])
    basis = [[V[i][j] for i in range(n)] for j in range(rank, n)]
    return IntegerLattice(basis, n)


def solve_left(matrix, target, ncols=None):
    """Integer row vector z with ``z * M = target``, or None."""
    k = len(matrix)
    n = len(matrix[0]) if k else (ncols if ncols is not None else len(target))
    U, D, V, _ = _snf(matrix, n)
    bv = [sum(target[i] * V[i][j] for i in range(n)) for j in range(n)]
    w = [0] * k
    for i in range(n):
        d = D[i][i] if i < k else 0
        if d:
            if bv[i] % d:
                return None
            w[i] = bv[i] // d
        elif bv[i]:
            return None
    return [sum(w[i] * U[i][j] for i in range(k)) for j in range(k)]


def matmul_int(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


class IntegerLattice:
    """A sublattice of Z^dim given by generator rows; stored in HNF."""

    def __init__(self, generators, dim):
        self.dim = dim
        self.basis = [tuple(r) for r in hermite_normal_form(generators, dim)]

    @property
    def rank(self):
        return len(self.basis)

    @cached_property
    def _snf(self):
        return _snf([list(r) for r in self.basis], self.dim)

    @property
    def snf(self):
        U, D, V, _ = self._snf
        return U, D, V

    @cached_property
    def invariant_factors(self):
        """Diagonal of the SNF of the basis (length = rank)."""
        _, D, _, _ = self._snf
        return [D[i][i] for i in range(self.rank)]

    @property
    def torsion(self):
        return [d for d in self.invariant_factors if d > 1]

    @property
    def free_rank(self):
        return self.dim - self.rank

    @property
    def is_full_rank(self):
        return self.rank == self.dim

    def index(self):
        """|Z^dim / L| or None when infinite."""
        if not self.is_full_rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def snf_coordinates(self, v):
        """Coordinates of v in Z^dim / L along the Smith basis (torsion then free)."""
        _, _, V, _ = self._snf
        return [sum(v[i] * V[i][j] for i in range(self.dim)) for j in range(self.dim)]

    def reduce(self, v):
        """Canonical coset representative of v and z with ``v - rep = z * basis``."""
        U, D, V, Vi = self._snf
        y = self.snf_coordinates(v)
        q = [0] * self.rank
        for i in range(self.rank):
            d = D[i][i]
            q[i] = y[i] // d
            y[i] -= q[i] * d
        rep = tuple(sum(y[i] * Vi[i][j] for i in range(self.dim)) for j in range(self.dim))
        z = [sum(q[i] * U[i][j] for i in range(self.rank)) for j in range(self.rank)]
        return rep, z

    def contains(self, v):
        return not any(self.reduce(v)[0])

    def express(self, v):
        """z with ``v = z * basis`` or None when v is not in the lattice."""
        rep, z = self.reduce(v)
        return z if not any(rep) else None

    def coset_representatives(self):
        """All canonical representatives of the finite group Z^dim / L."""
        if not self.is_full_rank:
            raise ValueError("quotient is infinite")
        _, D, _, Vi = self._snf
        reps = [[]]
        for i in range(self.dim):
            reps = [r + [a] for r in reps for a in range(D[i][i])]
        return [tuple(sum(y[i] * Vi[i][j] for i in range(self.dim)) for j in range(self.dim)) for y in reps]

    def from_snf_coordinates(self, y):
        _, _, _, Vi = self._snf
        return tuple(sum(y[i] * Vi[i][j] for i in range(self.dim)) for j in range(self.dim))

    def contains_lattice(self, other):
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other):
        return isinstance(other, IntegerLattice) and self.dim == other.dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.dim, tuple(self.basis)))

    def __repr__(self):
        return f"IntegerLattice(dim={self.dim}, basis={[list(b) for b in self.basis]})"
