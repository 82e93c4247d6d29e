"""Free difference modules over the supported base rings.

A module is given on a distinguished basis by an invertible matrix A with
tau(e_j) = sum_i A_ij e_i; coordinates then transform as c -> A tau(c) and
fixed vectors solve A tau(v) = v.  The recurrence form y(tau x) = B y(x)
users write corresponds to A = B^-1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import linalg
from .errors import DomainError, UnsupportedError
from .rings import CyclicProduct, ProductElement, QDilationField, ShiftField, ShiftPolyRing
from .rsolve import DEFAULT_DEGREE_CAP, RANK_CAP, SolutionSet, rational_solutions


def _zero_one(R):
    return R.zero, R.one


def matrix_inverse(R, M):
    """Inverse over R; raises DomainError when det M is not a unit."""
    n = len(M)
    if isinstance(R, CyclicProduct):
        K = R.field
        blocks = []
        for c in range(R.n):
            Mc = [[M[i][j].coords[c] for j in range(n)] for i in range(n)]
            try:
                blocks.append(linalg.inverse(Mc, K.zero, K.one))
            except ZeroDivisionError:
                raise DomainError("matrix is not invertible over the base ring") from None
        return [[R.element([blocks[c][i][j] for c in range(R.n)]) for j in range(n)] for i in range(n)]
    if isinstance(R, ShiftPolyRing):
        from .rings import ShiftField as _SF

        F = _SF(R.field)
        Minv = matrix_inverse(F, [[F.element(e) for e in row] for row in M])
        out = []
        for row in Minv:
            if not all(e.is_polynomial() for e in row):
                raise DomainError("matrix is not invertible over the base ring")
            out.append([R.element(e) for e in row])
        return out
    zero, one = _zero_one(R)
    try:
        Minv = linalg.inverse(M, zero, one)
    except ZeroDivisionError:
        raise DomainError("matrix is not invertible over the base ring") from None
    if not all(R.contains(e) for row in Minv for e in row):
        raise DomainError("matrix is not invertible over the base ring")
    return Minv


def matrix_det(R, M):
    if isinstance(R, CyclicProduct):
        K = R.field
        n = len(M)
        return R.element(
            [linalg.det([[M[i][j].coords[c] for j in range(n)] for i in range(n)], K.zero, K.one) for c in range(R.n)]
        )
    zero, one = _zero_one(R)
    return linalg.det(M, zero, one)


def tau_matrix(R, M, power=1):
    return [[R.tau(e, power) for e in row] for row in M]


def matmul(R, X, Y):
    return linalg.matmul(X, Y, R.zero)


def matvec(R, X, v):
    return linalg.matvec(X, v, R.zero)


class DifferenceModule:
    """Free module of rank n over ``base`` with basis matrix A."""

    def __init__(self, base, A, name=None):
        self.base = base
        self.A = [[base.element(e) for e in row] for row in A]
        n = len(self.A)
        if n < 1 or any(len(row) != n for row in self.A):
            raise DomainError("module matrix must be square of size >= 1")
        self.name = name
        self._Ainv = matrix_inverse(base, self.A)

    @classmethod
    def from_recurrence(cls, base, B, name=None):
        """Module of the system y(tau x) = B y(x): basis matrix A = B^-1."""
        B = [[base.element(e) for e in row] for row in B]
        return cls(base, matrix_inverse(base, B), name)

    @classmethod
    def rank_one(cls, base, a, name=None):
        return cls(base, [[a]], name)

    @classmethod
    def diagonal(cls, base, entries, name=None):
        n = len(entries)
        return cls(base, [[entries[i] if i == j else base.zero for j in range(n)] for i in range(n)], name)

    @property
    def rank(self):
        return len(self.A)

    @property
    def recurrence(self):
        """B = A^-1."""
        return self._Ainv

    def is_diagonal(self):
        n = self.rank
        return all(not self.A[i][j] for i in range(n) for j in range(n) if i != j)

    def diagonal_entries(self):
        if not self.is_diagonal():
            raise DomainError("module is not diagonal")
        return [self.A[i][i] for i in range(self.rank)]

    def act(self, c):
        """tau on coordinates: c -> A tau(c)."""
        return matvec(self.base, self.A, [self.base.tau(e) for e in c])

    def act_inverse(self, c):
        """tau^-1 on coordinates: c -> tau^-1(A^-1 c)."""
        return [self.base.tau(e, -1) for e in matvec(self.base, self._Ainv, c)]

    def __eq__(self, other):
        return isinstance(other, DifferenceModule) and self.base == other.base and self.A == other.A

    def __hash__(self):
        return hash((self.rank, tuple(tuple(row) for row in self.A)))

    def __repr__(self):
        return f"DifferenceModule(rank={self.rank}, A={[[str(e) for e in row] for row in self.A]})"


def construct(kind, M, N=None):
    """dual, tensor, dsum or hom of difference modules."""
    R = M.base
    if N is not None and N.base != R:
        raise DomainError("base ring mismatch")
    if kind == "dual":
        return DifferenceModule(R, linalg.transpose(M._Ainv))
    if N is None:
        raise DomainError(f"{kind} needs two modules")
    if kind == "tensor":
        n, m = M.rank, N.rank
        A = [[M.A[i // m][j // m] * N.A[i % m][j % m] for j in range(n * m)] for i in range(n * m)]
        return DifferenceModule(R, A)
    if kind == "dsum":
        n, m = M.rank, N.rank
        A = [[R.zero] * (n + m) for _ in range(n + m)]
        for i in range(n):
            for j in range(n):
                A[i][j] = M.A[i][j]
        for i in range(m):
            for j in range(m):
                A[n + i][n + j] = N.A[i][j]
        return DifferenceModule(R, A)
    if kind == "hom":
        return construct("tensor", construct("dual", M), N)
    raise DomainError(f"unknown construction {kind!r}")


def pairing(M, v, w):
    """Natural pairing of coordinates of M and of its dual."""
    R = M.base
    out = R.zero
    for a, b in zip(v, w):
        out = out + a * b
    return out


@dataclass
class FixedVectorSpace:
    module: DifferenceModule
    vectors: list
    certified: bool = True
    warnings: list = None

    @property
    def dimension(self):
        return len(self.vectors)


def fixed_vectors(M, degree_cap=DEFAULT_DEGREE_CAP, rank_cap=RANK_CAP) -> FixedVectorSpace:
    """A basis of {v : A tau(v) = v} over the constants."""
    R = M.base
    if isinstance(R, CyclicProduct):
        return FixedVectorSpace(M, _cyclic_fixed(M), True, [])
    if not isinstance(R, (ShiftField, QDilationField)):
        raise UnsupportedError(f"fixed vectors over {R} are not supported")
    if M.rank > rank_cap:
        raise UnsupportedError(f"module of rank {M.rank} exceeds the rank cap {rank_cap}")
    if M.is_diagonal():
        vectors, certified, warnings = [], True, []
        n = M.rank
        for i in range(n):
            sol = rational_solutions(R, [[M.A[i][i].inverse()]], degree_cap=degree_cap)
            certified &= sol.certified
            warnings += sol.warnings
            for (v,) in sol.homogeneous:
                vectors.append([v if j == i else R.zero for j in range(n)])
        out = FixedVectorSpace(M, vectors, certified, warnings)
    else:
        sol = rational_solutions(R, M.recurrence, degree_cap=degree_cap, rank_cap=rank_cap)
        out = FixedVectorSpace(M, sol.homogeneous, sol.certified, sol.warnings)
    for v in out.vectors:
        if M.act(v) != v:
            raise AssertionError("computed fixed vector fails A tau(v) = v")
    return out


def _cyclic_fixed(M):
    R = M.base
    K = R.field
    n, N = M.rank, R.n
    # unknown v[j].coords[c] at index j*N + c
    rows = []
    for i in range(n):
        for c in range(N):
            row = [K.zero] * (n * N)
            src = R._perm[c]
            for j in range(n):
                row[j * N + src] = row[j * N + src] + M.A[i][j].coords[c]
            row[i * N + c] = row[i * N + c] - K.one
            rows.append(row)
    basis = linalg.nullspace(rows, n * N, K.zero, K.one)
    return [[ProductElement(K, v[j * N:(j + 1) * N]) for j in range(n)] for v in basis]


def is_trivial(M, degree_cap=DEFAULT_DEGREE_CAP):
    """Fundamental matrix (fixed columns, invertible) or None."""
    fv = fixed_vectors(M, degree_cap)
    if fv.dimension != M.rank:
        return None
    F = [[fv.vectors[j][i] for j in range(M.rank)] for i in range(M.rank)]
    matrix_inverse(M.base, F)
    return F


def scalar_rational_solutions(R, a, b=None, degree_cap=DEFAULT_DEGREE_CAP) -> SolutionSet:
    """Solutions of tau(y) = a y + b as an affine space of rational functions."""
    a = R.element(a)
    if not a:
        raise DomainError("a must be nonzero")
    sol = rational_solutions(R, [[a]], [R.element(b)] if b is not None else None, degree_cap=degree_cap)
    return sol
