"""Rational solutions of first-order linear difference systems tau(v) = B v + b.

The solver is bound-then-ansatz.  A denominator bound is obtained orbit by
orbit from pole orders of B, B^-1 and b (propagating forwards with B^-1 and
backwards with B, then taking the minimum); a degree bound at infinity (and
at 0 for the q-dilation) comes from leading-term analysis for scalar and
diagonal systems and from eigenvalue arguments for constant matrices.  The
unknown numerator is then found by exact linear algebra over the constants.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field

from .algebra import Poly, RatFunc, int_log, poly_factor
from .algebra import linalg
from .errors import UnsupportedError
from .orbits import group_orbits, is_q_ring, orbit_member
from .rings import QDilationField, ShiftField

log = logging.getLogger(__name__)

DEFAULT_DEGREE_CAP = 24
RANK_CAP = 8


@dataclass
class SolutionSet:
    """Affine space particular + span(homogeneous), vectors of RatFunc."""

    particular: list | None
    homogeneous: list
    certified: bool = True
    warnings: list = dc_field(default_factory=list)
    denominator: Poly | None = None
    numerator_degree: int | None = None

    @property
    def dimension(self):
        return len(self.homogeneous)


def charpoly(matrix, field):
    """det(y*I - M) for a constant matrix, by interpolation at n+1 points."""
    n = len(matrix)
    xs = list(range(n + 1))
    ys = []
    for t in xs:
        shifted = [[(field(t) if i == j else field.zero) - matrix[i][j] for j in range(n)] for i in range(n)]
        ys.append(linalg.det(shifted, field.zero, field.one))
    out = Poly(field, ())
    for i, xi in enumerate(xs):
        term = Poly.const(field, ys[i])
        for j, xj in enumerate(xs):
            if j != i:
                term = term * Poly(field, [-xj, 1]) * field(xi - xj).inverse()
        out = out + term
    return out


def eigenvalues_in_field(matrix, field):
    """Eigenvalues lying in ``field`` (with the characteristic polynomial)."""
    p = charpoly(matrix, field)
    vals = []
    for f, _ in poly_factor(p):
        if f.degree() == 1:
            vals.append(-f.coeff(0))
    return vals, p


# -- bounds ----------------------------------------------------------------

def _entries(matrix):
    return [e for row in matrix for e in row]


def _poly_factors(elements, q_case):
    out = []
    for e in elements:
        if not e:
            continue
        for part in (e.num, e.den):
            if part.degree() > 0:
                for f, _ in poly_factor(part):
                    if q_case and f.degree() == 1 and not f.coeff(0):
                        continue
                    if f not in out:
                        out.append(f)
    return out


def _min_order(elements, p):
    orders = [e.order_at(p) for e in elements if e]
    return min(orders) if orders else None


def denominator_bound(R, B, Binv, b=None):
    """Monic D such that every rational solution has denominator dividing D
    (x excluded in the q-dilation case)."""
    q_case = is_q_ring(R)
    Bent = _entries(B)
    Aent = _entries(Binv)
    bent = [e for e in (b or []) if e]
    Ab = [sum((Binv[i][j] * b[j] for j in range(len(b))), RatFunc.const(R.field, 0)) for i in range(len(b))] if b else []
    Ab = [e for e in Ab if e]
    polys = _poly_factors(Bent + Aent + bent + Ab, q_case)
    reps, index = group_orbits(R, polys)
    D = Poly.const(R.field, 1)
    for i, rep in enumerate(reps):
        ks = [k for f, (j, k) in index.items() if j == i]
        lo, hi = min(ks), max(ks)
        ordB, ordA, ordb, ordAb = {}, {}, {}, {}
        for k in range(lo, hi + 1):
            p = orbit_member(R, rep, k)
            ordB[k] = _min_order(Bent, p) or 0
            ordA[k] = _min_order(Aent, p) or 0
            ordb[k] = _min_order(bent, p) if bent else None
            ordAb[k] = _min_order(Ab, p) if Ab else None
        # forward: P_k <= max(0, P_{k-1} - ord_k A, -ord_k(A b))
        F = {}
        prev = 0
        for k in range(lo, hi + 1):
            cands = [0, prev - ordA[k]]
            if ordAb[k] is not None:
                cands.append(-ordAb[k])
            prev = max(cands)
            F[k] = prev
        # backward: P_{k-1} <= max(0, P_k - ord_k B, -ord_k b)
        G = {}
        nxt = 0
        for k in range(hi, lo - 1, -1):
            cands = [0, nxt - ordB[k]]
            if ordb[k] is not None:
                cands.append(-ordb[k])
            nxt = max(cands)
            G[k - 1] = nxt
        for k in range(lo, hi + 1):
            e = min(F[k], G.get(k, 0) if k < hi else 0)
            if e > 0:
                D = D * orbit_member(R, rep, k) ** e
    return D


def _a1(a: RatFunc):
    """Coefficient of 1/x in a = 1 + a1/x + ... (requires degree 0, ratio 1)."""
    d = a.num.degree()
    if d == 0:
        return a.num.coeff(0) * 0
    return a.num.coeff(d - 1) / a.num.lc() - a.den.coeff(d - 1)


def scalar_degree_bound(R, a: RatFunc, b: RatFunc | None):
    """Upper bound N for deg(y) (num minus den) of solutions of tau(y) = a y + b, or None."""
    cands = []
    delta, alpha = a.degree(), a.leading_ratio()
    if is_q_ring(R):
        if delta == 0:
            k = int_log(R.q, alpha)
            if k is not None:
                cands.append(k)
        if b:
            cands.append(b.degree() - delta if delta > 0 else b.degree())
    else:
        if delta == 0 and alpha == 1:
            a1 = _a1(a)
            if a1.is_integer():
                cands.append(int(a1.to_fraction()))
        if b:
            beta = b.degree()
            if delta > 0:
                cands.append(beta - delta)
            elif delta < 0 or alpha != 1:
                cands.append(beta)
            else:
                cands.append(beta + 1)
    return max(cands) if cands else None


def scalar_valuation_bound(R, a: RatFunc, b: RatFunc | None):
    """Lower bound for the x-adic valuation of solutions (q-dilation), or None."""
    cands = []
    delta, alpha = a.valuation0(), a.lowest_ratio()
    if delta == 0:
        k = int_log(R.q, alpha)
        if k is not None:
            cands.append(k)
    if b:
        beta = b.valuation0()
        cands.append(beta - delta if delta < 0 else beta)
    return min(cands) if cands else None


def _is_diagonal(M):
    return all(not M[i][j] for i in range(len(M)) for j in range(len(M)) if i != j)


def _constant_matrix(M):
    return all(e.is_constant() for row in M for e in row)


def _system_bounds(R, B, b, n, warnings):
    """(N, nu, certified) with deg v_i <= N and val v_i >= nu (nu only for the q-case)."""
    q_case = is_q_ring(R)
    homogeneous = not b or not any(b)
    if n == 1 or _is_diagonal(B):
        Ns, nus = [], []
        for i in range(n):
            bi = b[i] if b else None
            Ni = scalar_degree_bound(R, B[i][i], bi)
            if Ni is not None:
                Ns.append(Ni)
            if q_case:
                nui = scalar_valuation_bound(R, B[i][i], bi)
                if nui is not None:
                    nus.append(nui)
        if not Ns or (q_case and not nus):
            return None, None, True
        return max(Ns), (min(nus) if q_case else 0), True
    if homogeneous and _constant_matrix(B):
        K = R.field
        if not q_case:
            return n - 1, 0, True
        C = [[e.constant_value() for e in row] for row in B]
        lams, _ = eigenvalues_in_field(C, K)
        ks = [k for k in (int_log(R.q, lam) for lam in lams) if k is not None]
        if not ks:
            return None, None, True
        return max(ks), min(ks), True
    return None, None, False


# -- ansatz ----------------------------------------------------------------

def rational_solutions(R, B, b=None, degree_cap=DEFAULT_DEGREE_CAP, rank_cap=RANK_CAP):
    """All rational solutions of tau(v) = B v + b over a shift or q-dilation field."""
    if not isinstance(R, (ShiftField, QDilationField)):
        raise UnsupportedError(f"rational solutions need a shift or q-dilation field, not {R}")
    n = len(B)
    if n > rank_cap:
        raise UnsupportedError(f"system of rank {n} exceeds the rank cap {rank_cap}")
    K = R.field
    zero = RatFunc.const(K, 0)
    B = [[R.element(e) for e in row] for row in B]
    b = [R.element(e) for e in b] if b is not None else None
    if b is not None and not any(b):
        b = None
    Binv = linalg.inverse(B, zero, RatFunc.const(K, 1))
    warnings = []
    q_case = is_q_ring(R)

    D = denominator_bound(R, B, Binv, b)
    N, nu, certified = _system_bounds(R, B, b, n, warnings)
    if not certified:
        N, nu = degree_cap, (-degree_cap if q_case else 0)
        warnings.append(f"no certified degree bound for this system; using degree cap {degree_cap}")
    if N is None:
        return SolutionSet(None, [], True, warnings, D, None)
    if not q_case:
        nu = 0
    shift_x = max(0, -nu)
    Deff = D * Poly.x(K) ** shift_x if shift_x else D
    lo = max(nu, 0)
    hi = N + Deff.degree()
    if hi - lo > degree_cap:
        warnings.append(f"certified numerator degree {hi - lo} exceeds the cap {degree_cap}; solutions may be incomplete")
        certified = False
        hi = lo + degree_cap
    for w in warnings:
        log.warning(w)
    if hi < lo:
        return SolutionSet(None, [], certified, warnings, Deff, None)
    return _ansatz(R, B, b, Deff, lo, hi, certified, warnings)


def _ansatz(R, B, b, D, lo, hi, certified, warnings):
    K = R.field
    n = len(B)
    tD = R.tau(RatFunc(D))
    # L = common multiple of all denominators once everything is multiplied out
    L = tD.num
    for row in B:
        for e in row:
            if e:
                L = _lcm(L, (e / RatFunc(D)).den)
    if b:
        for e in b:
            if e:
                L = _lcm(L, e.den)
    Lr = RatFunc(L)
    Lt = (Lr / tD).num
    Mpoly = [[(Lr * B[k][i] / RatFunc(D)).num for i in range(n)] for k in range(n)]
    Lb = [(Lr * e).num if e else Poly(K, ()) for e in b] if b else None
    x = Poly.x(K)
    columns = []
    for i in range(n):
        for j in range(lo, hi + 1):
            xj = x ** j
            txj = R.tau(RatFunc(xj)).num
            col = []
            for k in range(n):
                p = -(xj * Mpoly[k][i])
                if k == i:
                    p = p + txj * Lt
                col.append(p)
            columns.append(col)
    if Lb is not None:
        columns.append([-p for p in Lb])
    width = max((p.degree() for col in columns for p in col), default=0) + 1
    rows = []
    for k in range(n):
        for m in range(width):
            row = [col[k].coeff(m) for col in columns]
            if any(row):
                rows.append(row)
    nunk = len(columns)
    nhom = nunk - (1 if Lb is not None else 0)
    hom_rows = [r[:nhom] for r in rows]
    basis = linalg.nullspace(hom_rows, nhom, K.zero, K.one)
    width_sol = hi - lo + 1

    def to_vector(coeffs):
        vec = []
        for i in range(n):
            P = Poly(K, [K.zero] * lo + list(coeffs[i * width_sol:(i + 1) * width_sol]))
            vec.append(RatFunc(P, D))
        return vec

    homogeneous = [_normalize(to_vector(v)) for v in basis]
    particular = None
    if Lb is not None:
        A = [r[:nhom] for r in rows]
        rhs = [-r[nhom] for r in rows]
        sol = linalg.solve(A, rhs, K.zero) if rows else [K.zero] * nhom
        if sol is not None:
            particular = to_vector(sol)
    return SolutionSet(particular, homogeneous, certified, warnings, D, hi)


def _lcm(p, q):
    return (p * q).exact_div(p.gcd(q)).monic()


def _normalize(vec):
    for e in vec:
        if e:
            c = e.num.lc()
            return [v * c.inverse() for v in vec]
    return vec


def check_solution(R, B, b, v):
    """Exact substitution check tau(v) == B v + b."""
    n = len(B)
    lhs = [R.tau(e) for e in v]
    for k in range(n):
        rhs = sum((B[k][i] * v[i] for i in range(n)), RatFunc.const(R.field, 0))
        if b:
            rhs = rhs + b[k]
        if lhs[k] != rhs:
            return False
    return True
