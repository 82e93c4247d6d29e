"""Picard-Vessiot rings of diagonal difference modules as monomial extensions.

For a diagonal module with scalars a_1..a_m the ring is
S = R[t_1^+-1, ..., t_m^+-1] / (t^lam - r_lam : lam in L) with tau(t_i) = a_i t_i,
where L is the lattice of exponent vectors k such that prod a_i^k_i is a
tau-coboundary and r_lam is a coboundary witness.  Elements are stored on the
monomial basis indexed by canonical coset representatives of Z^m / L.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import sympy

from .algebra import linalg
from .algebra import IntegerLattice, Poly, RatFunc, integer_kernel, poly_factor, roots_of_unity
from .algebra.lattice import _snf, solve_left
from .errors import DomainError, UnsupportedError
from .modules import DifferenceModule, construct, fixed_vectors
from .orbits import is_q_ring, orbit_decompose, orbit_decompose_many, tau_coboundary
from .rings import DifferenceIdeal, QDilationField, ShiftField, SimplicityCertificate

# -- multiplicative relations among constants ----------------------------------


def _prime_exponents(r: Fraction):
    out = {}
    for n, sign in ((r.numerator, 1), (r.denominator, -1)):
        for p, e in sympy.factorint(abs(n)).items():
            out[p] = out.get(p, 0) + sign * e
    return out


def multiplicative_relations(values, field):
    """Lattice {z : prod values_j^z_j = 1} for nonzero constants.

    Supported constants are those with a power in Q (roots of unity times
    radicals of rationals); anything else is rejected.
    """
    s = len(values)
    if s == 0:
        return IntegerLattice([], 0)
    w, zeta = roots_of_unity(field)
    e = field.degree * w
    rhos = []
    for g in values:
        rho = field(g) ** e
        if not rho.is_rational():
            raise UnsupportedError(f"unsupported constant class: no power of {g} is rational")
        rhos.append(rho.to_fraction())
    pexps = [_prime_exponents(r) for r in rhos]
    primes = sorted(set().union(*pexps))
    rows = [[pe.get(p, 0) for pe in pexps] for p in primes]
    lam1 = integer_kernel(rows, s) if rows else IntegerLattice([[int(i == j) for j in range(s)] for i in range(s)], s)
    logs = []
    for z in lam1.basis:
        eta = field.one
        for g, k in zip(values, z):
            if k:
                eta = eta * field(g) ** k
        for k in range(w):
            if zeta ** k == eta:
                logs.append(k)
                break
        else:
            raise AssertionError("relation value is not a root of unity in the field")
    r = len(logs)
    if r == 0:
        return IntegerLattice([], s)
    modk = integer_kernel([logs + [w]], r + 1)
    gens = []
    for y in modk.basis:
        gens.append([sum(y[j] * lam1.basis[j][i] for j in range(r)) for i in range(s)])
    return IntegerLattice(gens, s)


def _product(R, scalars, k):
    out = R.one
    for a, e in zip(scalars, k):
        if e:
            out = out * a ** e
    return out


def relation_lattice(R, scalars):
    """(L, witnesses): L = {k : prod a_i^k_i is a coboundary}, witnesses r_lam for L's basis."""
    if not isinstance(R, (ShiftField, QDilationField)):
        raise UnsupportedError(f"relation lattices need a shift or q-dilation field, not {R}")
    scalars = [R.element(a) for a in scalars]
    n = len(scalars)
    for a in scalars:
        if not a:
            raise DomainError("scalars must be nonzero")
    if n == 0:
        return IntegerLattice([], 0), {}
    decs = orbit_decompose_many(R, scalars)
    norb = len(decs[0].orbits)
    rows = [[decs[j].orbits[i].total for j in range(n)] for i in range(norb)]
    if is_q_ring(R):
        rows.append([d.x_valuation for d in decs])
    rows = [r for r in rows if any(r)]
    stage1 = integer_kernel(rows, n) if rows else IntegerLattice([[int(i == j) for j in range(n)] for i in range(n)], n)
    consts = [d.constant for d in decs]
    gammas = []
    for wvec in stage1.basis:
        g = R.field.one
        for c, k in zip(consts, wvec):
            if k:
                g = g * c ** k
        gammas.append(g)
    r = len(gammas)
    if is_q_ring(R):
        rel = multiplicative_relations(gammas + [R.q], R.field)
        stage2 = IntegerLattice([v[:r] for v in rel.basis], r)
    else:
        stage2 = multiplicative_relations(gammas, R.field)
    gens = [[sum(z[j] * stage1.basis[j][i] for j in range(r)) for i in range(n)] for z in stage2.basis]
    L = IntegerLattice(gens, n)
    witnesses = {}
    for lam in L.basis:
        w = tau_coboundary(R, _product(R, scalars, lam))
        if w is None:
            raise AssertionError(f"lattice vector {lam} has no coboundary witness")
        witnesses[lam] = w
    return L, witnesses


# -- monomial extensions ---------------------------------------------------------


def _monomial_str(names, v):
    parts = []
    for name, e in zip(names, v):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


class SElement:
    """Element of a monomial extension: {coset representative: coefficient in R}."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {k: v for k, v in terms.items() if v}

    def _coerce(self, other):
        if isinstance(other, SElement):
            if other.ring is not self.ring and other.ring != self.ring:
                raise DomainError("elements of different rings")
            return other
        return self.ring.scalar(other)

    def __add__(self, other):
        o = self._coerce(other)
        terms = dict(self.terms)
        for k, v in o.terms.items():
            terms[k] = terms[k] + v if k in terms else v
        return SElement(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return SElement(self.ring, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        S = self.ring
        terms = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in o.terms.items():
                rep, factor = S.reduce(tuple(a + b for a, b in zip(k1, k2)))
                c = c1 * c2 * factor
                terms[rep] = terms[rep] + c if rep in terms else c
        return SElement(S, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.ring.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_monomial(self):
        return len(self.terms) == 1

    def inverse(self):
        if not self.is_monomial():
            raise DomainError("only monomial units are inverted")
        ((k, c),) = self.terms.items()
        return self.ring.monomial(tuple(-e for e in k), c.inverse())

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (DomainError, TypeError):
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items(), key=lambda kv: kv[0])))

    def in_base(self):
        return all(not any(k) for k in self.terms)

    def base_value(self):
        if not self.in_base():
            raise DomainError(f"{self} does not lie in the base ring")
        return self.terms.get(self.ring.zero_rep, self.ring.base.zero)

    def support(self):
        return sorted(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            mono = _monomial_str(self.ring.names, k)
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                if any(ch in cs[1:] for ch in "+-/ "):
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"SElement({self})"


class MonomialExtension:
    """R[t^+-1]/(t^lam - r_lam), r_lam units of R, lam over a lattice basis."""

    def __init__(self, base, names, lattice: IntegerLattice, witnesses):
        self.base = base
        self.names = tuple(names)
        self.m = len(self.names)
        if lattice.dim != self.m:
            raise DomainError("lattice dimension does not match the number of generators")
        self.lattice = lattice
        self.witnesses = {}
        for lam in lattice.basis:
            if lam not in witnesses:
                raise DomainError(f"missing witness for lattice vector {list(lam)}")
            r = base.element(witnesses[lam])
            if not base.is_unit(r):
                raise DomainError(f"relation witness {r} is not a unit of the base ring")
            self.witnesses[lam] = r
        self.zero_rep = tuple([0] * self.m)

    @classmethod
    def from_relations(cls, base, names, relations, **kw):
        """Build from arbitrary relations [(lam, r)], deriving witnesses on the HNF basis."""
        rels = [(tuple(int(v) for v in lam), base.element(r)) for lam, r in relations]
        for lam, r in rels:
            if not base.is_unit(r):
                raise DomainError(f"relation witness {r} is not a unit of the base ring")
        L = IntegerLattice([lam for lam, _ in rels], len(names))
        gens = [list(lam) for lam, _ in rels]
        witnesses = {}
        for b in L.basis:
            z = solve_left(gens, list(b), len(names))
            w = base.one
            for (_, r), k in zip(rels, z):
                if k:
                    w = w * r ** k
            witnesses[b] = w
        S = cls(base, names, L, witnesses, **kw)
        for lam, r in rels:
            if S.relation_value(lam) != r:
                raise DomainError("inconsistent relations: the presented ring is zero")
        return S

    # ring structure -----------------------------------------------------------
    def relation_value(self, v):
        """r_v for v in L: the unit with t^v = r_v."""
        z = self.lattice.express(list(v))
        if z is None:
            raise DomainError(f"{list(v)} is not in the relation lattice")
        out = self.base.one
        for lam, k in zip(self.lattice.basis, z):
            if k:
                out = out * self.witnesses[lam] ** k
        return out

    def reduce(self, v):
        """(rep, factor) with t^v = factor * t^rep."""
        rep, z = self.lattice.reduce(list(v))
        factor = self.base.one
        for lam, k in zip(self.lattice.basis, z):
            if k:
                factor = factor * self.witnesses[lam] ** k
        return tuple(rep), factor

    def monomial(self, v, coeff=None):
        rep, factor = self.reduce(v)
        c = factor if coeff is None else factor * self.base.element(coeff)
        return SElement(self, {rep: c})

    def scalar(self, c):
        return SElement(self, {self.zero_rep: self.base.element(c)})

    def gen(self, i):
        return self.monomial(tuple(int(j == i) for j in range(self.m)))

    @property
    def one(self):
        return self.scalar(1)

    @property
    def zero(self):
        return SElement(self, {})

    def element(self, value):
        if isinstance(value, SElement):
            return value
        if isinstance(value, dict):
            out = self.zero
            for k, c in value.items():
                out = out + self.monomial(k, c)
            return out
        return self.scalar(value)

    def contains(self, e):
        return isinstance(e, SElement) and e.ring is self

    def is_unit(self, e):
        return e.is_monomial()

    def ideal_contains(self, gens, f):
        """Membership in the ideal generated by ``gens`` (finite presentations only).

        With Z^m / L finite, S is a finite-dimensional algebra over the field R
        and the ideal is the R-span of the products g * t^k over basis monomials.
        """
        if not self.lattice.is_full_rank or not getattr(self.base, "is_field", False):
            raise UnsupportedError("unsupported ambient ring")
        if not f:
            return True
        reps = sorted(self.lattice.coset_representatives())
        index = {r: i for i, r in enumerate(reps)}
        zero = self.base.zero
        span = []
        for g in gens:
            for r in reps:
                p = g * self.monomial(r)
                row = [zero] * len(reps)
                for k, c in p.terms.items():
                    row[index[k]] = c
                span.append(row)
        target = [zero] * len(reps)
        for k, c in f.terms.items():
            target[index[k]] = c
        if not span:
            return False
        return linalg.rank(span + [target]) == linalg.rank(span)

    def simplicity_certificate(self):
        if isinstance(self, PVPresentation):
            return pv_simplicity_certificate(self)
        return SimplicityCertificate("unknown", ["no tau-action given"])

    def reducedness(self):
        return True, "each relation t^lam = r_lam has r_lam a unit, so the extension is etale over a reduced ring in characteristic 0"

    def monomial_basis(self, box=2):
        """Basis description and, when finite, the full list of representatives."""
        L = self.lattice
        inv = L.invariant_factors + [0] * L.free_rank
        if L.is_full_rank:
            reps = sorted(L.coset_representatives())
            return {"finite": True, "size": len(reps), "representatives": [list(r) for r in reps]}
        return {
            "finite": False,
            "description": f"Smith coordinates y with 0 <= y_i < d_i on torsion directions and y_i in Z on {L.free_rank} free direction(s)",
            "smith_diagonal": inv,
        }

    def small_representatives(self, box=2, limit=400):
        """Canonical coset representatives with free Smith coordinates in [-box, box]."""
        L = self.lattice
        _, D, _, _ = L._snf
        ranges = []
        for i in range(self.m):
            if i < L.rank:
                ranges.append(range(D[i][i]))
            else:
                ranges.append(range(-box, box + 1))
        out = []
        for y in itertools.product(*ranges):
            out.append(L.from_snf_coordinates(list(y)))
            if len(out) >= limit:
                break
        return out

    def random_element(self, rng, terms=3, box=2):
        reps = self.small_representatives(box)
        out = self.zero
        for _ in range(terms):
            rep = reps[rng.randrange(len(reps))]
            out = out + self.monomial(rep, self.base.random_element(rng))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, MonomialExtension)
            and self.base == other.base
            and self.names == other.names
            and self.lattice == other.lattice
            and self.witnesses == other.witnesses
        )

    def __hash__(self):
        return hash((self.names, self.lattice))

    @property
    def name(self):
        rels = ", ".join(f"{_monomial_str(self.names, lam)} = {r}" for lam, r in self.witnesses.items())
        gens = ", ".join(self.names)
        return f"{self.base.name}[{gens}]" + (f"/({rels})" if rels else "")


class PVPresentation(MonomialExtension):
    """Monomial extension with tau(t_i) = a_i t_i, consistent with the relations."""

    def __init__(self, base, names, lattice, witnesses, tau_scalars, module=None):
        super().__init__(base, names, lattice, witnesses)
        self.tau_scalars = tuple(base.element(a) for a in tau_scalars)
        if len(self.tau_scalars) != self.m:
            raise DomainError("one tau scalar per generator is required")
        for a in self.tau_scalars:
            if not base.is_unit(a):
                raise DomainError(f"tau scalar {a} is not a unit")
        for lam, r in self.witnesses.items():
            if _product(base, self.tau_scalars, lam) * r != base.tau(r):
                raise DomainError(f"relation for {list(lam)} is not compatible with tau")
        self.module = module if module is not None else DifferenceModule.diagonal(base, list(self.tau_scalars))

    @property
    def field(self):
        return self.base.field

    def tau(self, e, power=1):
        if power == 0:
            return e
        if power < 0:
            return self._tau_inverse(e, -power)
        terms = {}
        for k, c in e.terms.items():
            for _ in range(power):
                c = self.base.tau(c) * _product(self.base, self.tau_scalars, k)
            terms[k] = c
        return SElement(self, terms)

    def _tau_inverse(self, e, power):
        terms = {}
        for k, c in e.terms.items():
            for _ in range(power):
                c = self.base.tau(c / _product(self.base, self.tau_scalars, k), -1)
            terms[k] = c
        return SElement(self, terms)

    def fundamental_matrix(self):
        """Columns t_i^-1 e_i: a tau-fixed basis of M tensor S."""
        n = self.m
        return [[self.gen(i).inverse() if i == j else self.zero for j in range(n)] for i in range(n)]

    def trivialization(self):
        n = self.m
        A = self.fundamental_matrix()
        B = [[self.gen(i) if i == j else self.zero for j in range(n)] for i in range(n)]
        return TrivializationData(
            v=[f"e{i + 1}" for i in range(n)],
            w=[f"e{i + 1}*" for i in range(n)],
            A=A,
            B=B,
        )

    def to_json(self):
        F = self.fundamental_matrix()
        return {
            "base": self.base.name,
            "generators": list(self.names),
            "tau_scalars": [str(a) for a in self.tau_scalars],
            "torsion": [{"lambda": list(lam), "witness": str(r)} for lam, r in self.witnesses.items()],
            "fundamental_matrix": [[str(e) for e in row] for row in F],
        }


@dataclass
class TrivializationData:
    """e_j = sum_i A_ij v_i in M tensor S and e*_j = sum_i B_ij w_i in the dual."""

    v: list
    w: list
    A: list
    B: list

    def pairing_identity(self):
        n = len(self.A)
        for i in range(n):
            for j in range(n):
                s = self.A[0][0].ring.zero
                for k in range(n):
                    s = s + self.A[k][i] * self.B[k][j]
                if s != (1 if i == j else 0):
                    return False
        return True

    def to_json(self):
        return {
            "v": self.v,
            "w": self.w,
            "A": [[str(e) for e in row] for row in self.A],
            "B": [[str(e) for e in row] for row in self.B],
        }


def _names(m):
    return ["t"] if m == 1 else [f"t{i + 1}" for i in range(m)]


def construct_pv(M: DifferenceModule, twist=None) -> PVPresentation:
    """PV ring of a diagonal module.

    ``twist`` (constants kappa_i) rescales every witness by prod kappa_i^lam_i,
    producing an isomorphic but differently presented ring.
    """
    if not M.is_diagonal():
        raise DomainError("construct_pv needs a diagonal module (use split first)")
    R = M.base
    scalars = M.diagonal_entries()
    L, witnesses = relation_lattice(R, scalars)
    if twist is not None:
        for lam in list(witnesses):
            c = R.field.one
            for k, e in zip(twist, lam):
                if e:
                    c = c * R.field(k) ** e
            witnesses[lam] = witnesses[lam] * c
    return PVPresentation(R, _names(len(scalars)), L, witnesses, scalars, module=M)


# -- verification ---------------------------------------------------------------


@dataclass
class ConditionResult:
    status: str  # pass / fail / unknown
    trace: list = dc_field(default_factory=list)
    witness: dict | None = None

    def to_json(self):
        out = {"status": self.status, "trace": list(self.trace)}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class PVReport:
    conditions: dict

    @property
    def all_pass(self):
        return all(c.status == "pass" for c in self.conditions.values())

    def failing(self):
        return sorted(k for k, c in self.conditions.items() if c.status != "pass")

    def to_json(self):
        return {k: v.to_json() for k, v in sorted(self.conditions.items())}


def _check_free(S):
    trace = []
    for lam, r in S.witnesses.items():
        if not S.base.is_unit(r):
            return ConditionResult("fail", [f"witness {r} for {list(lam)} is not a unit"])
    basis = S.monomial_basis()
    if basis["finite"]:
        trace.append(f"free with the finite monomial basis t^k, k in {basis['representatives']}")
    else:
        trace.append("free with the monomial basis t^k, k over " + basis["description"])
    reps = S.small_representatives(box=1, limit=30)
    for k1 in reps:
        for k2 in reps:
            p = S.monomial(k1) * S.monomial(k2)
            if not p.is_monomial():
                return ConditionResult("fail", trace + ["product of basis monomials is not a unit multiple of a basis monomial"])
            for k3 in reps[:5]:
                if (S.monomial(k1) * S.monomial(k2)) * S.monomial(k3) != S.monomial(k1) * (S.monomial(k2) * S.monomial(k3)):
                    return ConditionResult("fail", trace + ["multiplication is not associative on the basis"])
    trace.append("basis monomials multiply to unit multiples of basis monomials (twisted group algebra over R)")
    trace.append("a nonzero free module is faithfully flat")
    return ConditionResult("pass", trace, {"monomial_basis": basis})


def _non_minimal_witness(S, L_true, true_witnesses):
    """A proper nonzero tau-stable ideal (u - root) built from alpha in L_true \\ L_S."""
    LS = S.lattice
    alpha = next(v for v in L_true.basis if not LS.contains(list(v)))
    r_alpha = true_witnesses[alpha]
    u = S.monomial(alpha) / S.scalar(r_alpha)
    if S.tau(u) != u:
        raise AssertionError("u is not tau-fixed")
    order = None
    for k in range(1, 1 + (LS.index() or 0) if LS.is_full_rank else 0):
        if LS.contains([k * a for a in alpha]):
            order = k
            break
    K = S.field
    y = Poly.x(K)
    if order is None:
        P = y - 1
        gen = u - 1
        if not gen or S.tau(gen) != gen:
            raise AssertionError("bad witness")
        return gen, {
            "ideal": f"({gen})",
            "new_constant": str(u),
            "trace": [
                f"alpha = {list(alpha)} has infinite order modulo the presented lattice",
                f"u = t^alpha / r_alpha = {u} is tau-fixed, so (u - 1) is tau-stable",
                "(u - 1) is proper: adjoining the relation t^alpha = r_alpha gives a nonzero quotient ring",
            ],
        }, "fail"
    c0 = (u ** order).base_value()
    if not c0.is_constant():
        raise AssertionError("u^k is not a constant")
    c0 = c0.constant_value()
    target = y ** order - c0
    factors = poly_factor(target)
    if len(factors) == 1 and factors[0][1] == 1:
        return None, {
            "new_constant": str(u),
            "trace": [
                f"alpha = {list(alpha)} has order {order} modulo the presented lattice; u = {u}, u^{order} = {c0}",
                f"y^{order} - {c0} is irreducible over {K.name}; no splitting ideal is available over these constants",
            ],
        }, "unknown"
    P = factors[0][0]
    Q = target.exact_div(P)

    def ev(poly):
        out = S.zero
        for i, c in enumerate(poly.coeffs):
            if c:
                out = out + S.scalar(c) * u ** i
        return out

    Pu, Qu = ev(P), ev(Q)
    if not Pu or not Qu or Pu * Qu:
        raise AssertionError("zero-divisor witness failed")
    if S.tau(Pu) != Pu:
        raise AssertionError("witness generator is not tau-fixed")
    return Pu, {
        "ideal": f"({Pu})",
        "new_constant": str(u),
        "trace": [
            f"alpha = {list(alpha)} lies in the true relation lattice but not in the presented one",
            f"u = t^alpha / r_alpha = {u} is tau-fixed with u^{order} = {c0}",
            f"y^{order} - {c0} = ({P}) * ({Q}) over {K.name}",
            f"P(u) = {Pu} is tau-fixed and nonzero; P(u) * Q(u) = 0 with Q(u) = {Qu} nonzero, so P(u) is a zero-divisor",
            "hence (P(u)) is a proper nonzero tau-stable ideal",
        ],
    }, "fail"


def _check_simple(S, L_true, true_witnesses):
    LS = S.lattice
    if not L_true.contains_lattice(LS):
        return ConditionResult("fail", ["presented relations are not coboundary relations"])
    if LS == L_true:
        return ConditionResult(
            "pass",
            [
                "a nonzero tau-stable ideal I contains an element f = sum_k c_k t^k of minimal support, c_k0 = 1",
                "a^(-k0) tau(f) - f lies in I with smaller support, so it vanishes",
                "then tau(c_k) a^(k - k0) = c_k: a^(k - k0) is a coboundary, so k - k0 lies in the relation lattice",
                f"the presented lattice {[list(b) for b in LS.basis]} equals the relation lattice, so k = k0",
                "f is a unit monomial and I = S",
            ],
        )
    _, witness, status = _non_minimal_witness(S, L_true, true_witnesses)
    return ConditionResult(status, witness.pop("trace"), witness)


def _check_constants(S, L_true, true_witnesses, degree_cap):
    # route 1: lattice comparison
    lattice_new = S.lattice != L_true
    # route 2: fixed vectors of M_{a^k} for small coset representatives k != 0
    found = []
    for k in S.small_representatives(box=2, limit=60):
        if not any(k):
            continue
        A = _product(S.base, S.tau_scalars, k)
        fv = fixed_vectors(DifferenceModule.rank_one(S.base, A), degree_cap=degree_cap)
        if fv.dimension:
            c = fv.vectors[0][0]
            elt = S.monomial(k, c)
            if S.tau(elt) != elt:
                raise AssertionError("bounded constant search produced a non-constant")
            found.append(elt)
    if lattice_new != bool(found) and S.lattice.is_full_rank:
        return ConditionResult("fail", ["lattice analysis and bounded search disagree"])
    if lattice_new or found:
        w = found[0] if found else None
        return ConditionResult(
            "fail",
            [
                "the presented lattice is strictly smaller than the relation lattice",
                f"new constant {w} is tau-fixed and not in R" if w is not None else "new constants exist",
            ],
            {"new_constant": str(w) if w is not None else None},
        )
    return ConditionResult(
        "pass",
        [
            "a constant f = sum c_k t^k needs tau(c_k) a^k = c_k for each k, i.e. a^k a coboundary",
            "so k lies in the relation lattice = presented lattice, k = 0 and f lies in C_R",
            "bounded search: no rank-one module M_{a^k} with k a small nonzero representative has a fixed vector",
        ],
    )


def _check_fixed_basis(S, M):
    F = S.fundamental_matrix()
    n = S.m
    R = S.base
    for j in range(n):
        col = [F[i][j] for i in range(n)]
        tcol = [S.tau(e) for e in col]
        image = []
        for i in range(n):
            acc = S.zero
            for k in range(n):
                if M.A[i][k]:
                    acc = acc + S.scalar(M.A[i][k]) * tcol[k]
            image.append(acc)
        if image != col:
            return ConditionResult("fail", [f"column {j + 1} of the fundamental matrix is not tau-fixed"])
    for i in range(n):
        if not S.is_unit(F[i][i]) or any(F[i][j] for j in range(n) if j != i):
            return ConditionResult("fail", ["fundamental matrix is not diagonal with unit entries"])
    return ConditionResult(
        "pass",
        [
            "columns t_i^-1 e_i satisfy A tau(v) = v in M tensor S",
            "the matrix is diagonal with unit monomial entries, hence invertible: the columns form a basis",
        ],
        {"fundamental_matrix": [[str(e) for e in row] for row in F]},
    )


def _check_generation(S):
    T = S.trivialization()
    if not T.pairing_identity():
        return ConditionResult("fail", ["the dual fixed basis does not pair to the identity"])
    coeffs = [e for row in T.A + T.B for e in row if e]
    exps = []
    for e in coeffs:
        if not e.is_monomial():
            return ConditionResult("unknown", ["a coefficient is not a unit monomial; monomial bookkeeping does not apply"])
        exps.append(e.support()[0])
    L = S.lattice
    group = IntegerLattice([list(v) for v in exps] + [list(b) for b in L.basis], S.m)
    full = group.is_full_rank and group.index() == 1
    closed = True
    for v in exps:
        neg = tuple(-a for a in v)
        if not any(L.contains([a - b for a, b in zip(neg, w)]) for w in exps):
            order_finite = any(L.contains([k * a for a in v]) for k in range(1, 65))
            if not order_finite:
                closed = False
    if not (full and closed):
        return ConditionResult("fail", ["the coefficients do not generate S as an R-algebra"])
    return ConditionResult(
        "pass",
        [
            "A = " + str([[str(e) for e in row] for row in T.A]) + ", B = " + str([[str(e) for e in row] for row in T.B]),
            f"coefficient monomial exponents {sorted(map(list, set(exps)))} generate Z^{S.m} modulo the relation lattice",
            "the set is closed under negation modulo the lattice, so the generated monoid is the whole group",
            "hence R[A_ij, B_ij] contains every basis monomial and equals S",
        ],
        {"A": [[str(e) for e in row] for row in T.A], "B": [[str(e) for e in row] for row in T.B]},
    )


def verify_pv(S: PVPresentation, M: DifferenceModule | None = None, degree_cap=24) -> PVReport:
    """Check conditions (a)-(e) for S as a PV ring of M."""
    M = M if M is not None else S.module
    if not M.is_diagonal() or list(M.diagonal_entries()) != list(S.tau_scalars):
        raise DomainError("the module does not match the presentation's tau scalars")
    L_true, true_witnesses = relation_lattice(S.base, S.tau_scalars)
    return PVReport(
        {
            "a": _check_free(S),
            "b": _check_simple(S, L_true, true_witnesses),
            "c": _check_constants(S, L_true, true_witnesses, degree_cap),
            "d": _check_fixed_basis(S, M),
            "e": _check_generation(S),
        }
    )


def pv_simplicity_certificate(S):
    """Simplicity of a PV presentation via lattice minimality."""
    L_true, w = relation_lattice(S.base, S.tau_scalars)
    if L_true.contains_lattice(S.lattice) and S.lattice != L_true:
        gen, info, status = _non_minimal_witness(S, L_true, w)
        if status == "unknown":
            return SimplicityCertificate("unknown", info["trace"])
        return SimplicityCertificate("not-simple", info["trace"], DifferenceIdeal(S, [gen]))
    res = _check_simple(S, L_true, w)
    verdict = {"pass": "simple", "fail": "not-simple", "unknown": "unknown"}[res.status]
    return SimplicityCertificate(verdict, res.trace)


# -- isomorphisms -----------------------------------------------------------------


def _kth_root(c, k):
    """A k-th root of the constant c in its field (canonical choice) or None."""
    K = c.field
    y = Poly.x(K)
    for f, _ in poly_factor(y ** k - c):
        if f.degree() == 1:
            return -f.coeff(0)
    return None


def solve_constant_twist(R, lattice, targets):
    """Constants kappa with prod kappa_i^lam_i = targets[lam] for lam in the lattice basis, or None."""
    K = R.field
    m = lattice.dim
    basis = [list(b) for b in lattice.basis]
    if not basis:
        return [K.one] * m, []
    U, D, V, _ = _snf(basis, m)
    cs = [K(targets[tuple(b)]) for b in basis]
    mus = []
    failures = []
    for l in range(m):
        if l < len(basis):
            cl = K.one
            for j, c in enumerate(cs):
                if U[l][j]:
                    cl = cl * c ** U[l][j]
            root = _kth_root(cl, D[l][l])
            if root is None:
                failures.append(f"y^{D[l][l]} - {cl} has no root in {K.name}")
                root = K.one
            mus.append(root)
        else:
            mus.append(K.one)
    kappa = []
    for i in range(m):
        k = K.one
        for l in range(m):
            if V[i][l]:
                k = k * mus[l] ** V[i][l]
        kappa.append(k)
    return (None if failures else kappa), failures


@dataclass
class PVIsomorphism:
    source: PVPresentation
    target: PVPresentation
    units: list
    exponents: list
    checks: dict

    def image_of_generator(self, i):
        return self.target.monomial(tuple(self.exponents[i]), self.units[i])

    def apply(self, e):
        T = self.target
        out = T.zero
        for k, c in e.terms.items():
            coeff = c
            vec = [0] * T.m
            for i, a in enumerate(k):
                if a:
                    coeff = coeff * self.units[i] ** a
                    vec = [v + a * b for v, b in zip(vec, self.exponents[i])]
            out = out + T.monomial(tuple(vec), coeff)
        return out

    def to_json(self):
        return {
            "images": [str(self.image_of_generator(i)) for i in range(self.source.m)],
            "checks": dict(sorted(self.checks.items())),
        }


def pv_isomorphism(S1: PVPresentation, S2: PVPresentation) -> PVIsomorphism:
    """An isomorphism t_i -> u_i t'^beta_i of difference rings over R, verified."""
    R = S1.base
    if S2.base != R:
        raise DomainError("presentations over different base rings")
    m1, m2 = S1.m, S2.m
    joint, _ = relation_lattice(R, list(S1.tau_scalars) + list(S2.tau_scalars))
    proj = [list(b[:m1]) for b in joint.basis]
    betas, units, diagnostics = [], [], []
    for i in range(m1):
        e = [int(j == i) for j in range(m1)]
        z = solve_left(proj, e, m1)
        if z is None:
            raise DomainError(f"no isomorphism: a_{i + 1} is not a monomial times a coboundary in the target scalars")
        vec = [sum(z[j] * joint.basis[j][c] for j in range(len(z))) for c in range(m1 + m2)]
        beta = [-v for v in vec[m1:]]
        ratio = S1.tau_scalars[i] / _product(R, S2.tau_scalars, beta)
        r = tau_coboundary(R, ratio)
        if r is None:
            raise AssertionError("joint lattice vector without coboundary")
        betas.append(beta)
        units.append(r)
    # constant corrections so that relations of S1 map to zero
    targets = {}
    for lam in S1.lattice.basis:
        img_exp = [sum(lam[i] * betas[i][c] for i in range(m1)) for c in range(m2)]
        rep, factor = S2.reduce(img_exp)
        if any(rep):
            raise DomainError("relation exponent does not map into the target lattice")
        u = R.one
        for i, a in enumerate(lam):
            if a:
                u = u * units[i] ** a
        kappa = S1.witnesses[lam] / (u * factor)
        if not kappa.is_constant():
            raise AssertionError("relation correction is not a constant")
        targets[lam] = kappa.constant_value()
    kappa, failures = solve_constant_twist(R, S1.lattice, targets)
    if kappa is None:
        diagnostics.extend(failures)
        raise DomainError("no isomorphism in the monomial ansatz over these constants: " + "; ".join(diagnostics))
    units = [u * k for u, k in zip(units, kappa)]
    phi = PVIsomorphism(S1, S2, units, betas, {})
    phi.checks = _check_isomorphism(phi)
    if not all(phi.checks.values()):
        raise DomainError(f"isomorphism verification failed: {phi.checks}")
    return phi


def _check_isomorphism(phi):
    S1, S2 = phi.source, phi.target
    checks = {}
    checks["commutes_with_tau"] = all(
        phi.apply(S1.tau(S1.gen(i))) == S2.tau(phi.apply(S1.gen(i))) for i in range(S1.m)
    )
    checks["fixes_base"] = phi.apply(S1.scalar(S1.base.x())) == S2.scalar(S2.base.x())
    checks["respects_relations"] = all(
        phi.apply(S1.monomial(lam)) == S2.scalar(r) * phi.apply(S1.one) for lam, r in S1.witnesses.items()
    )
    # bijectivity on exponent groups Z^m1 / L1 -> Z^m2 / L2
    m1, m2 = S1.m, S2.m
    rows = [list(phi.exponents[i]) for i in range(m1)]
    L2 = [list(b) for b in S2.lattice.basis]
    surj = IntegerLattice(rows + L2, m2)
    checks["surjective_on_exponents"] = surj.is_full_rank and surj.index() == 1
    # kernel: v with v*beta in L2  <=>  (v, w) with v*beta + w*L2 = 0
    stacked = rows + L2
    ker = integer_kernel([[stacked[r][c] for r in range(len(stacked))] for c in range(m2)], len(stacked))
    pre = IntegerLattice([list(v[:m1]) for v in ker.basis], m1)
    checks["injective_on_exponents"] = pre == S1.lattice
    return checks


# -- universal PV and category membership ---------------------------------------------


def trivializing_data(S: PVPresentation, b):
    """(alpha, r) with b * a^-alpha = tau(r)/r, alpha a canonical representative, or None.

    Then t^-alpha / r * e is a fixed basis of M_b tensor S.
    """
    R = S.base
    b = R.element(b)
    m = S.m
    joint, _ = relation_lattice(R, list(S.tau_scalars) + [b])
    z = solve_left([[v[m]] for v in joint.basis], [1], 1)
    if z is None:
        return None
    w = [sum(z[j] * joint.basis[j][c] for j in range(len(z))) for c in range(m + 1)]
    alpha = [-v for v in w[:m]]
    rep, _ = S.lattice.reduce(alpha)
    alpha = list(rep)
    r = tau_coboundary(R, b / _product(R, S.tau_scalars, alpha))
    if r is None:
        raise AssertionError("category membership witness failed")
    return tuple(alpha), r


def fixed_vector_of(S, b):
    """A fixed element f of M_b tensor S (coordinate in S) or None."""
    data = trivializing_data(S, b)
    if data is None:
        return None
    alpha, r = data
    return S.monomial(tuple(-a for a in alpha), r.inverse())


def universal_pv(modules) -> tuple:
    """PV ring of the direct sum, with a trivialization check for every generator module."""
    if not modules:
        raise DomainError("universal_pv needs at least one module")
    total = modules[0]
    for N in modules[1:]:
        total = construct("dsum", total, N)
    S = construct_pv(total)
    checks = []
    for N in modules:
        ok = all(_fixed_in(S, b) for b in N.diagonal_entries())
        checks.append(ok)
    if not all(checks):
        raise AssertionError("a generator module is not trivialized")
    return S, checks


def _fixed_in(S, b):
    f = fixed_vector_of(S, b)
    if f is None:
        return False
    return S.tau(f) * S.scalar(b) == f
