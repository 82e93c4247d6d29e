"""Difference Galois groups of diagonal modules.

The group is diagonalizable with character group Z^n / L, L the relation
lattice of the scalars.  A point of the group is a tuple of constants
(g_1..g_n) with prod g_i^lam_i = 1 for lam in L; it acts on the PV ring by
t^k -> g^k t^k.

Character labels: a rank-one module M_b in the category has b = a^alpha times
a coboundary; its fibre is spanned by t^-alpha / r, so a point g acts on that
fibre through g^-alpha.  The class of alpha in Z^n / L is used as the label.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from math import gcd

from .algebra import IntegerLattice, Poly, poly_factor, primitive_root_of_unity, roots_of_unity
from .algebra.lattice import _snf
from .errors import DomainError
from .modules import DifferenceModule
from .orbits import tau_coboundary
from .pv import PVIsomorphism, PVPresentation, _check_isomorphism, _product, relation_lattice, trivializing_data


@dataclass
class DiagonalizableGroup:
    lattice: IntegerLattice
    field: object

    @property
    def n(self):
        return self.lattice.dim

    @property
    def invariant_factors(self):
        return [d for d in self.lattice.invariant_factors if d > 1]

    @property
    def torus_rank(self):
        return self.lattice.free_rank

    @property
    def is_finite(self):
        return self.torus_rank == 0

    @property
    def order(self):
        """Order of the group over an algebraically closed field (None if infinite)."""
        if not self.is_finite:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def points_count(self):
        """|G(C_R)| = |Hom(Z^n/L, C_R^*)| for finite G."""
        if not self.is_finite:
            return None
        w, _ = roots_of_unity(self.field)
        out = 1
        for d in self.invariant_factors:
            out *= gcd(d, w)
        return out

    def describe(self):
        parts = [f"mu_{d}" for d in self.invariant_factors]
        if self.torus_rank == 1:
            parts.append("G_m")
        elif self.torus_rank > 1:
            parts.append(f"G_m^{self.torus_rank}")
        return " x ".join(parts) if parts else "trivial"

    def to_json(self):
        return {"invariant_factors": self.invariant_factors, "torus_rank": self.torus_rank, "field": self.field.name}

    def character_class(self, k):
        rep, _ = self.lattice.reduce(list(k))
        return tuple(rep)

    # points --------------------------------------------------------------
    def element(self, scalars):
        return GroupElement(self, tuple(self.field(g) for g in scalars))

    def from_smith(self, h):
        """Point with Smith coordinates h (h_l^d_l = 1 on torsion directions)."""
        _, D, V, _ = self.lattice._snf
        K = self.field
        h = [K(c) for c in h]
        for l in range(self.lattice.rank):
            if h[l] ** D[l][l] != 1:
                raise DomainError("Smith coordinate is not a root of unity of the required order")
        g = []
        for i in range(self.n):
            v = K.one
            for l in range(self.n):
                if V[i][l]:
                    v = v * h[l] ** V[i][l]
            g.append(v)
        return self.element(g)

    def identity(self):
        return self.element([1] * self.n)

    def generators(self):
        """Points generating G(C_R) direction by direction (torsion roots that exist in C_R; 2 on torus directions)."""
        _, D, _, _ = self.lattice._snf
        out, missing = [], []
        for l in range(self.n):
            h = [self.field.one] * self.n
            if l < self.lattice.rank:
                d = D[l][l]
                if d == 1:
                    continue
                z = primitive_root_of_unity(self.field, d)
                if z is None:
                    missing.append(d)
                    continue
                h[l] = z
            else:
                h[l] = self.field(2)
            out.append(self.from_smith(h))
        return out, missing

    def points(self):
        """All points over C_R of a finite group."""
        if not self.is_finite:
            raise DomainError("the group is infinite")
        _, D, _, _ = self.lattice._snf
        choices = []
        for l in range(self.n):
            d = D[l][l]
            w, zeta = roots_of_unity(self.field)
            g = gcd(d, w)
            z = zeta ** (w // g)
            choices.append([z ** j for j in range(g)])
        return [self.from_smith(list(h)) for h in itertools.product(*choices)]


@dataclass(frozen=True)
class GroupElement:
    group: DiagonalizableGroup
    scalars: tuple

    def __post_init__(self):
        if len(self.scalars) != self.group.n:
            raise DomainError("wrong number of coordinates")
        if any(not g for g in self.scalars):
            raise DomainError("group coordinates must be nonzero")
        for lam in self.group.lattice.basis:
            if self.character_value(lam) != 1:
                raise DomainError(f"inconsistent group element: it does not fix the relation for {list(lam)}")

    def character_value(self, k):
        out = self.group.field.one
        for g, e in zip(self.scalars, k):
            if e:
                out = out * g ** e
        return out

    def __mul__(self, other):
        return GroupElement(self.group, tuple(a * b for a, b in zip(self.scalars, other.scalars)))

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.scalars) + ")"


def galois_group(M: DifferenceModule) -> DiagonalizableGroup:
    if not M.is_diagonal():
        raise DomainError("outside diagonalizable scope: split the module first")
    L, _ = relation_lattice(M.base, M.diagonal_entries())
    return DiagonalizableGroup(L, M.base.field)


def group_of(S: PVPresentation) -> DiagonalizableGroup:
    return DiagonalizableGroup(S.lattice, S.field)


def act(g: GroupElement, s):
    """The automorphism of S determined by g applied to s: t^k -> g^k t^k."""
    S = s.ring
    if S.lattice != g.group.lattice:
        raise DomainError("group element and PV ring have different lattices")
    terms = {}
    for k, c in s.terms.items():
        terms[k] = c * g.character_value(k)
    return type(s)(S, terms)


# -- automorphisms -------------------------------------------------------------


def _roots(c, d):
    K = c.field
    y = Poly.x(K)
    return [-f.coeff(0) for f, _ in poly_factor(y ** d - c) if f.degree() == 1]


def _all_twists(R, lattice, targets):
    """All constants kappa with prod kappa^lam = targets[lam] (finite lattice quotients)."""
    K = R.field
    m = lattice.dim
    basis = [list(b) for b in lattice.basis]
    U, D, V, _ = _snf(basis, m)
    cs = [K(targets[tuple(b)]) for b in basis]
    options = []
    for l in range(m):
        cl = K.one
        for j, c in enumerate(cs):
            if U[l][j]:
                cl = cl * c ** U[l][j]
        options.append(_roots(cl, D[l][l]))
    out = []
    for mus in itertools.product(*options):
        kappa = []
        for i in range(m):
            k = K.one
            for l in range(m):
                if V[i][l]:
                    k = k * mus[l] ** V[i][l]
            kappa.append(k)
        out.append(kappa)
    return out


def automorphism_count_check(S: PVPresentation):
    """Enumerate monomial automorphisms of S over R commuting with tau and compare with |G(C_R)|."""
    G = group_of(S)
    if not G.is_finite:
        return {"status": "skipped (infinite)"}
    R = S.base
    reps = sorted(S.lattice.coset_representatives())
    candidates = []
    for i in range(S.m):
        opts = []
        for beta in reps:
            ratio = S.tau_scalars[i] / _product(R, S.tau_scalars, beta)
            r = tau_coboundary(R, ratio)
            if r is not None:
                opts.append((list(beta), r))
        candidates.append(opts)
    found = []
    for choice in itertools.product(*candidates):
        betas = [b for b, _ in choice]
        units = [r for _, r in choice]
        targets = {}
        ok = True
        for lam in S.lattice.basis:
            img = [sum(lam[i] * betas[i][c] for i in range(S.m)) for c in range(S.m)]
            rep, factor = S.reduce(img)
            if any(rep):
                ok = False
                break
            u = R.one
            for i, a in enumerate(lam):
                if a:
                    u = u * units[i] ** a
            kappa = S.witnesses[lam] / (u * factor)
            targets[lam] = kappa.constant_value()
        if not ok:
            continue
        for kappa in _all_twists(R, S.lattice, targets):
            phi = PVIsomorphism(S, S, [u * k for u, k in zip(units, kappa)], betas, {})
            checks = _check_isomorphism(phi)
            if all(checks.values()):
                found.append(phi)
    images = {tuple(str(phi.image_of_generator(i)) for i in range(S.m)) for phi in found}
    count = len(images)
    expected = G.points_count()
    return {
        "status": "pass" if count == expected else "fail",
        "automorphisms": count,
        "group_points": expected,
        "group_order": G.order,
        "images": sorted(list(t) for t in images),
    }


# -- invariants ------------------------------------------------------------------


def fixed_subring_check(S: PVPresentation, G: DiagonalizableGroup | None = None, samples=100, rng=None):
    """S^G = R: symbolic monomial argument plus randomized non-invariance checks."""
    G = G or group_of(S)
    rng = rng or random.Random(0)
    trace = [
        "every element of S is a finite sum of c_k t^k over coset representatives k of Z^n / L",
        "a point g scales c_k t^k by g^k, so invariance under G forces g^k = 1 on every point with c_k != 0",
        "the characters of a diagonalizable group separate the classes of Z^n / L, so k lies in L",
        "the canonical representative of L is 0, hence an invariant element is c_0 in R",
    ]
    gens, missing = G.generators()
    if missing:
        trace.append(
            f"spot checks skip torsion directions of order {missing}: their roots of unity lie outside {G.field.name}"
        )
    checked = 0
    reps = [k for k in S.small_representatives(box=2) if any(k)]
    if not reps:
        trace.append("S = R, no non-R elements to test")
        return True, trace
    ok = True
    # monomial by monomial: every class of Z^n / L (a box of them when G has a torus)
    for k in reps:
        mono = S.monomial(tuple(k))
        mover = next((g for g in gens if act(g, mono) != mono), None)
        if mover is not None:
            trace.append(f"t^{list(k)} -> {act(mover, mono)} under g = {mover}")
        elif missing:
            trace.append(f"t^{list(k)} is moved only by points outside {G.field.name}")
        else:
            ok = False
            trace.append(f"t^{list(k)} is fixed by every generator")
    for _ in range(samples):
        f = S.random_element(rng)
        k = reps[rng.randrange(len(reps))]
        f = f + S.monomial(k, S.base.random_element(rng) or 1)
        if f.in_base():
            continue
        checked += 1
        moved = any(act(g, f) != f for g in gens)
        if not moved and not missing:
            ok = False
    trace.append(f"{checked} random elements outside R were each moved by some generator of G(C_R)")
    return ok, trace


# -- fibre functor and descent -------------------------------------------------------


@dataclass
class RepresentationData:
    dimension: int
    characters: list
    basis: list = dc_field(default_factory=list)
    labels: list = dc_field(default_factory=list)

    def to_json(self):
        return {"dimension": self.dimension, "characters": [list(c) for c in self.characters], "basis": self.labels}


def fibre_functor(N: DifferenceModule, S: PVPresentation) -> RepresentationData:
    """(N tensor S)^tau for a diagonal N in the category of S, with its characters."""
    if not N.is_diagonal():
        raise DomainError("outside diagonalizable scope")
    if N.base != S.base:
        raise DomainError("base ring mismatch")
    characters, basis, labels = [], [], []
    for j, b in enumerate(N.diagonal_entries()):
        data = trivializing_data(S, b)
        if data is None:
            raise DomainError("not in category: the module is not trivialized by this PV ring")
        alpha, r = data
        f = S.monomial(tuple(-a for a in alpha), r.inverse())
        if S.tau(f) * S.scalar(b) != f:
            raise AssertionError("fibre vector is not tau-fixed")
        characters.append(alpha)
        basis.append(f)
        labels.append(f"({f})*e{j + 1}")
    return RepresentationData(N.rank, characters, basis, labels)


@dataclass
class DescentResult:
    module: DifferenceModule
    representative: tuple
    checks: dict

    def to_json(self):
        return {
            "representative": list(self.representative),
            "scalar": str(self.module.A[0][0]),
            "checks": dict(sorted(self.checks.items())),
        }


def descend(chi, S: PVPresentation) -> DescentResult:
    """Rank-one module realizing the character class chi, with its postconditions verified."""
    R = S.base
    k, _ = S.lattice.reduce(list(chi))
    k = tuple(k)
    scalar = _product(R, S.tau_scalars, k)
    M = DifferenceModule.rank_one(R, scalar)
    rep = fibre_functor(M, S)
    checks = {
        "fibre_character": rep.characters == [k],
        "trivial_over_S": rep.dimension == 1 and bool(rep.basis[0]),
    }
    independent = True
    for lam in S.lattice.basis:
        other = _product(R, S.tau_scalars, [a + b for a, b in zip(k, lam)])
        if tau_coboundary(R, other / scalar) is None:
            independent = False
    checks["representative_independent"] = independent
    if not all(checks.values()):
        raise AssertionError(f"descent postconditions failed: {checks}")
    return DescentResult(M, k, checks)
