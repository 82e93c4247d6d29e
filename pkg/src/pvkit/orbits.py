"""tau-orbits of irreducible polynomials, orbit decompositions and coboundaries.

For the shift the orbit of a monic irreducible p is {p(x+k)}; for the
q-dilation it is {monic(p(q^k x))}, with x itself kept apart as a fixed
point whose exponent is tracked as a valuation.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import Poly, RatFunc, int_log, poly_factor
from .errors import DomainError, UnsupportedError
from .rings import QDilationField, ShiftField


def is_q_ring(R):
    return isinstance(R, QDilationField)


def _check_ring(R):
    if not isinstance(R, (ShiftField, QDilationField)):
        raise UnsupportedError(f"orbit computations need a shift or q-dilation field, not {R}")


def orbit_member(R, p: Poly, k: int) -> Poly:
    """p_k: the k-th element of the orbit of the monic irreducible p."""
    if is_q_ring(R):
        return p.scale(R.q ** k).monic() if k else p
    return p.shift(k) if k else p


def orbit_position(R, p: Poly, f: Poly):
    """k with orbit_member(p, k) == f, or None when f is outside the orbit of p."""
    d = p.degree()
    if d != f.degree() or d < 1:
        return None
    if is_q_ring(R):
        p0, f0 = p.coeff(0), f.coeff(0)
        if not p0 or not f0:
            return None
        m = int_log(R.q, f0 / p0)
        if m is None or m % d:
            return None
        k = -m // d
    else:
        delta = (f.coeff(d - 1) - p.coeff(d - 1)) / d
        if not delta.is_integer():
            return None
        k = int(delta.to_fraction())
    return k if orbit_member(R, p, k) == f else None


def _is_x(p: Poly):
    return p.degree() == 1 and not p.coeff(0)


@dataclass
class Orbit:
    """One tau-orbit: representative p = p_0 and exponents at positions k."""

    rep: Poly
    exponents: dict = dc_field(default_factory=dict)

    @property
    def total(self):
        return sum(self.exponents.values())

    @property
    def degree(self):
        return self.rep.degree()

    def positions(self):
        return sorted(self.exponents)

    def to_json(self):
        return {
            "representative": str(self.rep),
            "exponents": {str(k): e for k, e in sorted(self.exponents.items())},
            "sum": self.total,
        }


@dataclass
class OrbitDecomposition:
    """a = constant * x^x_valuation * prod_orbits prod_k p_k^e_k."""

    constant: object
    orbits: list
    x_valuation: int = 0

    def reassemble(self, R):
        out = RatFunc.const(R.field, self.constant)
        if self.x_valuation:
            out = out * RatFunc.x(R.field) ** self.x_valuation
        for orb in self.orbits:
            for k, e in orb.exponents.items():
                if e:
                    out = out * RatFunc(orbit_member(R, orb.rep, k)) ** e
        return out

    def sums(self):
        return [orb.total for orb in self.orbits]

    def to_json(self):
        out = {"constant": str(self.constant), "orbits": [o.to_json() for o in self.orbits]}
        if self.x_valuation:
            out["x_valuation"] = self.x_valuation
        return out


def _factor_exponents(a: RatFunc):
    out = []
    if a.num.degree() > 0:
        out.extend((f, m) for f, m in poly_factor(a.num))
    if a.den.degree() > 0:
        out.extend((f, -m) for f, m in poly_factor(a.den))
    return out


def group_orbits(R, polys):
    """Group monic irreducibles into orbits.

    Returns ``(reps, index)`` where ``index[f] = (orbit number, position)``.
    Representatives are the leftmost member seen; orbits are sorted canonically.
    """
    _check_ring(R)
    raw = []  # list of [rep, {f: k}]
    for f in polys:
        if any(f in members for _, members in raw):
            continue
        for entry in raw:
            k = orbit_position(R, entry[0], f)
            if k is not None:
                entry[1][f] = k
                break
        else:
            raw.append([f, {f: 0}])
    normalized = []
    for rep, members in raw:
        kmin = min(members.values())
        new_rep = orbit_member(R, rep, kmin)
        normalized.append((new_rep, {f: k - kmin for f, k in members.items()}))
    normalized.sort(key=lambda item: item[0].sort_key())
    reps = [rep for rep, _ in normalized]
    index = {}
    for i, (_, members) in enumerate(normalized):
        for f, k in members.items():
            index[f] = (i, k)
    return reps, index


def orbit_decompose_many(R, elements):
    """Orbit decompositions of several nonzero elements over a shared orbit list."""
    _check_ring(R)
    factored = []
    for a in elements:
        if not a:
            raise DomainError("orbit decomposition of zero")
        factored.append(_factor_exponents(a))
    q_case = is_q_ring(R)
    polys = []
    for facs in factored:
        for f, _ in facs:
            if q_case and _is_x(f):
                continue
            if f not in polys:
                polys.append(f)
    reps, index = group_orbits(R, polys)
    out = []
    for a, facs in zip(elements, factored):
        orbits = [Orbit(rep) for rep in reps]
        xval = 0
        for f, e in facs:
            if q_case and _is_x(f):
                xval += e
                continue
            i, k = index[f]
            orbits[i].exponents[k] = orbits[i].exponents.get(k, 0) + e
        decomposition = OrbitDecomposition(a.num.lc(), orbits, xval)
        out.append(decomposition)
    return out


def orbit_decompose(R, a) -> OrbitDecomposition:
    a = R.element(a)
    (dec,) = orbit_decompose_many(R, [a])
    dec.orbits = [o for o in dec.orbits if o.exponents]
    if dec.reassemble(R) != a:
        raise AssertionError("orbit decomposition does not reassemble")
    return dec


def tau_coboundary(R, a):
    """r with tau(r)/r = a, or None.  The result is re-verified exactly."""
    a = R.element(a)
    if not a:
        raise DomainError("tau_coboundary of zero")
    dec = orbit_decompose(R, a)
    if any(orb.total for orb in dec.orbits):
        return None
    r = RatFunc.const(R.field, 1)
    degree_weight = 0
    for orb in dec.orbits:
        running = 0
        positions = orb.positions()
        for k in range(positions[0], positions[-1] + 1):
            running += orb.exponents.get(k, 0)
            f = -running
            if f:
                r = r * RatFunc(orbit_member(R, orb.rep, k)) ** f
                degree_weight += orb.degree * f
    if is_q_ring(R):
        if dec.x_valuation:
            return None
        s = int_log(R.q, dec.constant)
        if s is None:
            return None
        v = s - degree_weight
        if v:
            r = r * RatFunc.x(R.field) ** v
    elif dec.constant != 1:
        return None
    if R.tau(r) != a * r:
        raise AssertionError("coboundary witness failed verification")
    return r
