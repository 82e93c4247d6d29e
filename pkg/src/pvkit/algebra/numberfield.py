"""Exact constant fields: the rationals and simple number fields Q(a).

Elements are coordinate vectors of Fractions in the power basis
``1, a, ..., a^(d-1)``; arithmetic reduces modulo the minimal polynomial
so that equality is coordinate-wise.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

import sympy

from ..errors import DomainError, UnsupportedError
from . import linalg, qpoly

MAX_FIELD_DEGREE = 64


class ConstantsField:
    """The field Q[y]/(m(y)) with a named generator.

    ``minpoly`` is an irreducible primitive integer polynomial, constant
    term first.  ``cyclotomic`` records n when the field is Q(zeta_n) and the
    generator is zeta_n.
    """

    __slots__ = ("minpoly", "gen_name", "name", "cyclotomic", "degree", "_monic", "_table", "_hash")

    def __init__(self, minpoly, gen_name, name, cyclotomic=None):
        minpoly = tuple(int(c) for c in minpoly)
        if len(minpoly) < 2:
            raise DomainError("minimal polynomial must have positive degree")
        self.minpoly = minpoly
        self.gen_name = gen_name
        self.name = name
        self.cyclotomic = cyclotomic
        self.degree = len(minpoly) - 1
        self._monic = qpoly.monic([Fraction(c) for c in minpoly])
        self._table = self._reduction_table()
        self._hash = hash((self.minpoly, self.gen_name))

    def _reduction_table(self):
        # coordinates of y^k for k = d .. 2d-2
        d = self.degree
        table = []
        cur = [-c for c in self._monic[:d]]
        for _ in range(max(d - 1, 1)):
            table.append(tuple(cur))
            # multiply by y and reduce
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            if top:
                cur = [a - top * m for a, m in zip(cur, self._monic[:d])]
        return table

    def __eq__(self, other):
        return (
            isinstance(other, ConstantsField)
            and self.minpoly == other.minpoly
            and self.gen_name == other.gen_name
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"ConstantsField({self.name})"

    def __str__(self):
        return self.name

    @property
    def is_rational(self):
        return self.degree == 1

    @property
    def zero(self):
        return FieldElement(self, (Fraction(0),) * self.degree)

    @property
    def one(self):
        return FieldElement(self, (Fraction(1),) + (Fraction(0),) * (self.degree - 1))

    @property
    def gen(self):
        if self.degree == 1:
            # the root of a linear minimal polynomial is rational
            return self(Fraction(-self.minpoly[0], self.minpoly[1]))
        return FieldElement(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.degree - 2))

    def __call__(self, value):
        if isinstance(value, FieldElement):
            if value.field == self:
                return value
            if value.is_rational():
                return self(value.c[0])
            raise DomainError(f"cannot coerce {value} from {value.field} into {self}")
        if isinstance(value, (int, Fraction)):
            return FieldElement(self, (Fraction(value),) + (Fraction(0),) * (self.degree - 1))
        coords = [Fraction(v) for v in value]
        return FieldElement(self, tuple(self._reduce(coords)))

    def from_poly(self, coords):
        """Element given by a polynomial in the generator (any length)."""
        return FieldElement(self, tuple(self._reduce([Fraction(c) for c in coords])))

    def _reduce(self, coords):
        d = self.degree
        if len(coords) <= d:
            return list(coords) + [Fraction(0)] * (d - len(coords))
        if len(coords) > 2 * d - 1:
            _, rem = qpoly.divmod_(coords, self._monic)
            return rem + [Fraction(0)] * (d - len(rem))
        out = list(coords[:d])
        for k in range(d, len(coords)):
            c = coords[k]
            if c:
                row = self._table[k - d]
                for j in range(d):
                    if row[j]:
                        out[j] += c * row[j]
        return out

    def minpoly_str(self, var=None):
        return qpoly.to_str(list(self.minpoly), var or self.gen_name)


class FieldElement:
    __slots__ = ("field", "c")

    def __init__(self, field, coords):
        self.field = field
        self.c = coords

    # -- coercion -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field == self.field:
                return other
            if other.field.degree == 1:
                return self.field(other.c[0])
            if self.field.degree == 1:
                return None
            raise DomainError(f"mixing elements of {self.field} and {other.field}")
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def _lift(self, other):
        # self is rational and other lives in a bigger field
        return other.field(self.c[0])

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, FieldElement):
                return self._lift(other) + other
            return NotImplemented
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, FieldElement):
                return self._lift(other) - other
            return NotImplemented
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, FieldElement):
                return self._lift(other) * other
            return NotImplemented
        d = self.field.degree
        if d == 1:
            return FieldElement(self.field, (self.c[0] * o.c[0],))
        if not any(o.c[1:]):
            s = o.c[0]
            return FieldElement(self.field, tuple(a * s for a in self.c))
        if not any(self.c[1:]):
            s = self.c[0]
            return FieldElement(self.field, tuple(a * s for a in o.c))
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        prod[i + j] += a * b
        return FieldElement(self.field, tuple(self.field._reduce(prod)))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        d = self.field.degree
        if d == 1 or not any(self.c[1:]):
            inv = 1 / self.c[0]
            return FieldElement(self.field, (inv,) + (Fraction(0),) * (d - 1))
        g, s, _ = qpoly.xgcd(qpoly.trim(self.c), list(self.field._monic))
        if len(g) != 1:
            raise DomainError(f"{self} is not invertible; is the minimal polynomial irreducible?")
        return self.field.from_poly(s)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, FieldElement):
                return self._lift(other) / other
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison -----------------------------------------------------
    def __bool__(self):
        return any(self.c)

    def is_rational(self):
        return not any(self.c[1:])

    def is_integer(self):
        return self.is_rational() and self.c[0].denominator == 1

    def to_fraction(self):
        if not self.is_rational():
            raise DomainError(f"{self} is not rational")
        return self.c[0]

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            if other.field == self.field:
                return self.c == other.c
            if self.is_rational() and other.is_rational():
                return self.c[0] == other.c[0]
            return False
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash((self.field, self.c))

    def sort_key(self):
        return self.c

    # -- misc -----------------------------------------------------------
    def norm(self):
        """Field norm down to Q, as a Fraction."""
        d = self.field.degree
        if d == 1:
            return self.c[0]
        mat = []
        basis = [FieldElement(self.field, tuple(Fraction(int(i == j)) for i in range(d))) for j in range(d)]
        for b in basis:
            mat.append(list((self * b).c))
        return linalg.det(linalg.transpose(mat), Fraction(0), Fraction(1))

    def minpoly(self):
        """Monic minimal polynomial over Q as a list of Fractions."""
        d = self.field.degree
        powers = [self.field.one.c]
        cur = self.field.one
        for k in range(1, d + 1):
            cur = cur * self
            # is cur in span of previous powers?
            mat = linalg.transpose([list(p) for p in powers])
            sol = linalg.solve(mat, list(cur.c), Fraction(0))
            if sol is not None:
                return [-s for s in sol] + [Fraction(1)]
            powers.append(cur.c)
        raise AssertionError("minimal polynomial degree exceeded field degree")

    def __repr__(self):
        return f"FieldElement({self.field.name}, {self})"

    def __str__(self):
        return format_coords(self.c, self.field.gen_name)


def format_coords(coords, gen):
    terms = []
    for k in range(len(coords) - 1, -1, -1):
        c = Fraction(coords[k])
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = gen if k == 1 else f"{gen}^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


QQ = ConstantsField((0, 1), "q", "Q")


# -- named constructors -------------------------------------------------

def _normalize_cyclotomic(n):
    if n <= 0:
        raise DomainError("cyclotomic order must be positive")
    if n % 4 == 2:
        n //= 2
    return n


@lru_cache(maxsize=None)
def cyclotomic_field(n):
    n = _normalize_cyclotomic(n)
    if n == 1:
        return QQ
    phi = sympy.Poly(sympy.cyclotomic_poly(n, sympy.Symbol("y")), sympy.Symbol("y"))
    coeffs = [int(c) for c in reversed(phi.all_coeffs())]
    if n == 4:
        return ConstantsField(coeffs, "i", "Q(i)", cyclotomic=4)
    return ConstantsField(coeffs, f"zeta_{n}", f"Q(zeta_{n})", cyclotomic=n)


def _squarefree_part(d):
    sign = -1 if d < 0 else 1
    d = abs(d)
    out = 1
    for p, e in sympy.factorint(d).items():
        if e % 2:
            out *= p
    return sign * out


@lru_cache(maxsize=None)
def quadratic_field(d):
    d = _squarefree_part(int(d))
    if d == 1:
        return QQ
    if d == -1:
        return cyclotomic_field(4)
    if d == -3:
        return cyclotomic_field(3)
    return ConstantsField((-d, 0, 1), f"sqrt({d})", f"Q(sqrt({d}))")


def number_field(minpoly, gen_name="a"):
    """Generic simple extension; cyclotomic and quadratic fields are recognized."""
    ints = qpoly.to_primitive_int([Fraction(c) for c in minpoly])
    if len(ints) == 2:
        return QQ
    n = _cyclotomic_index(ints)
    if n is not None:
        return cyclotomic_field(n)
    poly = qpoly.to_str(ints, gen_name)
    return ConstantsField(ints, gen_name, f"Q[{gen_name}]/({poly})")


def _cyclotomic_index(ints):
    deg = len(ints) - 1
    y = sympy.Symbol("y")
    for n in range(1, 2 * deg * deg + 3):
        if sympy.totient(n) == deg:
            phi = sympy.Poly(sympy.cyclotomic_poly(n, y), y)
            if [int(c) for c in reversed(phi.all_coeffs())] == list(ints):
                return n
    return None


# -- embeddings ----------------------------------------------------------

class Embedding:
    """Ring homomorphism ``source -> target`` fixed by the image of the generator."""

    __slots__ = ("source", "target", "image")

    def __init__(self, source, target, image):
        self.source = source
        self.target = target
        self.image = target(image)

    def __call__(self, elt):
        if isinstance(elt, (int, Fraction)):
            return self.target(elt)
        if elt.field != self.source:
            if elt.is_rational():
                return self.target(elt.c[0])
            raise DomainError(f"element of {elt.field} is not in the source {self.source}")
        if self.source.degree == 1:
            return self.target(elt.c[0])
        acc = self.target.zero
        for c in reversed(elt.c):
            acc = acc * self.image + c
        return acc

    def is_homomorphism(self):
        """The generator image is a root of the source's minimal polynomial."""
        if self.source.degree == 1:
            return True
        acc = self.target.zero
        for c in reversed(self.source.minpoly):
            acc = acc * self.image + c
        return not acc

    def compose(self, inner):
        """``self o inner``."""
        return Embedding(inner.source, self.target, self(inner.image))

    def __repr__(self):
        return f"Embedding({self.source} -> {self.target}: {self.source.gen_name} |-> {self.image})"


def identity_embedding(field):
    return Embedding(field, field, field.gen)


def rational_embedding(field):
    return Embedding(QQ, field, field.one)


# -- roots of unity -------------------------------------------------------

@lru_cache(maxsize=None)
def roots_of_unity(field):
    """Return ``(w, zeta)`` where the roots of unity in ``field`` are the powers of ``zeta`` of order w."""
    if field.degree == 1:
        return 2, field(-1)
    if field.cyclotomic is not None:
        n = field.cyclotomic
        z = field.gen
        if n % 2 == 0:
            return n, z
        return 2 * n, -(z ** ((n + 1) // 2))
    from .factor import poly_factor
    from .poly import Poly

    d = field.degree
    w, zeta = 2, field(-1)
    y = sympy.Symbol("y")
    for m in range(3, 2 * d * d + 3):
        if m % 2 or d % int(sympy.totient(m)):
            continue
        phi = sympy.Poly(sympy.cyclotomic_poly(m, y), y)
        coeffs = [field(int(c)) for c in reversed(phi.all_coeffs())]
        for fac, _ in poly_factor(Poly(field, coeffs)):
            if fac.degree() == 1:
                if m > w:
                    w, zeta = m, -fac.coeffs[0]
                break
    return w, zeta


def primitive_root_of_unity(field, n):
    """A canonical primitive n-th root of unity in ``field`` or ``None``."""
    w, zeta = roots_of_unity(field)
    if w % n:
        return None
    return zeta ** (w // n)


def _candidate_orders(d):
    return [k for k in range(1, 2 * d * d + 3) if d % int(sympy.totient(k)) == 0]


def root_of_unity_order(c):
    """Least k >= 1 with c^k = 1, or None when c is not a root of unity."""
    if isinstance(c, (int, Fraction)):
        c = QQ(c)
    if not c:
        raise DomainError("root_of_unity_order of zero")
    for k in _candidate_orders(c.field.degree):
        if c ** k == 1:
            return k
    return None


def int_log(base, target, bound=64):
    """Integer k with base^k = target, or None.

    Exact whenever the norm of ``base`` is not +-1 (the exponent is read off a
    p-adic valuation of the norms); otherwise a bounded search over |k| <= bound.
    """
    if isinstance(base, (int, Fraction)):
        base = QQ(base)
    target = base.field(target) if not isinstance(target, FieldElement) else target
    if not target:
        return None
    nb = Fraction(base.norm())
    nt = Fraction(target.norm())
    if abs(nb) != 1:
        p = _some_prime(nb)
        vb = _valuation(nb, p)
        vt = _valuation(nt, p)
        if vt % vb:
            return None
        k = vt // vb
        return k if base ** k == target else None
    if target == 1:
        return 0
    for k in range(1, bound + 1):
        if base ** k == target:
            return k
        if base ** (-k) == target:
            return -k
    return None


def _some_prime(r):
    r = Fraction(r)
    n = abs(r.numerator) if abs(r.numerator) > 1 else r.denominator
    return min(sympy.factorint(n))


def _valuation(r, p):
    r = Fraction(r)
    v = 0
    n, d = r.numerator, r.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


# -- field joins ------------------------------------------------------------

def field_join(f1, f2):
    """Smallest supported field containing both; returns ``(F, emb1, emb2)``."""
    if f1 == f2:
        return f1, identity_embedding(f1), identity_embedding(f2)
    if f1.degree == 1:
        return f2, rational_embedding(f2), identity_embedding(f2)
    if f2.degree == 1:
        return f1, identity_embedding(f1), rational_embedding(f1)
    if f1.cyclotomic is not None and f2.cyclotomic is not None:
        n1, n2 = f1.cyclotomic, f2.cyclotomic
        n = n1 * n2 // gcd(n1, n2)
        big = cyclotomic_field(n)
        e1 = Embedding(f1, big, primitive_root_of_unity(big, n1))
        e2 = Embedding(f2, big, primitive_root_of_unity(big, n2))
        return big, e1, e2
    from .factor import poly_factor
    from .poly import Poly

    m2 = Poly(f1, [f1(c) for c in f2.minpoly])
    factors = poly_factor(m2)
    for fac, _ in factors:
        if fac.degree() == 1:
            root = -fac.coeffs[0] / fac.coeffs[1]
            return f1, identity_embedding(f1), Embedding(f2, f1, root)
    if f1.degree * f2.degree > MAX_FIELD_DEGREE:
        raise UnsupportedError("unsupported extension: compositum degree exceeds desk-scale limit")
    big, emb, root = adjoin_root(f1, factors[0][0])
    return big, emb, Embedding(f2, big, root)


def adjoin_root(field, g, gen_name="a"):
    """Adjoin a root of the irreducible ``g`` (a Poly over ``field``).

    Returns ``(F, embedding field -> F, root of g in F)``.
    """
    from .poly import Poly

    if g.field != field:
        raise DomainError("polynomial is not over the given field")
    if g.degree() <= 0:
        raise DomainError("cannot adjoin a root of a constant")
    if g.degree() == 1:
        return field, identity_embedding(field), -g.coeffs[0] / g.coeffs[1]
    if field.degree == 1:
        coeffs = [c.c[0] for c in g.coeffs]
        return _adjoin_rational_root(coeffs, gen_name)
    if field.degree * g.degree() > MAX_FIELD_DEGREE:
        raise UnsupportedError("unsupported extension: degree exceeds desk-scale limit")
    y, z = sympy.symbols("y z")
    m = sympy.Poly(list(reversed(field.minpoly)), y)
    for s in (1, -1, 2, -2, 3, -3, 4, -4, 5, -5):
        # G(z, y) = g(z - s*y) with field coefficients written as polynomials in y
        expr = 0
        for j, c in enumerate(g.coeffs):
            cexpr = sum(sympy.Rational(a.numerator, a.denominator) * y ** k for k, a in enumerate(c.c))
            expr += cexpr * (z - s * y) ** j
        norm = sympy.Poly(sympy.resultant(m.as_expr(), sympy.expand(expr), y), z)
        if sympy.degree(sympy.gcd(norm, norm.diff(z)), z) > 0:
            continue
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(norm.all_coeffs())]
        big = number_field(coeffs, gen_name)
        gamma = _root_in(big, coeffs)
        # alpha = gcd over big of m(y) and g(gamma - s*y) expressed in y
        ypoly = Poly(big, [big(0), big(1)])
        lhs = Poly(big, [big(c) for c in field.minpoly])
        shifted = Poly(big, [gamma]) - ypoly * big(s)
        acc = Poly(big, [])
        for c in reversed(g.coeffs):
            cpoly = Poly(big, [big(a) for a in c.c])
            # c(y) with y the old generator
            acc = acc * shifted + cpoly
        common = lhs.gcd(acc)
        if common.degree() != 1:
            continue
        alpha = -common.coeffs[0]
        emb = Embedding(field, big, alpha)
        root = gamma - big(s) * alpha
        return big, emb, root
    raise UnsupportedError("unsupported extension: no primitive element found")


def _root_in(big, coeffs):
    # generator of ``big`` is a root of the (recognized) polynomial ``coeffs``
    from .factor import poly_factor
    from .poly import Poly

    if big.minpoly == tuple(qpoly.to_primitive_int(coeffs)):
        return big.gen
    for fac, _ in poly_factor(Poly(big, [big(c) for c in coeffs])):
        if fac.degree() == 1:
            return -fac.coeffs[0] / fac.coeffs[1]
    raise AssertionError("recognized field does not contain a root")


def _adjoin_rational_root(coeffs, gen_name):
    coeffs = [Fraction(c) for c in coeffs]
    if len(coeffs) == 3:
        c0, b, a = coeffs
        disc = b * b - 4 * a * c0
        num, den = disc.numerator * disc.denominator, disc.denominator
        sq = _squarefree_part(num)
        m2 = Fraction(num, sq)
        m = Fraction(int(sympy.sqrt(abs(m2.numerator))), den)
        big = quadratic_field(sq)
        sqrt_d = _sqrt_in(big, sq)
        root = (big(-b) + big(m) * sqrt_d) / big(2 * a)
        return big, rational_embedding(big), root
    big = number_field(coeffs, gen_name)
    return big, rational_embedding(big), _root_in(big, coeffs)


def _sqrt_in(big, d):
    if big.cyclotomic == 4:
        return big.gen
    if big.cyclotomic == 3:
        # sqrt(-3) = 1 + 2*zeta_3
        return big.one + 2 * big.gen
    return big.gen


def galois_conjugates(field):
    """All automorphisms of ``field`` as embeddings, or None when not normal over Q."""
    from .factor import poly_factor
    from .poly import Poly

    if field.degree == 1:
        return [identity_embedding(field)]
    m = Poly(field, [field(c) for c in field.minpoly])
    roots = []
    for fac, _ in poly_factor(m):
        if fac.degree() != 1:
            return None
        roots.append(-fac.coeffs[0] / fac.coeffs[1])
    return [Embedding(field, field, r) for r in roots]
