"""Univariate polynomials and rational functions over a ConstantsField."""

from __future__ import annotations

from fractions import Fraction

from ..errors import DomainError
from .numberfield import ConstantsField, FieldElement

VAR = "x"


class Poly:
    """Dense polynomial in x, constant term first, no trailing zeros."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: ConstantsField, coeffs=(), _trusted=False):
        self.field = field
        if _trusted:
            self.coeffs = coeffs
            return
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, field):
        return cls(field, (field.zero, field.one), _trusted=True)

    @classmethod
    def const(cls, field, c):
        c = field(c)
        return cls(field, (c,) if c else (), _trusted=True)

    def _new(self, coeffs):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        return Poly(self.field, tuple(cs), _trusted=True)

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                if other.field.degree == 1:
                    return Poly(self.field, other.coeffs)
                if self.field.degree == 1:
                    return None
                raise DomainError(f"mixing polynomials over {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction, FieldElement)):
            return Poly.const(self.field, other)
        return None

    # -- basic queries ----------------------------------------------------
    def degree(self):
        return len(self.coeffs) - 1

    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __bool__(self):
        return bool(self.coeffs)

    def is_constant(self):
        return len(self.coeffs) <= 1

    def constant_value(self):
        return self.coeffs[0] if self.coeffs else self.field.zero

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    def valuation(self):
        """Order of vanishing at x = 0 (None for the zero polynomial)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented if not isinstance(other, Poly) else Poly(other.field, self.coeffs) + other
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return self._new([x + b[i] if i < len(b) else x for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, tuple(-c for c in self.coeffs), _trusted=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented if not isinstance(other, Poly) else Poly(other.field, self.coeffs) - other
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Poly):
                return Poly(other.field, self.coeffs) * other
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return Poly(self.field, (), _trusted=True)
        if len(b) == 1:
            s = b[0]
            return self._new([c * s for c in a])
        if len(a) == 1:
            s = a[0]
            return self._new([c * s for c in b])
        zero = self.field.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = out[i + j] + x * y
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise DomainError("negative power of a polynomial")
        result = Poly.const(self.field, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = o.degree()
        if len(r) <= db:
            return Poly(self.field, (), _trusted=True), self
        inv = o.lc().inverse()
        q = [self.field.zero] * (len(r) - db)
        bc = o.coeffs
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if c:
                c = c * inv
                q[k - db] = c
                for j in range(db + 1):
                    if bc[j]:
                        r[k - db + j] = r[k - db + j] - c * bc[j]
        return self._new(q), self._new(r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if r:
            raise DomainError("polynomial division is not exact")
        return q

    def divides(self, other):
        return not (other % self)

    def monic(self):
        if not self.coeffs:
            return self
        inv = self.lc().inverse()
        return self._new([c * inv for c in self.coeffs])

    def gcd(self, other):
        a, b = self, self._coerce(other)
        while b:
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other):
        """(g, s, t) with s*self + t*other = g, g monic."""
        one = Poly.const(self.field, 1)
        zero = Poly(self.field, (), _trusted=True)
        r0, r1 = self, self._coerce(other)
        s0, s1, t0, t1 = one, zero, zero, one
        while r1:
            q, rem = divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if not r0:
            return r0, s0, t0
        inv = r0.lc().inverse()
        return r0 * inv, s0 * inv, t0 * inv

    def derivative(self):
        return self._new([c * k for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, value):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * value + c
        return self.field.zero if acc is None else acc

    def compose(self, other):
        acc = Poly(other.field if isinstance(other, Poly) else self.field, (), _trusted=True)
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def shift(self, h):
        """p(x + h)."""
        h = self.field(h)
        if not h or len(self.coeffs) <= 1:
            return self
        out = []
        for c in reversed(self.coeffs):
            # out = out * (x + h) + c
            new = [self.field.zero] * (len(out) + 1)
            for i, a in enumerate(out):
                new[i + 1] = new[i + 1] + a
                new[i] = new[i] + a * h
            new[0] = new[0] + c
            out = new
        return self._new(out)

    def scale(self, q):
        """p(q * x)."""
        q = self.field(q)
        out = []
        pw = self.field.one
        for c in self.coeffs:
            out.append(c * pw)
            pw = pw * q
        return self._new(out)

    def map_coeffs(self, fn, field):
        return Poly(field, [fn(c) for c in self.coeffs])

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            if self.field != other.field and not (self.field.degree == 1 or other.field.degree == 1):
                return False
            return len(self.coeffs) == len(other.coeffs) and all(
                a == b for a, b in zip(self.coeffs, other.coeffs)
            )
        if isinstance(other, (int, Fraction, FieldElement)):
            return self == Poly.const(self.field, other)
        return NotImplemented

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.constant_value())
        return hash(("Poly",) + self.coeffs)

    def sort_key(self):
        return (self.degree(), tuple(c.sort_key() for c in self.coeffs))

    def __repr__(self):
        return f"Poly({self.field.name}, {self})"

    def __str__(self):
        return format_poly(self.coeffs, VAR)

    def is_single_term(self):
        nz = [c for c in self.coeffs if c]
        return len(nz) <= 1 and (not nz or len([a for a in nz[0].c if a]) <= 1)


def _coeff_str(c):
    s = str(c)
    nz = [a for a in c.c if a]
    if len(nz) > 1:
        return f"({s})", False
    neg = s.startswith("-")
    return (s[1:] if neg else s), neg


def format_poly(coeffs, var):
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        body, neg = _coeff_str(c)
        if k == 0:
            mono = ""
        else:
            mono = var if k == 1 else f"{var}^{k}"
        if mono:
            if body == "1":
                text = mono
            else:
                text = f"{body}*{mono}"
        else:
            text = body
        terms.append(("-" if neg else "+", text))
    if not terms:
        return "0"
    sign, first = terms[0]
    out = ("-" if sign == "-" else "") + first
    for sign, text in terms[1:]:
        out += f" {sign} {text}"
    return out


class RatFunc:
    """Reduced fraction num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if den is None:
            den = Poly.const(num.field, 1)
        if _reduced:
            self.num, self.den = num, den
            return
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = num, Poly.const(num.field, 1)
            return
        if den.degree() > 0:
            g = num.gcd(den)
            if g.degree() > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lc()
        if lc != 1:
            inv = lc.inverse()
            num, den = num * inv, den * inv
        self.num, self.den = num, den

    @property
    def field(self):
        return self.num.field

    @classmethod
    def const(cls, field, c):
        return cls(Poly.const(field, c), Poly.const(field, 1), _reduced=True)

    @classmethod
    def x(cls, field):
        return cls(Poly.x(field), Poly.const(field, 1), _reduced=True)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other, Poly.const(other.field, 1), _reduced=True)
        if isinstance(other, (int, Fraction, FieldElement)):
            return RatFunc.const(self.field, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        if o.den.degree() == 0:
            return RatFunc(self.num + o.num * self.den, self.den, _reduced=True)
        if self.den.degree() == 0:
            return RatFunc(self.num * o.den + o.num, o.den, _reduced=True)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return RatFunc.const(self.field, 0)
        if o.den.degree() == 0 and o.num.degree() == 0:
            return RatFunc(self.num * o.num.coeffs[0], self.den, _reduced=True)
        if self.den.degree() == 0 and self.num.degree() == 0:
            return RatFunc(o.num * self.num.coeffs[0], o.den, _reduced=True)
        # cross-cancel to keep sizes small
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        n1 = self.num.exact_div(g1) if g1.degree() > 0 else self.num
        d2 = o.den.exact_div(g1) if g1.degree() > 0 else o.den
        n2 = o.num.exact_div(g2) if g2.degree() > 0 else o.num
        d1 = self.den.exact_div(g2) if g2.degree() > 0 else self.den
        num, den = n1 * n2, d1 * d2
        lc = den.lc()
        if lc != 1:
            inv = lc.inverse()
            num, den = num * inv, den * inv
        return RatFunc(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, _reduced=True)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.den.degree() == 0:
            return hash(self.num)
        return hash((self.num, self.den))

    # -- queries --------------------------------------------------------------
    def is_polynomial(self):
        return self.den.degree() == 0

    def is_constant(self):
        return self.den.degree() == 0 and self.num.degree() <= 0

    def constant_value(self):
        if not self.is_constant():
            raise DomainError(f"{self} is not a constant")
        return self.num.constant_value()

    def degree(self):
        """Degree at infinity: deg num - deg den (None for zero)."""
        if not self.num:
            return None
        return self.num.degree() - self.den.degree()

    def leading_ratio(self):
        return self.num.lc() / self.den.lc()

    def valuation0(self):
        if not self.num:
            return None
        return self.num.valuation() - self.den.valuation()

    def lowest_ratio(self):
        return self.num.coeff(self.num.valuation()) / self.den.coeff(self.den.valuation())

    def order_at(self, p):
        """Multiplicity of the irreducible p in num minus that in den."""
        return _multiplicity(self.num, p) - _multiplicity(self.den, p)

    def shift(self, h):
        return RatFunc(self.num.shift(h), self.den.shift(h))

    def scale(self, q):
        return RatFunc(self.num.scale(q), self.den.scale(q))

    def __call__(self, value):
        return self.num(value) / self.den(value)

    def map_coeffs(self, fn, field):
        return RatFunc(self.num.map_coeffs(fn, field), self.den.map_coeffs(fn, field))

    def sort_key(self):
        return (self.num.sort_key(), self.den.sort_key())

    def __repr__(self):
        return f"RatFunc({self.field.name}, {self})"

    def __str__(self):
        if self.den.degree() == 0:
            return str(self.num)
        n = str(self.num)
        if not self.num.is_single_term() or n.startswith("-"):
            n = f"({n})"
        d = str(self.den)
        if not self.den.is_single_term():
            d = f"({d})"
        return f"{n}/{d}"


def _multiplicity(f, p):
    if not f:
        raise DomainError("multiplicity in the zero polynomial")
    m = 0
    while f.degree() >= p.degree():
        q, r = divmod(f, p)
        if r:
            break
        f = q
        m += 1
    return m
