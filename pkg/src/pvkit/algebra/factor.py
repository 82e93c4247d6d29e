"""Factorization of polynomials over Q and over simple number fields.

Over Q the squarefree parts are handed to sympy (Zassenhaus with Hensel
lifting).  Over Q(a) we use Trager's norm method: shift until the norm down
to Q is squarefree, factor the norm over Q and pull the factors back with
gcds over Q(a).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import sympy

from ..errors import DomainError
from .poly import Poly

_X, _Y = sympy.symbols("x y")


def squarefree_decomposition(p: Poly):
    """Yun's algorithm: list of (squarefree monic factor, multiplicity)."""
    if not p:
        raise DomainError("zero input")
    p = p.monic()
    out = []
    if p.degree() <= 0:
        return out
    dp = p.derivative()
    a = p.gcd(dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree() > 0:
        a = b.gcd(d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        if a.degree() > 0:
            out.append((a, i))
        i += 1
    return out


def poly_factor(p: Poly):
    """Irreducible monic factors with multiplicities, sorted canonically.

    The product of ``f**m`` over the result times ``p.lc()`` equals ``p``.
    """
    if not p:
        raise DomainError("zero input")
    return _factor_cached(p.field, p)


@lru_cache(maxsize=4096)
def _factor_cached(field, p):
    result = []
    for part, mult in squarefree_decomposition(p):
        if p.field.degree == 1:
            pieces = _factor_rational_squarefree(part)
        else:
            pieces = _factor_trager(part)
        result.extend((f, mult) for f in pieces)
    result.sort(key=lambda fm: (fm[0].sort_key(), fm[1]))
    return tuple(result)


def _to_sympy(p: Poly, var=_X):
    coeffs = [c.to_fraction() for c in reversed(p.coeffs)]
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], var, domain="QQ")


def _from_sympy(sp, field):
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(sp.all_coeffs())]
    return Poly(field, coeffs).monic()


def _factor_rational_squarefree(p: Poly):
    if p.degree() == 1:
        return [p.monic()]
    _, facs = sympy.factor_list(_to_sympy(p))
    return [_from_sympy(f, p.field) for f, _ in facs]


def _factor_trager(p: Poly):
    field = p.field
    if p.degree() == 1:
        return [p.monic()]
    m = sympy.Poly(list(reversed(field.minpoly)), _Y)
    xpoly = Poly.x(field)
    for s in range(0, 40):
        shift = (s + 1) // 2 * (1 if s % 2 else -1) if s else 0
        # g(x, y) = p(x - shift*y) with coefficients as polynomials in y
        expr = 0
        for j, c in enumerate(p.coeffs):
            cexpr = sum(sympy.Rational(a.numerator, a.denominator) * _Y ** k for k, a in enumerate(c.c))
            expr += cexpr * (_X - shift * _Y) ** j
        norm = sympy.Poly(sympy.resultant(m.as_expr(), sympy.expand(expr), _Y), _X)
        if sympy.degree(sympy.gcd(norm, norm.diff(_X)), _X) > 0:
            continue
        _, facs = sympy.factor_list(norm)
        if len(facs) == 1:
            return [p.monic()]
        out = []
        remaining = p.monic()
        back = xpoly + field.gen * shift  # x + shift*a
        for f, _ in facs:
            h = _from_sympy(f, field).compose(back)
            g = remaining.gcd(h)
            if g.degree() > 0:
                out.append(g)
                remaining = remaining.exact_div(g)
        if remaining.degree() > 0:
            out.append(remaining)
        return out
    raise DomainError("no squarefree norm found")
