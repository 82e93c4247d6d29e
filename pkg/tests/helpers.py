"""Shared generators and converters for the test-suite."""

from __future__ import annotations

import random
from fractions import Fraction

import sympy as sp

from oracles import x
from pvkit.algebra import QQ, Poly, RatFunc


def from_sympy(expr, field=QQ):
    """sympy rational function in x -> RatFunc over ``field`` (rational coefficients)."""
    num, den = sp.fraction(sp.cancel(sp.sympify(expr)))

    def conv(e):
        p = sp.Poly(e, x, domain=sp.QQ)
        coeffs = [field(Fraction(int(c.p), int(c.q))) for c in reversed(p.all_coeffs())]
        return Poly(field, coeffs)

    return RatFunc(conv(num), conv(den))


def small_linear(rng, shift_range=2):
    """x + c with c a small rational."""
    c = Fraction(rng.randint(-4, 4), rng.choice([1, 1, 2, 3]))
    return x + sp.Rational(c.numerator, c.denominator)


def small_factor(rng):
    if rng.random() < 0.75:
        return small_linear(rng)
    return x**2 + rng.randint(1, 3)


def random_unit_rational(rng, max_factors=2):
    """Random rational function with a few small factors, never zero."""
    out = sp.Rational(rng.choice(["1", "-1", "2", "1/2", "3"]))
    for _ in range(rng.randint(0, max_factors)):
        out *= small_factor(rng) ** rng.choice([1, -1])
    return out


def random_poly(rng, max_degree=3, bound=4):
    return sum(rng.randint(-bound, bound) * x**k for k in range(rng.randint(0, max_degree) + 1))


def rng_for(seed, tag):
    return random.Random(f"{seed}:{tag}")
