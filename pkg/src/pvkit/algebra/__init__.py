"""Exact arithmetic substrate: number fields, polynomials, factorization, lattices."""

from .factor import poly_factor, squarefree_decomposition
from .lattice import IntegerLattice, hermite_normal_form, integer_kernel, smith_normal_form
from .numberfield import (
    QQ,
    ConstantsField,
    Embedding,
    FieldElement,
    cyclotomic_field,
    field_join,
    int_log,
    number_field,
    primitive_root_of_unity,
    quadratic_field,
    root_of_unity_order,
    roots_of_unity,
)
from .poly import Poly, RatFunc

__all__ = [
    "QQ",
    "ConstantsField",
    "Embedding",
    "FieldElement",
    "IntegerLattice",
    "Poly",
    "RatFunc",
    "cyclotomic_field",
    "field_join",
    "hermite_normal_form",
    "int_log",
    "integer_kernel",
    "number_field",
    "poly_factor",
    "primitive_root_of_unity",
    "quadratic_field",
    "root_of_unity_order",
    "roots_of_unity",
    "smith_normal_form",
    "squarefree_decomposition",
]
