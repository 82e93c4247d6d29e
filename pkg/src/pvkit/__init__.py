"""Exact Picard-Vessiot rings and Galois groups for linear difference systems.

Supported base rings are K(x) with the shift x -> x+1, K(x) with a
q-dilation x -> qx, K[x] with the shift, and finite products K^n with a
cyclic permutation; K is Q or a number field given by a minimal polynomial.
"""

from .algebra import QQ, cyclotomic_field, number_field, quadratic_field
from .basechange import extend_constants, galois_commutation_check, split_and_analyze
from .errors import DomainError, ParseError, PvkitError, UnsupportedError, UsageError
from .galois import (
    DiagonalizableGroup,
    act,
    automorphism_count_check,
    descend,
    fibre_functor,
    fixed_subring_check,
    galois_group,
    group_of,
)
from .modules import DifferenceModule, construct, fixed_vectors, is_trivial, scalar_rational_solutions
from .orbits import orbit_decompose, tau_coboundary
from .pv import (
    PVPresentation,
    construct_pv,
    pv_isomorphism,
    relation_lattice,
    universal_pv,
    verify_pv,
)
from .rings import (
    CyclicProduct,
    QDilationField,
    ShiftField,
    ShiftPolyRing,
    constants_of,
    simplicity_certificate,
    total_fractions_check,
)
from .rsolve import rational_solutions

__all__ = [
    "QQ",
    "CyclicProduct",
    "DiagonalizableGroup",
    "DifferenceModule",
    "DomainError",
    "PVPresentation",
    "ParseError",
    "PvkitError",
    "QDilationField",
    "ShiftField",
    "ShiftPolyRing",
    "UnsupportedError",
    "UsageError",
    "act",
    "automorphism_count_check",
    "constants_of",
    "construct",
    "construct_pv",
    "cyclotomic_field",
    "descend",
    "extend_constants",
    "fibre_functor",
    "fixed_subring_check",
    "fixed_vectors",
    "galois_commutation_check",
    "galois_group",
    "group_of",
    "is_trivial",
    "number_field",
    "orbit_decompose",
    "pv_isomorphism",
    "quadratic_field",
    "rational_solutions",
    "relation_lattice",
    "scalar_rational_solutions",
    "simplicity_certificate",
    "split_and_analyze",
    "tau_coboundary",
    "total_fractions_check",
    "universal_pv",
    "verify_pv",
]
