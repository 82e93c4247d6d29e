"""Extension of constants and splitting of constant-coefficient systems.

The algebraic closure of the constants is never built: each computation asks
for the smallest finite extension it needs (a splitting field, a field
containing given roots of unity) and works over R tensor C'.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import Embedding, Poly, RatFunc, field_join, linalg, poly_factor
from .algebra.numberfield import adjoin_root, galois_conjugates
from .errors import DomainError, UnsupportedError
from .modules import DifferenceModule
from .rings import CyclicProduct, ProductElement, QDilationField, ShiftField, ShiftPolyRing, constants_of
from .rsolve import charpoly


@dataclass
class BaseChange:
    source: object
    ring: object
    embedding: Embedding

    def map(self, e):
        """Image of an element of the source ring."""
        emb, K = self.embedding, self.ring.field
        if isinstance(e, RatFunc):
            return RatFunc(e.num.map_coeffs(emb, K), e.den.map_coeffs(emb, K))
        if isinstance(e, Poly):
            return e.map_coeffs(emb, K)
        if isinstance(e, ProductElement):
            return ProductElement(K, [emb(c) for c in e.coords])
        return self.ring.element(emb(self.source.field(e)))

    def map_module(self, M):
        return DifferenceModule(self.ring, [[self.map(e) for e in row] for row in M.A])

    def to_json(self):
        return {
            "ring": self.ring.name,
            "constants": constants_of(self.ring).describe(),
            "minimal_polynomial": self.ring.field.minpoly_str(),
        }


def _same_kind(R, K, emb):
    if isinstance(R, ShiftField):
        return ShiftField(K)
    if isinstance(R, QDilationField):
        return QDilationField(K, emb(R.q))
    if isinstance(R, ShiftPolyRing):
        return ShiftPolyRing(K)
    if isinstance(R, CyclicProduct):
        return CyclicProduct(K, blocks=R.blocks)
    raise UnsupportedError(f"constant extension of {R} is not supported")


def extend_constants(R, C2) -> BaseChange:
    """R tensor C' with tau acting trivially on C'; constants are re-verified to be C'."""
    F, e1, _ = field_join(R.field, C2)
    if F != C2:
        raise DomainError(f"embedding failure: {C2.name} does not contain {R.field.name}")
    if not e1.is_homomorphism():
        raise AssertionError("constant embedding is not a homomorphism")
    S = _same_kind(R, C2, e1)
    consts = constants_of(S)
    if consts.field != C2:
        raise AssertionError("constants of the extended ring differ from the new field")
    return BaseChange(R, S, e1)


def _apply_automorphism(sigma, e):
    K = sigma.target
    if isinstance(e, RatFunc):
        return RatFunc(e.num.map_coeffs(sigma, K), e.den.map_coeffs(sigma, K))
    if isinstance(e, Poly):
        return e.map_coeffs(sigma, K)
    if isinstance(e, ProductElement):
        return ProductElement(K, [sigma(c) for c in e.coords])
    raise DomainError(f"cannot apply a constant automorphism to {e!r}")


def galois_commutation_check(ext: BaseChange, samples=100, rng=None, elements=()):
    """sigma o tau = tau o sigma for every automorphism sigma of C' over C_R."""
    rng = rng or random.Random(0)
    K2 = ext.ring.field
    base_gen = ext.embedding(ext.source.field.gen) if ext.source.field.degree > 1 else None
    if K2 == ext.source.field:
        return True, {"automorphisms": 1, "checked": 0, "note": "trivial extension"}
    autos = galois_conjugates(K2)
    if autos is None:
        raise UnsupportedError("unsupported: non-normal")
    autos = [s for s in autos if base_gen is None or s(base_gen) == base_gen]
    R = ext.ring
    checked = 0
    ok = True
    pool = [R.random_element(rng) for _ in range(samples)] + [ext.map(e) for e in elements]
    for sigma in autos:
        for f in pool:
            checked += 1
            if _apply_automorphism(sigma, R.tau(f)) != R.tau(_apply_automorphism(sigma, f)):
                ok = False
    return ok, {
        "automorphisms": len(autos),
        "checked": checked,
        "extension": K2.name,
        "minimal_polynomial": K2.minpoly_str(),
    }


@dataclass
class SplitResult:
    field: object
    extension: BaseChange
    module: DifferenceModule
    eigenvalues: list
    conjugation: list
    charpoly: Poly | None

    def to_json(self):
        return {
            "field": self.field.name,
            "minimal_polynomial": self.field.minpoly_str(),
            "characteristic_polynomial": str(self.charpoly).replace("x", "y") if self.charpoly is not None else None,
            "eigenvalues": [str(e) for e in self.eigenvalues],
            "conjugation_matrix": [[str(e) for e in row] for row in self.conjugation],
            "diagonal_recurrence": [str(e) for e in self.eigenvalues],
        }


_GEN_NAMES = "abcdefgh"


def split_and_analyze(M: DifferenceModule) -> SplitResult:
    """Diagonalize a constant recurrence matrix B over its splitting field: P^-1 B P = D."""
    R = M.base
    K = R.field
    if M.is_diagonal():
        ext = extend_constants(R, K)
        n = M.rank
        return SplitResult(
            K, ext, M, [M.recurrence[i][i] for i in range(n)],
            [[K.one if i == j else K.zero for j in range(n)] for i in range(n)], None,
        )
    B = M.recurrence
    if not all(e.is_constant() for row in B for e in row):
        raise DomainError("outside diagonalizable scope: non-constant entries")
    C = [[e.constant_value() for e in row] for row in B]
    p = charpoly(C, K)
    if p.gcd(p.derivative()).degree() > 0:
        raise DomainError("outside diagonalizable scope: repeated eigenvalues")
    F, emb = K, Embedding(K, K, K.gen)
    step = 0
    while True:
        pF = p.map_coeffs(emb, F)
        nonlinear = [f for f, _ in poly_factor(pF) if f.degree() > 1]
        if not nonlinear:
            break
        F2, e, _ = adjoin_root(F, nonlinear[0], _GEN_NAMES[step % len(_GEN_NAMES)])
        emb = e.compose(emb) if F.degree > 1 or K.degree > 1 else Embedding(K, F2, e(emb(K.gen)))
        F = F2
        step += 1
    pF = p.map_coeffs(emb, F)
    eigen = [-f.coeff(0) for f, _ in poly_factor(pF)]
    CF = [[emb(c) for c in row] for row in C]
    n = len(C)
    P_cols = []
    for lam in eigen:
        shifted = [[CF[i][j] - (lam if i == j else F.zero) for j in range(n)] for i in range(n)]
        (v,) = linalg.nullspace(shifted, n, F.zero, F.one)
        lead = next(c for c in v if c)
        P_cols.append([c / lead for c in v])
    P = [[P_cols[j][i] for j in range(n)] for i in range(n)]
    Pinv = linalg.inverse(P, F.zero, F.one)
    Dm = linalg.matmul(linalg.matmul(Pinv, CF, F.zero), P, F.zero)
    if any(Dm[i][j] != (eigen[i] if i == j else F.zero) for i in range(n) for j in range(n)):
        raise AssertionError("conjugation does not diagonalize the matrix")
    ext = BaseChange(R, _same_kind(R, F, emb), emb) if F != K else extend_constants(R, K)
    if constants_of(ext.ring).field != F:
        raise AssertionError("constants of the split ring differ from the splitting field")
    S = ext.ring
    Mp = DifferenceModule.from_recurrence(S, [[S.element(eigen[i]) if i == j else S.zero for j in range(n)] for i in range(n)])
    return SplitResult(F, ext, Mp, eigen, P, p)
