from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from pvkit.algebra import (
    QQ,
    IntegerLattice,
    Poly,
    RatFunc,
    cyclotomic_field,
    field_join,
    hermite_normal_form,
    int_log,
    integer_kernel,
    number_field,
    poly_factor,
    primitive_root_of_unity,
    quadratic_field,
    root_of_unity_order,
    roots_of_unity,
    smith_normal_form,
    squarefree_decomposition,
)
from pvkit.algebra.numberfield import galois_conjugates
from pvkit.errors import DomainError

QI = cyclotomic_field(4)
QZ3 = cyclotomic_field(3)
QS2 = quadratic_field(2)

small = st.integers(-6, 6)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def elements(F):
    return st.lists(rationals, min_size=F.degree, max_size=F.degree).map(lambda cs: F.from_poly(cs))


def polys(F, max_degree=4):
    return st.lists(elements(F), min_size=1, max_size=max_degree + 1).map(lambda cs: Poly(F, cs))


def int_matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


def _mm(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


# -- number fields --------------------------------------------------------------


def test_gaussian_arithmetic():
    i = QI.gen
    assert i * i == -1
    assert (1 + i) * (1 - i) == 2
    assert (1 + i).inverse() == (1 - i) / 2
    assert (3 + 4 * i).norm() == 25


def test_zeta3_relation():
    z = QZ3.gen
    assert z**3 == 1 and z != 1
    assert 1 + z + z * z == 0


@pytest.mark.parametrize("F", [QI, QZ3, QS2])
@given(data=st.data())
def test_field_axioms(F, data):
    a, b, c = (data.draw(elements(F)) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    if a:
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@given(elements(QS2))
def test_norm_is_multiplicative(a):
    b = QS2.gen + 3
    assert (a * b).norm() == a.norm() * b.norm()


def test_roots_of_unity():
    assert roots_of_unity(QQ)[0] == 2
    assert roots_of_unity(QI)[0] == 4
    assert roots_of_unity(QZ3)[0] == 6
    assert roots_of_unity(QS2)[0] == 2
    assert primitive_root_of_unity(QI, 4) ** 2 == -1
    assert primitive_root_of_unity(QQ, 3) is None


def test_root_of_unity_order():
    assert root_of_unity_order(QI.gen) == 4
    assert root_of_unity_order(QQ(-1)) == 2
    assert root_of_unity_order(-QZ3.gen) == 6
    assert root_of_unity_order(QQ(2)) is None
    assert root_of_unity_order(1 + QS2.gen) is None
    with pytest.raises(DomainError):
        root_of_unity_order(QQ(0))


@given(st.integers(-12, 12))
def test_int_log_recovers_exponent(k):
    assert int_log(QQ(Fraction(2, 3)), QQ(Fraction(2, 3)) ** k) == k
    # a unit of infinite order goes through the bounded search
    u = 1 + QS2.gen
    assert int_log(u, u**k) == k


def test_int_log_refuses():
    assert int_log(QQ(2), QQ(3)) is None
    assert int_log(QQ(4), QQ(2)) is None
    assert int_log(QI.gen, QQ(2)) is None


def test_field_join_cyclotomic():
    F, e1, e2 = field_join(QI, QZ3)
    assert F.degree == 4 and F.cyclotomic == 12
    assert e1(QI.gen) ** 2 == -1
    assert e2(QZ3.gen) ** 3 == 1 and e2(QZ3.gen) != 1
    assert e1.is_homomorphism() and e2.is_homomorphism()


def test_field_join_with_rationals_is_trivial():
    F, e1, _ = field_join(QQ, QI)
    assert F == QI and e1(QQ(3)) == 3


def test_number_field_from_minpoly():
    K = number_field([-2, 0, 0, 1], "c")  # c^3 = 2
    c = K.gen
    assert c**3 == 2 and K.degree == 3
    assert galois_conjugates(K) is None  # not normal


def test_galois_conjugates_of_gaussian_field():
    autos = galois_conjugates(QI)
    assert sorted(str(s(QI.gen)) for s in autos) == sorted([str(QI.gen), str(-QI.gen)])


# -- polynomials ------------------------------------------------------------------


@given(polys(QQ), polys(QQ))
def test_divmod(p, q):
    if not q:
        return
    quo, rem = divmod(p, q)
    assert quo * q + rem == p
    assert rem.degree() < q.degree() or not rem


@given(polys(QI, 3), polys(QI, 3), polys(QI, 2))
def test_gcd_divides(p, q, r):
    if not (p and q and r):
        return
    g = (p * r).gcd(q * r)
    assert g.divides(p * r) and g.divides(q * r)
    assert r.monic().divides(g) or r.degree() == 0


def test_poly_shift_and_scale():
    x = Poly.x(QQ)
    p = x * x + 1
    assert p.shift(1) == x * x + 2 * x + 2
    assert p.scale(QQ(2)) == 4 * x * x + 1


def test_ratfunc_normalises():
    x = RatFunc.x(QQ)
    f = (x * x - 1) / (x - 1)
    assert f == x + 1
    assert f.is_polynomial()
    assert ((x + 1) / x).shift(1) == (x + 2) / (x + 1)


@given(polys(QQ, 5))
def test_factor_reconstructs(p):
    if p.degree() < 1:
        return
    out = Poly.const(QQ, p.lc())
    for f, m in poly_factor(p):
        assert f.lc() == 1
        out = out * f**m
    assert out == p


def test_factor_matches_sympy_over_gaussian():
    y = sp.Symbol("y")
    x = Poly.x(QI)
    p = (x * x + 1) * (x - 2) ** 2
    facs = poly_factor(p)
    assert sorted((f.degree(), m) for f, m in facs) == [(1, 1), (1, 1), (1, 2)]
    _, ref = sp.factor_list((y**2 + 1) * (y - 2) ** 2, y, extension=[sp.I])
    assert sorted((sp.degree(g, y), m) for g, m in ref) == [(1, 1), (1, 1), (1, 2)]


def test_squarefree_decomposition():
    x = Poly.x(QQ)
    p = (x - 1) * (x + 1) ** 2 * (x * x + 2) ** 3
    parts = squarefree_decomposition(p)
    assert [m for _, m in parts] == [1, 2, 3]
    assert parts[1][0] == x + 1


# -- lattices ---------------------------------------------------------------------


@given(int_matrices())
def test_smith_normal_form(A):
    U, D, V = smith_normal_form(A)
    assert _mm(_mm(U, A), V) == D
    assert abs(sp.Matrix(U).det()) == 1 and abs(sp.Matrix(V).det()) == 1
    diag = [D[i][i] for i in range(min(len(A), len(A[0])))]
    assert all(d >= 0 for d in diag)
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1) if diag[i])
    ref = sympy_snf(sp.Matrix(A), domain=sp.ZZ)
    assert sorted(diag) == sorted(abs(ref[i, i]) for i in range(len(diag)))


@given(int_matrices())
def test_hermite_spans_same_lattice(A):
    n = len(A[0])
    H = hermite_normal_form(A, n)
    L1, L2 = IntegerLattice(A, n), IntegerLattice(H, n)
    assert L1 == L2 or (L1.contains_lattice(L2) and L2.contains_lattice(L1))


@given(int_matrices(), st.lists(small, min_size=4, max_size=4))
def test_lattice_reduce(A, v):
    n = len(A[0])
    v = v[:n]
    L = IntegerLattice(A, n)
    rep, z = L.reduce(v)
    recon = [r + sum(zi * b[j] for zi, b in zip(z, L.basis)) for j, r in enumerate(rep)]
    assert recon == v
    assert L.reduce(rep)[0] == rep


def test_coset_representatives():
    L = IntegerLattice([[2, 0], [0, 4]], 2)
    reps = L.coset_representatives()
    assert len(reps) == L.index() == 8
    assert L.invariant_factors == [2, 4]


@given(int_matrices())
def test_integer_kernel(A):
    n = len(A[0])
    K = integer_kernel(A, n)
    for k in K.basis:
        assert all(sum(a * b for a, b in zip(row, k)) == 0 for row in A)
    assert K.rank == n - sp.Matrix(A).rank()
