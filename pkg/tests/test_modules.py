import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import from_sympy, random_unit_rational
from pvkit import (
    CyclicProduct,
    DifferenceModule,
    QDilationField,
    ShiftField,
    construct,
    fixed_vectors,
    is_trivial,
    scalar_rational_solutions,
)
from pvkit.algebra import QQ, cyclotomic_field
from pvkit.errors import DomainError
from pvkit.modules import pairing

QI = cyclotomic_field(4)
seeds = st.integers(0, 10_000)


def random_module(R, rng, rank):
    while True:
        A = [[R.random_element(rng, max_degree=1, bound=3) for _ in range(rank)] for _ in range(rank)]
        try:
            return DifferenceModule(R, A)
        except DomainError:
            continue


def test_recurrence_is_inverse_of_basis_matrix():
    R = ShiftField()
    M = DifferenceModule.from_recurrence(R, [[1, 1], [0, 1]])
    assert [[str(e) for e in row] for row in M.A] == [["1", "-1"], ["0", "1"]]
    assert M.recurrence == [[R.one, R.one], [R.zero, R.one]]


def test_singular_matrix_refused():
    with pytest.raises(DomainError):
        DifferenceModule(ShiftField(), [[1, 2], [2, 4]])


def test_act_round_trip():
    R = ShiftField()
    x_ = R.x()
    M = DifferenceModule(R, [[x_, 1], [0, 2]])
    v = [x_ * x_, 1 / (x_ + 1)]
    assert M.act_inverse(M.act(v)) == v


@given(seeds)
def test_dual_pairing_is_compatible(seed):
    rng = random.Random(seed)
    R = ShiftField()
    M = random_module(R, rng, 2)
    D = construct("dual", M)
    v = [R.random_element(rng, max_degree=1) for _ in range(2)]
    w = [R.random_element(rng, max_degree=1) for _ in range(2)]
    assert pairing(M, M.act(v), D.act(w)) == R.tau(pairing(M, v, w))


@given(seeds)
def test_tensor_and_dsum_act(seed):
    rng = random.Random(seed)
    R = ShiftField()
    M, N = random_module(R, rng, 2), random_module(R, rng, 1)
    v = [R.random_element(rng, max_degree=1) for _ in range(2)]
    w = [R.random_element(rng, max_degree=1)]
    T = construct("tensor", M, N)
    kron = [a * b for a in v for b in w]
    assert T.act(kron) == [a * b for a in M.act(v) for b in N.act(w)]
    S = construct("dsum", M, N)
    assert S.act(v + w) == M.act(v) + N.act(w)
    H = construct("hom", M, N)
    assert H.rank == 2


def test_unknown_construction():
    R = ShiftField()
    M = DifferenceModule.rank_one(R, 2)
    with pytest.raises(DomainError):
        construct("wedge", M, M)
    with pytest.raises(DomainError):
        construct("tensor", M)


def test_fixed_vectors_rank_one():
    R = ShiftField()
    x_ = R.x()
    # A tau(v) = v with A = x/(x+1) is solved by v = x
    M = DifferenceModule.rank_one(R, x_ / (x_ + 1))
    fv = fixed_vectors(M)
    assert fv.dimension == 1
    (v,) = fv.vectors
    assert M.act(v) == v
    assert fixed_vectors(DifferenceModule.rank_one(R, 2)).dimension == 0


def test_fixed_vectors_q_diagonal():
    R = QDilationField(QQ, 2)
    M = DifferenceModule.diagonal(R, [R.element(QQ(1) / 4), 3])
    fv = fixed_vectors(M)
    assert fv.dimension == 1 and M.act(fv.vectors[0]) == fv.vectors[0]


def test_fixed_vectors_cyclic():
    R = CyclicProduct(QQ, 3)
    M = DifferenceModule.rank_one(R, R.one)
    assert fixed_vectors(M).dimension == 1
    # v = -tau(v) forces v = -tau^3(v) = -v on K^3
    R3 = CyclicProduct(QI, 3)
    assert fixed_vectors(DifferenceModule.rank_one(R3, R3.element([-1, -1, -1]))).dimension == 0
    R2 = CyclicProduct(QQ, 2)
    M2 = DifferenceModule.rank_one(R2, R2.element([2, QQ(1) / 2]))
    (v,) = fixed_vectors(M2).vectors
    assert M2.act(v) == v


def test_is_trivial():
    R = ShiftField()
    x_ = R.x()
    assert is_trivial(DifferenceModule.diagonal(R, [x_ / (x_ + 1), 1])) is not None
    assert is_trivial(DifferenceModule.rank_one(R, -1)) is None


@given(seeds)
def test_scalar_solutions_are_solutions(seed):
    rng = random.Random(seed)
    R = ShiftField()
    a = from_sympy(random_unit_rational(rng, 2))
    b = from_sympy(random_unit_rational(rng, 1))
    sol = scalar_rational_solutions(R, a, b)
    if sol.particular is not None:
        (y,) = sol.particular
        assert R.tau(y) == a * y + b
    for (h,) in sol.homogeneous:
        assert R.tau(h) == a * h


def test_scalar_solutions_zero_coefficient():
    with pytest.raises(DomainError):
        scalar_rational_solutions(ShiftField(), 0)
