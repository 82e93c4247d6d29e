import random

import pytest

from pvkit import (
    CyclicProduct,
    DifferenceModule,
    QDilationField,
    ShiftField,
    constants_of,
    extend_constants,
    galois_commutation_check,
    galois_group,
    split_and_analyze,
)
from pvkit.algebra import QQ, cyclotomic_field, number_field
from pvkit.errors import DomainError, UnsupportedError

QI = cyclotomic_field(4)
QZ3 = cyclotomic_field(3)


def test_extend_maps_elements():
    R = ShiftField()
    ext = extend_constants(R, QI)
    x_ = R.x()
    f = (x_ + 1) / (x_ * x_ + 2)
    assert ext.ring.tau(ext.map(f)) == ext.map(R.tau(f))
    assert constants_of(ext.ring).field == QI


def test_extend_keeps_q():
    ext = extend_constants(QDilationField(QQ, 3), QZ3)
    assert ext.ring.q == 3


def test_extend_cyclic_keeps_blocks():
    ext = extend_constants(CyclicProduct(QQ, blocks=(2, 1)), QI)
    assert ext.ring.blocks == (2, 1)
    assert constants_of(ext.ring).copies == 2


def test_embedding_failure():
    with pytest.raises(DomainError, match="embedding failure"):
        extend_constants(ShiftField(QI), QZ3)


def test_commutation_over_larger_field():
    ext = extend_constants(ShiftField(QI), cyclotomic_field(12))
    ok, info = galois_commutation_check(ext, samples=20, rng=random.Random(1))
    # only automorphisms fixing Q(i) are used
    assert ok and info["automorphisms"] == 2


def test_commutation_trivial_extension():
    ok, info = galois_commutation_check(extend_constants(ShiftField(), QQ))
    assert ok and info["checked"] == 0


def test_commutation_non_normal():
    K = number_field([-2, 0, 0, 1], "c")
    with pytest.raises(UnsupportedError):
        galois_commutation_check(extend_constants(ShiftField(), K))


def test_split_rotation():
    R = ShiftField()
    res = split_and_analyze(DifferenceModule.from_recurrence(R, [[0, -1], [1, 0]]))
    assert res.field == QI
    assert sorted(str(e) for e in res.eigenvalues) == sorted(["i", "-i"])
    assert galois_group(res.module).describe() == "mu_4"


def test_split_over_real_quadratic():
    R = ShiftField()
    res = split_and_analyze(DifferenceModule.from_recurrence(R, [[0, 2], [1, 0]]))
    assert res.field.degree == 2
    assert all(e * e == 2 for e in res.eigenvalues)
    # sqrt(2) has infinite multiplicative order and -1 relates the two eigenvalues
    assert galois_group(res.module).describe() == "mu_2 x G_m"


def test_split_diagonal_is_identity():
    R = ShiftField()
    M = DifferenceModule.diagonal(R, [2, 3])
    assert split_and_analyze(M).module is M


@pytest.mark.parametrize(
    "B, message",
    [
        ([[1, 1], [0, 1]], "repeated eigenvalues"),
        ([["x", 0], [1, 1]], "non-constant"),
    ],
)
def test_split_refusals(B, message):
    R = ShiftField()
    B = [[R.x() if e == "x" else e for e in row] for row in B]
    with pytest.raises(DomainError, match=message):
        split_and_analyze(DifferenceModule.from_recurrence(R, B))
