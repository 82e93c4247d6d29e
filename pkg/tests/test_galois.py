import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pvkit import (
    DifferenceModule,
    QDilationField,
    ShiftField,
    automorphism_count_check,
    construct_pv,
    descend,
    fibre_functor,
    fixed_subring_check,
    galois_group,
)
from pvkit.algebra import QQ, cyclotomic_field
from pvkit.errors import DomainError
from pvkit.galois import act, group_of

QI = cyclotomic_field(4)
R = ShiftField()
Ri = ShiftField(QI)
X = R.x()


@pytest.mark.parametrize(
    "ring, entries, expected",
    [
        (R, [1], "trivial"),
        (R, [-1], "mu_2"),
        (R, [-1, -1], "mu_2"),
        (R, [-1, 2], "mu_2 x G_m"),
        (R, [2, 3], "G_m^2"),
        (R, [X, X + 1], "G_m"),
        (Ri, [QI.gen], "mu_4"),
        (QDilationField(QQ, 2), [4], "trivial"),
        (QDilationField(QQ, 2), [-2], "mu_2"),
    ],
)
def test_group_description(ring, entries, expected):
    G = galois_group(DifferenceModule.diagonal(ring, [ring.element(e) for e in entries]))
    assert G.describe() == expected


def test_group_needs_diagonal_module():
    with pytest.raises(DomainError):
        galois_group(DifferenceModule.from_recurrence(R, [[0, -1], [1, 0]]))


def test_points_are_counted_over_the_constants():
    G = galois_group(DifferenceModule.rank_one(Ri, QI.gen))
    assert G.order == 4 and G.points_count() == 4
    assert len(G.points()) == 4
    # over Q only the square roots of unity are visible
    Gq = galois_group(DifferenceModule.diagonal(R, [-1, -1]))
    assert Gq.points_count() == 2


def test_group_elements_respect_relations():
    G = galois_group(DifferenceModule.rank_one(R, -1))
    assert G.element([-1]).character_value([2]) == 1
    with pytest.raises(DomainError):
        G.element([2])


@given(st.integers(0, 1000))
def test_action_is_a_ring_automorphism(seed):
    rng = random.Random(seed)
    S = construct_pv(DifferenceModule.diagonal(Ri, [QI.gen, X]))
    G = group_of(S)
    gens, missing = G.generators()
    assert not missing
    f, h = S.random_element(rng), S.random_element(rng)
    for g in gens:
        assert act(g, f * h) == act(g, f) * act(g, h)
        assert act(g, S.tau(f)) == S.tau(act(g, f))


def test_automorphism_count_infinite_group_skipped():
    S = construct_pv(DifferenceModule.rank_one(R, X))
    assert automorphism_count_check(S)["status"].startswith("skipped")


def test_automorphism_count_mu2_mu2():
    S = construct_pv(DifferenceModule.diagonal(R, [-1, -(X + 1) / X]))
    res = automorphism_count_check(S)
    assert res["status"] == "pass" and res["automorphisms"] == 2


def test_fixed_subring_trace():
    S = construct_pv(DifferenceModule.rank_one(R, -1))
    ok, trace = fixed_subring_check(S)
    assert ok
    assert any(line.startswith("t^[1] -> ") for line in trace)


def test_fibre_functor_rejects_modules_outside_the_category():
    S = construct_pv(DifferenceModule.rank_one(R, -1))
    with pytest.raises(DomainError):
        fibre_functor(DifferenceModule.rank_one(R, 2), S)


def test_descend_picks_canonical_representative():
    S = construct_pv(DifferenceModule.rank_one(R, -1))
    res = descend([3], S)
    assert res.representative == (1,)
    assert str(res.module.A[0][0]) == "-1"
    assert all(res.checks.values())
