"""Line bundle cohomology on projective space and the Koszul complex."""

import pytest

from mfcat.algebra import FieldSpec
from mfcat.projective import (
    exceptional_collection_table,
    folded_hom_dims,
    koszul_differentials,
    koszul_euler_check,
    koszul_KE_check,
    pn_line_cohomology,
)

import oracles


@pytest.mark.parametrize("n,d,dims", [
    (2, -1, (0, 0, 0)),
    (2, 0, (1, 0, 0)),
    (2, 2, (6, 0, 0)),
    (2, -3, (0, 0, 1)),
    (1, -2, (0, 1)),
    (3, -5, (0, 0, 0, 4)),
])
def test_pn_table(n, d, dims):
    assert pn_line_cohomology(n, d).dims == dims


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_pn_matches_monomial_count(n):
    for d in range(-12, 13):
        h = pn_line_cohomology(n, d).dims
        assert h[0] == oracles.h0_line_bundle(n, d)
        assert h[n] == oracles.hn_line_bundle(n, d)
        assert not any(h[1:n])


def test_folded_hom():
    f = folded_hom_dims(2, 0, 1)
    assert (f.dim0, f.dim1) == (3, 0)
    f = folded_hom_dims(1, 0, -2)
    assert (f.dim0, f.dim1) == (0, 1)


def test_exceptional_table_any_window():
    t = exceptional_collection_table(2, start=-3)
    assert t.passed and t.twists == (-3, -2, -1)
    assert t.to_json()["table"][0][2] == [6, 0]
    with pytest.raises(ValueError):
        exceptional_collection_table(0)


def test_koszul_differentials_square_to_zero():
    S, d = koszul_differentials(4)
    for s in range(2, 5):
        assert (d[s - 1] @ d[s]).is_zero()


@pytest.mark.parametrize("r", [1, 2, 3])
def test_koszul_ke_over_prime_field(r):
    res = koszul_KE_check(r, seed=5, field=FieldSpec.prime(101))
    assert res.passed


def test_koszul_euler():
    assert koszul_euler_check(4, 8)
