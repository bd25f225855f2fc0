"""Local model of the blow-up duality argument."""

import pytest

from mfcat.algebra import FieldSpec, FreeMatrix, RingContext
from mfcat.blowup import (
    duality_witness,
    kernel_contraction,
    kernel_object,
    lift_potential_data,
    projective_lift_split,
    two_step_resolution,
)
from mfcat.errors import MFError, NotDivisible, NotSurjective, RingMismatch
from mfcat.homotopy import is_contractible
from mfcat.mf import MatFac, MFMorphism, Potential

import gen

FIXTURES = gen.blowup_fixtures()


@pytest.mark.parametrize("label,M,f,W", FIXTURES, ids=[c[0] for c in FIXTURES])
def test_duality_witness(label, M, f, W):
    m = lift_potential_data(M, f, W)
    v = duality_witness(m)
    assert v.passed, v.to_json()
    assert len(v.checked) >= 40


@pytest.mark.parametrize("label,M,f,W", FIXTURES, ids=[c[0] for c in FIXTURES])
def test_resolution_certificates(label, M, f, W):
    res = two_step_resolution(lift_potential_data(M, f, W))
    assert all(res.certificates.values()), res.certificates


@pytest.mark.parametrize("label,M,f,W", FIXTURES, ids=[c[0] for c in FIXTURES])
def test_kernel_object_is_contractible(label, M, f, W):
    m = lift_potential_data(M, f, W)
    L = kernel_object(m)
    assert kernel_contraction(m).differential() == MFMorphism.identity(L)
    assert is_contractible(L)


def test_lifted_data_for_first_fixture():
    _, M, f, W = FIXTURES[0]
    m = lift_potential_data(M, f, W)
    A = m.A
    one = FreeMatrix(A, 1, 1, [[A.one]])
    assert (m.u0, m.u1) == (one, one)


def test_lift_rejects_wrong_potential():
    _, M, f, W = FIXTURES[0]
    with pytest.raises(NotDivisible):
        lift_potential_data(M, f, W + f.ring.var("y"))


def test_lift_rejects_wrong_ring():
    _, M, f, W = FIXTURES[0]
    with pytest.raises(RingMismatch):
        lift_potential_data(M, f.ring.var("y"), W)


def test_lift_rejects_zero_divisor():
    A = RingContext(FieldSpec.rationals(), ["x", "y"], defining_ideal=["x*y"])
    x, y = A.gens()
    B = A.quotient(x)
    yb = B.var("y")
    M = MatFac(Potential(B, yb * yb), FreeMatrix(B, 1, 1, [[yb]]), FreeMatrix(B, 1, 1, [[yb]]))
    with pytest.raises(MFError):
        lift_potential_data(M, x, y * y + x)


def test_projective_lift_split():
    R = RingContext(FieldSpec.rationals(), ["x", "y"])
    x, y = R.gens()
    p = FreeMatrix.from_rows(R, [[R.one, x]])
    q = FreeMatrix.from_rows(R, [[y]])
    l, g = projective_lift_split(p, q)
    assert p @ l == q
    assert (FreeMatrix.block(R, [[p, q]]) @ g) == FreeMatrix.block(R, [[p, FreeMatrix(R, 1, 1)]])
    with pytest.raises(NotSurjective):
        projective_lift_split(FreeMatrix.from_rows(R, [[x, y]]), q)
