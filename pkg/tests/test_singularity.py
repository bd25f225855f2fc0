"""The cokernel functor and 2-periodic resolutions."""

from mfcat.algebra import FieldSpec, FreeMatrix, RingContext
from mfcat.mf import MatFac, Potential, g_plus, koszul_factorization
from mfcat.singularity import cokernel_module, hypersurface_ring, periodic_resolution_check

QQ = FieldSpec.rationals()
R = RingContext(QQ, ["x", "y"])
x, y = R.gens()


def test_cokernel_of_node():
    K = koszul_factorization([x], [y], R)
    M = cokernel_module(K)
    assert str(M.ring) == "QQ[x,y]/(x*y)"
    assert M.presentation.relations.to_lists() == [["x"]]
    assert M.presentation.krull_dim == 1


def test_cokernel_is_annihilated_by_w():
    K = koszul_factorization([x, y], [y * y, x], R)
    M = cokernel_module(K)
    B = hypersurface_ring(K)
    for i in range(M.presentation.ambient_rank):
        e = [B.zero] * M.presentation.ambient_rank
        e[i] = B(K.W)
        assert M.presentation.contains(e)


def test_contractible_object_has_free_cokernel():
    G = g_plus(1, 1, Potential(R, x * y))
    P = cokernel_module(G).presentation
    assert P.ambient_rank == 1 and P.relations.cols == 0


def test_periodic_check_passes():
    K = koszul_factorization([x, y], [x * y, x + y], R)
    v = periodic_resolution_check(K, 3)
    assert v.passed and v.spots_checked == 4


def test_periodic_check_finds_failure_for_zero_divisor_potential():
    # W = 0: ker(0) / im(x) = A/(x) sits at the even spot
    Z = Potential(R, R.zero)
    E = MatFac(Z, FreeMatrix(R, 1, 1, [[x]]), FreeMatrix(R, 1, 1, [[R.zero]]))
    v = periodic_resolution_check(E, 2)
    assert not v.passed and v.first_failing_spot == 2
    assert v.to_json()["first_failing_spot"] == 2
