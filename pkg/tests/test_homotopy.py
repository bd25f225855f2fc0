"""Null-homotopies, contractibility, Ext and the W = 0 case."""

import pytest

from mfcat.algebra import FieldSpec, FreeMatrix, RingContext
from mfcat.errors import MFError, NotClosed, PotentialMismatch, PotentialNotZero
from mfcat.homotopy import (
    assemble_hom_complex,
    contraction,
    ext_dims,
    ext_module,
    homology_w0,
    is_contractible,
    is_homotopy_iso,
    null_homotopy,
    quasi_iso,
    split_trivial_summands,
)
from mfcat.mf import (
    MatFac,
    MFMorphism,
    Potential,
    direct_sum,
    g_plus,
    koszul_factorization,
    make_morphism,
)

QQ = FieldSpec.rationals()
R = RingContext(QQ, ["x", "y"])
x, y = R.gens()


def kos(a, b, ring=R):
    return koszul_factorization([a], [b], ring)


def test_hom_complex_squares_to_potential_difference():
    P, Q = kos(x, y), kos(x * x, y)
    C = assemble_hom_complex(P, Q)
    n = C.d_odd_to_even.rows
    assert C.d_odd_to_even @ C.d_even_to_odd == FreeMatrix.identity(R, n, Q.W - P.W)


def test_null_homotopy_witness():
    K = kos(x, y)
    phi = MFMorphism.identity(K).scale(x)
    res = null_homotopy(phi)
    assert res.exists
    assert res.witness.differential() == phi


def test_identity_of_koszul_is_not_null_homotopic():
    res = null_homotopy(MFMorphism.identity(kos(x, y)))
    assert not res.exists and res.obstruction


def test_null_homotopy_errors():
    K, L = kos(x, y), kos(y, x * x)
    with pytest.raises(PotentialMismatch):
        null_homotopy(MFMorphism(K, L, 0, FreeMatrix(R, 1, 1), FreeMatrix(R, 1, 1)))
    bad = make_morphism(K, kos(y, x), 0, f0=[[1]], f1=[[1]])
    with pytest.raises(NotClosed):
        null_homotopy(bad)


def test_g_plus_is_contractible():
    G = g_plus(1, 1, Potential(R, x * y))
    h = contraction(G)
    assert h.differential() == MFMorphism.identity(G)


def test_unit_entry_gives_contractible():
    assert is_contractible(kos(R.one, x * y))
    assert not is_contractible(kos(x, y))


def test_homotopy_iso():
    K = kos(x, y)
    assert is_homotopy_iso(MFMorphism.identity(K))
    assert not is_homotopy_iso(MFMorphism.identity(K).scale(x))
    assert is_homotopy_iso(MFMorphism.identity(K).scale(R(-3)))


def test_ext_of_node():
    K = kos(x, y)
    assert ext_dims(K, K) == (1, 0)
    assert ext_dims(K, kos(y, x)) == (0, 1)
    E = ext_module(K, K, 0)
    assert E.to_json()["k_dim"] == 1


def test_ext_a1():
    S = RingContext(QQ, ["x"])
    t = S.var("x")
    K = koszul_factorization([t], [t], S)
    assert ext_dims(K, K) == (1, 1)


def test_ext_needs_equal_potentials():
    with pytest.raises(PotentialMismatch):
        ext_module(kos(x, y), kos(x, x), 0)


def test_ext_over_prime_field():
    S = RingContext(FieldSpec.prime(31), ["u", "v"])
    u, v = S.gens()
    K = koszul_factorization([u], [v], S)
    assert ext_dims(K, K) == (1, 0)


def test_ext_of_a2_singularity():
    S = RingContext(QQ, ["x"])
    t = S.var("x")
    K = koszul_factorization([t], [t * t], S)
    assert ext_dims(K, K) == (1, 1)


# -- W = 0 --------------------------------------------------------------------------

S = RingContext(QQ, ["x"])
Z = Potential(S, S.zero)


def w0(a, b):
    return MatFac(Z, FreeMatrix(S, 1, 1, [[S(a)]]), FreeMatrix(S, 1, 1, [[S(b)]]))


def test_homology_w0():
    H0, H1 = homology_w0(w0("x", "0"))
    assert H0.k_dim == 1 and H1.is_zero()
    with pytest.raises(PotentialNotZero):
        homology_w0(kos(x, y))


def test_quasi_iso_and_homotopy_iso_agree_on_examples():
    E = w0("x", "0")
    one = MFMorphism.identity(E)
    assert quasi_iso(one) and is_homotopy_iso(one)
    xs = one.scale(S.var("x"))
    assert not quasi_iso(xs) and not is_homotopy_iso(xs)


def test_quasi_iso_rejects_odd_maps():
    E = w0("x", "0")
    with pytest.raises(MFError):
        quasi_iso(MFMorphism.zero(E, E, 1))


def test_split_summands_leave_the_nontrivial_part():
    W = x * y
    E = direct_sum(direct_sum(kos(x, y), kos(R.one, W)), kos(W, R.one))
    sp = split_trivial_summands(E)
    assert len(sp.pivots) == 2
    assert (len(sp.rows0), len(sp.rows1)) == (1, 1)
    assert contraction(E) is None


def test_split_contraction_after_base_change():
    # conjugating a trivial sum hides the constant pivots in mixed entries
    K = direct_sum(kos(x, y), kos(y, x))
    g = FreeMatrix.from_rows(R, [[1, x], [0, 1]])
    gi = FreeMatrix.from_rows(R, [[1, -x], [0, 1]])
    E = MatFac(K.pot, g @ K.e1 @ gi, g @ K.e0 @ gi)
    assert contraction(E) is None
    L = direct_sum(kos(R.one, x * y), kos(x * y, R.one))
    E = MatFac(L.pot, g @ L.e1 @ gi, g @ L.e0 @ gi)
    h = contraction(E)
    assert h is not None and h.differential() == MFMorphism.identity(E)


def test_split_contraction_over_quotient_ring():
    S = R.quotient(x * x)
    a, b = S.gens()
    E = koszul_factorization([a + 1, a], [b, b], S)
    h = contraction(E)
    assert h is not None and h.differential() == MFMorphism.identity(E)
