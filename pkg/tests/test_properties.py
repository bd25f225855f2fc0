"""Property-based checks of the algebraic laws."""

import random

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from mfcat.algebra import FieldSpec, FreeMatrix, RingContext, groebner_basis, normal_form, syzygy_basis
from mfcat.algebra import submodule_membership
from mfcat.algebra.parse import Bin, Neg, Num, Pow, TokenStream, Var, format_expr, parse_expr_tree, tokenize
from mfcat.algebra import parse_poly
from mfcat.mf import MFMorphism, dual, hom_mf, tensor
from mfcat.mf.ops import double_dual_iso

import gen

QQ = FieldSpec.rationals()
R = RingContext(QQ, ["x", "y"])
F5 = RingContext(FieldSpec.prime(5), ["x", "y"])

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def polys(draw, ring=R, max_terms=4, max_exp=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(0, max_exp)) for _ in range(ring.nvars))
        num = draw(st.integers(-9, 9))
        den = draw(st.integers(1, 4)) if ring.field.p == 0 else 1
        terms[e] = ring.field(f"{num}/{den}")
    return ring.poly(terms)


@st.composite
def exprs(draw, depth=3):
    if depth == 0 or draw(st.booleans()):
        return draw(st.one_of(st.builds(Num, st.integers(0, 20)), st.sampled_from([Var("x"), Var("y")])))
    kind = draw(st.sampled_from(["bin", "neg", "pow"]))
    if kind == "neg":
        return Neg(draw(exprs(depth=depth - 1)))
    if kind == "pow":
        return Pow(draw(exprs(depth=depth - 1)), draw(st.integers(0, 3)))
    op = draw(st.sampled_from(["+", "-", "*"]))
    return Bin(op, draw(exprs(depth=depth - 1)), draw(exprs(depth=depth - 1)))


@SETTINGS
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@SETTINGS
@given(polys(F5), polys(F5))
def test_prime_field_ring_axioms(a, b):
    assert (a + b) * (a - b) == a * a - b * b
    assert a * 5 == F5.zero


@SETTINGS
@given(polys())
def test_poly_print_parse(a):
    assert parse_poly(str(a), R) == a


@SETTINGS
@given(exprs())
def test_expression_tree_roundtrip(tree):
    text = format_expr(tree)
    assert parse_expr_tree(TokenStream(tokenize(text))) == tree


@SETTINGS
@given(st.lists(polys(max_terms=3, max_exp=2), min_size=1, max_size=3), polys())
def test_normal_form_properties(gens, f):
    G = groebner_basis(gens, R)
    nf = normal_form(f, G, R)
    assert normal_form(nf, G, R) == nf
    assert submodule_membership(f - nf, gens, R).member


@SETTINGS
@given(st.lists(st.lists(polys(max_terms=2, max_exp=2), min_size=2, max_size=2), min_size=1, max_size=2))
def test_syzygies_are_relations(rows):
    M = FreeMatrix.from_rows(R, rows)
    K = syzygy_basis(M)
    assert (M @ K).is_zero()


@st.composite
def objects(draw, max_rank=4):
    seed = draw(st.integers(0, 10 ** 6))
    ring = draw(st.sampled_from([gen.QQ_XY, gen.F31_XYZ]))
    return gen.random_object(random.Random(seed), ring, max_rank)


@SETTINGS
@given(objects(), objects())
def test_tensor_and_hom_square_laws(P, Q):
    if P.ctx != Q.ctx:
        return
    T, H = tensor(P, Q), hom_mf(P, Q)
    for E, W in ((T, P.W + Q.W), (H, Q.W - P.W)):
        assert E.e0 @ E.e1 == FreeMatrix.identity(E.ctx, E.rank1, W)
        assert E.e1 @ E.e0 == FreeMatrix.identity(E.ctx, E.rank0, W)


@SETTINGS
@given(objects())
def test_dual_involution(P):
    DD = dual(dual(P))
    assert (DD.e1, DD.e0) == (-P.e1, -P.e0)
    iso = double_dual_iso(P)
    assert iso.is_closed()
    inv = MFMorphism(P, DD, 0, iso.on0, iso.on1)
    assert iso @ inv == MFMorphism.identity(P)


@st.composite
def endo_pairs(draw):
    E = draw(objects(max_rank=2))
    rng = random.Random(draw(st.integers(0, 10 ** 6)))

    def rand_map(deg):
        def m(rows, cols):
            return FreeMatrix(E.ctx, rows, cols,
                              [[gen.random_poly(rng, E.ctx) if rng.random() < 0.5 else E.ctx.zero
                                for _ in range(cols)] for _ in range(rows)])
        return MFMorphism(E, E, deg, m(E.rank(deg), E.rank0), m(E.rank(deg + 1), E.rank1))

    return rand_map(draw(st.integers(0, 1))), rand_map(draw(st.integers(0, 1)))


@SETTINGS
@given(endo_pairs())
def test_differential_squares_to_zero_and_leibniz(pair):
    f, g = pair
    assert f.differential().differential().is_zero()
    lhs = (g @ f).differential()
    sign = -1 if g.degree else 1
    rhs = g.differential() @ f + (g @ f.differential()).scale(g.source.ctx.const(sign))
    assert lhs == rhs
