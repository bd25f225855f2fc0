"""Ext dimensions against a bounded-degree linear algebra oracle.

The oracle builds the Hom complex from composition alone and computes
homology one entry degree at a time, so it shares no code with the
Groebner basis route.  The frozen values below were produced by it.
"""

import pytest

from mfcat.algebra import FieldSpec, RingContext
from mfcat.homotopy import ext_dims
from mfcat.mf import koszul_factorization

import oracles

QQ = FieldSpec.rationals()

# (label, variables, (a, b) of P, (a, b) of Q, frozen oracle dims)
CASES = [
    ("A1", ["x"], (["x"], ["x"]), (["x"], ["x"]), (1, 1)),
    ("knoerrer", ["u", "v"], (["u"], ["v"]), (["u"], ["v"]), (1, 0)),
    ("knoerrer swapped", ["u", "v"], (["u"], ["v"]), (["v"], ["u"]), (0, 1)),
    ("A3", ["x"], (["x^2"], ["x^2"]), (["x^2"], ["x^2"]), (2, 2)),
    ("A1 stabilized", ["x", "u", "v"], (["x", "u"], ["x", "v"]), (["x", "u"], ["x", "v"]), (1, 1)),
]


def build(variables, pair):
    R = RingContext(QQ, variables)
    return koszul_factorization([R(a) for a in pair[0]], [R(b) for b in pair[1]], R)


def as_strings(E):
    return ([[str(a).replace("^", "**") for a in row] for row in E.e1.to_lists()],
            [[str(a).replace("^", "**") for a in row] for row in E.e0.to_lists()])


@pytest.mark.parametrize("label,variables,p,q,frozen", CASES, ids=[c[0] for c in CASES])
def test_oracle_agrees_with_groebner_route(label, variables, p, q, frozen):
    P, Q = build(variables, p), build(variables, q)
    graded = oracles.hom_complex_graded_dims(as_strings(P), as_strings(Q), variables, max_deg=4)
    # homology is concentrated in low degrees: the last two degrees contribute nothing
    for parity in (0, 1):
        assert graded[parity][-2:] == [0, 0]
    oracle = (sum(graded[0]), sum(graded[1]))
    assert oracle == frozen
    assert ext_dims(P, Q) == frozen
