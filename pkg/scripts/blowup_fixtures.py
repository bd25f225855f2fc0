"""Local duality check for factorizations over a divisor f = 0.

Usage: python3 scripts/blowup_fixtures.py
"""

from __future__ import annotations

from mfcat.algebra import FieldSpec, FreeMatrix, RingContext
from mfcat.blowup import duality_witness, kernel_contraction, kernel_object, lift_potential_data
from mfcat.mf import MatFac, MFMorphism, Potential, direct_sum


def fixtures():
    QQ = FieldSpec.rationals()
    A = RingContext(QQ, ["x", "y"])
    x, y = A.gens()
    B = A.quotient(x)
    yb = B.var("y")

    def rank1(pot, a, b):
        return MatFac(pot, FreeMatrix(B, 1, 1, [[a]]), FreeMatrix(B, 1, 1, [[b]]))

    yield "W=y^2+x, M={y;y}", rank1(Potential(B, yb * yb), yb, yb), x, y * y + x
    yield "W=y^3+xy, M={y;y^2}", rank1(Potential(B, yb ** 3), yb, yb * yb), x, y ** 3 + x * y
    yield "W=y^4+x^2, M={y^2;y^2}", rank1(Potential(B, yb ** 4), yb * yb, yb * yb), x, y ** 4 + x * x
    A3 = RingContext(QQ, ["x", "y", "z"])
    x3, y3, z3 = A3.gens()
    B3 = A3.quotient(z3)
    xb, ybb = B3.var("x"), B3.var("y")
    node = Potential(B3, xb * ybb)
    K = MatFac(node, FreeMatrix(B3, 1, 1, [[xb]]), FreeMatrix(B3, 1, 1, [[ybb]]))
    L = MatFac(node, FreeMatrix(B3, 1, 1, [[ybb]]), FreeMatrix(B3, 1, 1, [[xb]]))
    yield "W=xy+z^2+zx, M={x;y}+{y;x}", direct_sum(K, L), z3, x3 * y3 + z3 * z3 + z3 * x3


def main():
    print(f"{'fixture':30} {'u0':>14} {'u1':>14} {'checks':>7} {'pass':>5} {'d(h)=id':>8}")
    for label, M, f, W in fixtures():
        m = lift_potential_data(M, f, W)
        v = duality_witness(m)
        h = kernel_contraction(m)
        ok = h.differential() == MFMorphism.identity(kernel_object(m))
        print(f"{label:30} {str(m.u0.to_lists()):>14} {str(m.u1.to_lists()):>14} "
              f"{len(v.checked):7} {v.passed!s:>5} {ok!s:>8}")


if __name__ == "__main__":
    main()
