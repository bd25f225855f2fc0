"""Ext dimensions for small hypersurface singularities.

Usage: python3 scripts/ext_benchmarks.py
"""

from __future__ import annotations

import time

from mfcat.algebra import FieldSpec, RingContext
from mfcat.homotopy import ext_dims, is_contractible
from mfcat.mf import direct_sum, koszul_factorization


def cases():
    QQ = FieldSpec.rationals()
    A = RingContext(QQ, ["x"])
    x = A.var("x")
    yield "A1 x^2, {x;x}", koszul_factorization([x], [x], A), None
    yield "A2 x^3, {x;x^2}", koszul_factorization([x], [x * x], A), None
    yield "A3 x^4, {x^2;x^2}", koszul_factorization([x * x], [x * x], A), None
    R = RingContext(QQ, ["u", "v"])
    u, v = R.gens()
    K = koszul_factorization([u], [v], R)
    yield "node uv, {u;v}", K, None
    yield "node uv, {u;v} vs {v;u}", K, koszul_factorization([v], [u], R)
    yield "node uv, {u;v} + {v;u}", direct_sum(K, koszul_factorization([v], [u], R)), None
    S = RingContext(QQ, ["x", "u", "v"])
    xs, us, vs = S.gens()
    yield "Knoerrer x^2+uv", koszul_factorization([xs, us], [xs, vs], S), None
    F = RingContext(FieldSpec.prime(31), ["x", "y"])
    a, b = F.gens()
    yield "GF(31) x^2-5y^2, {x+6y;x-6y}", koszul_factorization([a + 6 * b], [a - 6 * b], F), None


def main():
    print(f"{'case':34} {'Ext0':>5} {'Ext1':>5} {'contractible':>13} {'ms':>8}")
    for label, P, Q in cases():
        Q = Q or P
        t0 = time.perf_counter()
        e0, e1 = ext_dims(P, Q)
        flat = is_contractible(P) if Q is P else ""
        ms = (time.perf_counter() - t0) * 1000
        print(f"{label:34} {e0!s:>5} {e1!s:>5} {flat!s:>13} {ms:8.1f}")


if __name__ == "__main__":
    main()
