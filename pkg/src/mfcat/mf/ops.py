"""Tensor products, internal Hom, duality and Koszul factorizations.

Signs follow the operator convention ``d(f) = q o f - (-1)^|f| f o p`` for
Hom, and ``p (x) 1 + s (1 (x) q)`` for tensor products, where ``s`` is -1
on ``P1 (x) Q``.  Hom blocks are flattened row-major, so that
``vec(A X B) = (A kron B^T) vec(X)``.
"""

from __future__ import annotations

from ..algebra.matrix import FreeMatrix
from ..algebra.ring import RingContext
from ..errors import LengthMismatch, MFError, RingMismatch
from .core import MatFac, MFMorphism, Potential, RingMap, base_change


def _I(ctx, n):
    return FreeMatrix.identity(ctx, n)


def _same_ring(P: MatFac, Q: MatFac):
    if P.ctx != Q.ctx:
        raise RingMismatch(f"{P.ctx} vs {Q.ctx}")


def tensor(P: MatFac, Q: MatFac) -> MatFac:
    """``P (x) Q`` of ``W + V``: odd ``P1Q0 + P0Q1``, even ``P1Q1 + P0Q0``."""
    _same_ring(P, Q)
    ctx = P.ctx
    p1, p0, q1, q0 = P.e1, P.e0, Q.e1, Q.e0
    I_P1, I_P0 = _I(ctx, P.rank1), _I(ctx, P.rank0)
    I_Q1, I_Q0 = _I(ctx, Q.rank1), _I(ctx, Q.rank0)
    odd = [P.rank1 * Q.rank0, P.rank0 * Q.rank1]
    even = [P.rank1 * Q.rank1, P.rank0 * Q.rank0]
    e1 = FreeMatrix.block_sized(ctx, [
        [-I_P1.kron(q0), p0.kron(I_Q1)],
        [p1.kron(I_Q0), I_P0.kron(q1)],
    ], even, odd)
    e0 = FreeMatrix.block_sized(ctx, [
        [-I_P1.kron(q1), p0.kron(I_Q0)],
        [p1.kron(I_Q1), I_P0.kron(q0)],
    ], odd, even)
    return MatFac(P.pot + Q.pot, e1, e0)


def hom_mf(P: MatFac, Q: MatFac) -> MatFac:
    """Internal Hom of ``V - W``.

    Odd part ``Hom(P1,Q0) + Hom(P0,Q1)``, even part ``Hom(P0,Q0) + Hom(P1,Q1)``.
    """
    _same_ring(P, Q)
    ctx = P.ctx
    p1T, p0T = P.e1.T, P.e0.T
    q1, q0 = Q.e1, Q.e0
    odd = [Q.rank0 * P.rank1, Q.rank1 * P.rank0]
    even = [Q.rank0 * P.rank0, Q.rank1 * P.rank1]
    IQ0, IQ1 = _I(ctx, Q.rank0), _I(ctx, Q.rank1)
    IP0, IP1 = _I(ctx, P.rank0), _I(ctx, P.rank1)
    e1 = FreeMatrix.block_sized(ctx, [
        [IQ0.kron(p0T), q1.kron(IP0)],
        [q0.kron(IP1), IQ1.kron(p1T)],
    ], even, odd)
    e0 = FreeMatrix.block_sized(ctx, [
        [-IQ0.kron(p1T), q1.kron(IP1)],
        [q0.kron(IP0), -IQ1.kron(p0T)],
    ], odd, even)
    return MatFac(Q.pot - P.pot, e1, e0)


def flatten_morphism(phi: MFMorphism) -> list:
    """Coordinates of ``phi`` in the matching component of ``hom_mf(source, target)``."""
    def vec(M):
        return [a for row in M.entries for a in row]

    if phi.degree == 0:
        return vec(phi.on0) + vec(phi.on1)
    return vec(phi.on1) + vec(phi.on0)


def unflatten_morphism(source: MatFac, target: MatFac, degree: int, coords) -> MFMorphism:
    ctx = source.ctx
    coords = list(coords)

    def mat(rows, cols, chunk):
        return FreeMatrix(ctx, rows, cols, [chunk[i * cols:(i + 1) * cols] for i in range(rows)])

    if degree % 2 == 0:
        n0 = target.rank0 * source.rank0
        on0 = mat(target.rank0, source.rank0, coords[:n0])
        on1 = mat(target.rank1, source.rank1, coords[n0:])
        return MFMorphism(source, target, 0, on0, on1)
    n10 = target.rank0 * source.rank1
    on1 = mat(target.rank0, source.rank1, coords[:n10])
    on0 = mat(target.rank1, source.rank0, coords[n10:])
    return MFMorphism(source, target, 1, on0, on1)


def unit_object(ctx: RingContext) -> MatFac:
    """The tensor unit: ``O`` in even degree, nothing in odd degree, potential 0."""
    return MatFac(Potential(ctx, ctx.zero), FreeMatrix(ctx, 1, 0), FreeMatrix(ctx, 0, 1))


def dual(P: MatFac) -> MatFac:
    """``D(P) = Hom(P, O)``: components ``P1^v`` (odd), ``P0^v`` (even); maps ``p0^T``, ``-p1^T``."""
    return MatFac(-P.pot, P.e0.T, -P.e1.T)


def dual_morphism(phi: MFMorphism) -> MFMorphism:
    """``D(phi): D(target) -> D(source)`` for a degree-0 map (componentwise transpose)."""
    if phi.degree != 0:
        raise MFError("dual of odd morphisms is not provided")
    return MFMorphism(dual(phi.target), dual(phi.source), 0, phi.on0.T, phi.on1.T)


def double_dual_iso(P: MatFac) -> MFMorphism:
    """The isomorphism ``D(D(P)) -> P`` acting by -1 on odd and +1 on even parts."""
    ctx = P.ctx
    return MFMorphism(dual(dual(P)), P, 0, _I(ctx, P.rank0), -_I(ctx, P.rank1))


def koszul_factorization(a, b, ctx: RingContext) -> MatFac:
    """Left-fold tensor product of the rank-one factorizations ``{a_i; b_i}``."""
    a = [ctx(x) for x in a]
    b = [ctx(x) for x in b]
    if len(a) != len(b):
        raise LengthMismatch(f"{len(a)} vs {len(b)} entries")
    if not a:
        raise LengthMismatch("need at least one pair")

    def rank_one(ai, bi):
        return MatFac(Potential(ctx, ai * bi), FreeMatrix(ctx, 1, 1, [[ai]]), FreeMatrix(ctx, 1, 1, [[bi]]))

    out = rank_one(a[0], b[0])
    for ai, bi in zip(a[1:], b[1:]):
        out = tensor(out, rank_one(ai, bi))
    return out


def swap_map(P: MatFac, Q: MatFac) -> MFMorphism:
    """Closed isomorphism ``P (x) Q -> Q (x) P`` sending ``p (x) q`` to ``(-1)^(|p||q|) q (x) p``."""
    ctx = P.ctx
    src = tensor(P, Q)
    dst = tensor(Q, P)

    # (block index, parity of P part, parity of Q part)
    def perm(pi, qi, sign):
        rp, rq = P.rank(pi), Q.rank(qi)
        M = [[ctx.zero] * (rp * rq) for _ in range(rp * rq)]
        s = ctx.const(sign)
        for i in range(rp):
            for j in range(rq):
                M[j * rp + i][i * rq + j] = s
        return FreeMatrix(ctx, rp * rq, rp * rq, M)

    # odd: src [P1Q0, P0Q1] -> dst [Q1P0, Q0P1]
    on1 = FreeMatrix.block_sized(ctx, [[None, perm(0, 1, 1)], [perm(1, 0, 1), None]],
                                 [Q.rank1 * P.rank0, Q.rank0 * P.rank1],
                                 [P.rank1 * Q.rank0, P.rank0 * Q.rank1])
    # even: src [P1Q1, P0Q0] -> dst [Q1P1, Q0P0]
    on0 = FreeMatrix.block_sized(ctx, [[perm(1, 1, -1), None], [None, perm(0, 0, 1)]],
                                 [Q.rank1 * P.rank1, Q.rank0 * P.rank0],
                                 [P.rank1 * Q.rank1, P.rank0 * Q.rank0])
    return MFMorphism(src, dst, 0, on0, on1)


def rename_clashes(left, right):
    """Names for ``right`` avoiding ``left``: ``v`` becomes ``v2``, ``v3``, ..."""
    taken = set(left)
    renames = {}
    names = []
    for v in right:
        new = v
        k = 1
        while new in taken:
            k += 1
            new = f"{v}{k}"
        if new != v:
            renames[v] = new
        taken.add(new)
        names.append(new)
    return names, renames


def coproduct_ring(R: RingContext, S: RingContext):
    """``R (x)_k S`` with variables of ``S`` renamed on clashes.

    Returns ``(ring, renames)`` where ``renames`` maps clashing names of ``S``
    to their new names.
    """
    if R.field != S.field:
        raise RingMismatch(f"different fields {R.field} and {S.field}")
    s_names, renames = rename_clashes(R.variables, S.variables)
    nr = R.nvars
    ideal = []
    for g in R.ideal_gb:
        ideal.append({e + (0,) * len(s_names): c for e, c in g.terms.items()})
    for g in S.ideal_gb:
        ideal.append({(0,) * nr + e: c for e, c in g.terms.items()})
    ring = RingContext(R.field, R.variables + tuple(s_names), R.order, ideal)
    return ring, renames


def external_tensor(P: MatFac, Q: MatFac):
    """``P [x] Q`` over the coproduct ring, of ``W(x) + V(y)``; returns ``(object, renames)``."""
    ring, renames = coproduct_ring(P.ctx, Q.ctx)
    gens = ring.gens()
    nr = P.ctx.nvars
    left = RingMap(P.ctx, ring, gens[:nr])
    right = RingMap(Q.ctx, ring, gens[nr:])
    return tensor(base_change(left, P), base_change(right, Q)), renames
