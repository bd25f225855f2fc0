"""Hom complexes, null-homotopies, contractibility and Ext.

Everything reduces to submodule membership in the flattened Hom complex:
a closed map ``phi`` is null-homotopic iff ``vec(phi)`` lies in the column
span of the differential coming from the opposite parity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra.matrix import FreeMatrix
from .algebra.modules import (
    ModulePresentation,
    module_homology,
    submodule_membership,
    syzygy_basis,
)
from .errors import MFError, PotentialMismatch, PotentialNotZero
from .mf.core import MatFac, MFMorphism, cone, require_closed
from .mf.ops import flatten_morphism, hom_mf, unflatten_morphism


@dataclass(frozen=True)
class HomComplex:
    source: MatFac
    target: MatFac
    d_odd_to_even: FreeMatrix
    d_even_to_odd: FreeMatrix
    potential_diff: object

    def d_from(self, parity: int) -> FreeMatrix:
        return self.d_even_to_odd if parity % 2 == 0 else self.d_odd_to_even


def assemble_hom_complex(P: MatFac, Q: MatFac) -> HomComplex:
    H = hom_mf(P, Q)  # validated: d^2 = (V - W) id
    return HomComplex(P, Q, H.e1, H.e0, H.W)


def is_closed(phi: MFMorphism) -> bool:
    return phi.is_closed()


@dataclass(frozen=True)
class NullHomotopy:
    exists: bool
    witness: MFMorphism | None = None
    obstruction: list | None = None  # nonzero normal form of vec(phi)

    def __bool__(self):
        return self.exists


def null_homotopy(phi: MFMorphism) -> NullHomotopy:
    """Find ``h`` with ``d(h) = phi`` or certify that none exists."""
    E, F = phi.source, phi.target
    if E.pot != F.pot:
        raise PotentialMismatch(f"{E.W} vs {F.W}")
    require_closed(phi)
    if phi.is_zero():
        return NullHomotopy(True, MFMorphism.zero(E, F, phi.degree + 1))
    C = assemble_hom_complex(E, F)
    D = C.d_from(phi.degree + 1)
    res = submodule_membership(flatten_morphism(phi), D, E.ctx)
    if not res.member:
        return NullHomotopy(False, obstruction=res.witness)
    h = unflatten_morphism(E, F, phi.degree + 1, res.coeffs)
    if h.differential() != phi:
        raise MFError("internal: homotopy witness does not reproduce phi")
    return NullHomotopy(True, h)


def is_contractible(E: MatFac) -> bool:
    if E.rank0 == 0 and E.rank1 == 0:
        return True
    return contraction(E) is not None


@dataclass
class _Splitting:
    """Base change ``A, B`` with ``A e1 B^-1`` and ``B e0 A^-1`` split into 1|1 blocks plus a rest."""

    e1: list
    e0: list
    A: list
    Ainv: list
    B: list
    Binv: list
    pivots: list  # (parity of the pivot matrix, row, col, inverse of the pivot)
    rows0: list  # surviving basis indices of E0
    rows1: list  # surviving basis indices of E1


def _grid(m: FreeMatrix) -> list:
    return [list(r) for r in m.entries]


def _find_pivot(X, rows, cols):
    best = None
    for i in rows:
        for j in cols:
            c = X[i][j]
            if c.terms and c.is_constant():
                cost = sum(1 for k in rows if X[k][j].terms) + sum(1 for l in cols if X[i][l].terms)
                if best is None or cost < best[0]:
                    best = (cost, i, j)
    return best


def _eliminate(X, Y, P, Pinv, Q, Qinv, rows, cols, i, j, inv):
    """Clear row ``i`` and column ``j`` of ``X``; ``X`` maps the ``Q`` side to the ``P`` side."""
    for k in rows:
        t = X[k][j]
        if k == i or not t.terms:
            continue
        s = t * inv
        for M in (X, P):
            M[k] = [a - s * b for a, b in zip(M[k], M[i])]
        for M in (Y, Pinv):
            for r in M:
                r[i] = r[i] + s * r[k]
    for l in cols:
        t = X[i][l]
        if l == j or not t.terms:
            continue
        s = t * inv
        for M in (X, Qinv):
            for r in M:
                r[l] = r[l] - s * r[j]
        for M in (Y, Q):
            M[j] = [a + s * b for a, b in zip(M[j], M[l])]


def split_trivial_summands(E: MatFac) -> _Splitting:
    """Peel off summands ``(c, W/c)`` for constant entries ``c`` by exact base changes."""
    ctx = E.ctx
    one = FreeMatrix.identity
    sp = _Splitting(_grid(E.e1), _grid(E.e0),
                    _grid(one(ctx, E.rank0)), _grid(one(ctx, E.rank0)),
                    _grid(one(ctx, E.rank1)), _grid(one(ctx, E.rank1)),
                    [], list(range(E.rank0)), list(range(E.rank1)))
    while sp.rows0 and sp.rows1:
        p1 = _find_pivot(sp.e1, sp.rows0, sp.rows1)
        p0 = _find_pivot(sp.e0, sp.rows1, sp.rows0)
        if p1 is None and p0 is None:
            break
        if p0 is None or (p1 is not None and p1[0] <= p0[0]):
            _, i, j = p1
            inv = ctx.field.inv(sp.e1[i][j].constant_value())
            _eliminate(sp.e1, sp.e0, sp.A, sp.Ainv, sp.B, sp.Binv, sp.rows0, sp.rows1, i, j, inv)
            sp.pivots.append((1, i, j, inv))
            sp.rows0.remove(i)
            sp.rows1.remove(j)
        else:
            _, j, i = p0
            inv = ctx.field.inv(sp.e0[j][i].constant_value())
            _eliminate(sp.e0, sp.e1, sp.B, sp.Binv, sp.A, sp.Ainv, sp.rows1, sp.rows0, j, i, inv)
            sp.pivots.append((0, j, i, inv))
            sp.rows1.remove(j)
            sp.rows0.remove(i)
    return sp


def contraction(E: MatFac) -> MFMorphism | None:
    """An odd ``h`` with ``d(h) = id``, if one exists.

    Constant entries are split off first; only the remaining summand needs a
    Groebner basis computation.
    """
    ctx = E.ctx
    sp = split_trivial_summands(E)
    if not sp.pivots:
        return null_homotopy(MFMorphism.identity(E)).witness
    h0 = [[ctx.zero] * E.rank0 for _ in range(E.rank1)]
    h1 = [[ctx.zero] * E.rank1 for _ in range(E.rank0)]
    for parity, r, c, inv in sp.pivots:
        if parity == 1:
            h0[c][r] = ctx.const(inv)
        else:
            h1[c][r] = ctx.const(inv)
    if sp.rows0 or sp.rows1:
        rest = MatFac(E.pot,
                      FreeMatrix(ctx, len(sp.rows0), len(sp.rows1),
                                 [[sp.e1[i][j] for j in sp.rows1] for i in sp.rows0]),
                      FreeMatrix(ctx, len(sp.rows1), len(sp.rows0),
                                 [[sp.e0[j][i] for i in sp.rows0] for j in sp.rows1]))
        g = null_homotopy(MFMorphism.identity(rest)).witness
        if g is None:
            return None
        for a, j in enumerate(sp.rows1):
            for b, i in enumerate(sp.rows0):
                h0[j][i] = g.on0[a, b]
                h1[i][j] = g.on1[b, a]
    A, Ainv = FreeMatrix(ctx, E.rank0, E.rank0, sp.A), FreeMatrix(ctx, E.rank0, E.rank0, sp.Ainv)
    B, Binv = FreeMatrix(ctx, E.rank1, E.rank1, sp.B), FreeMatrix(ctx, E.rank1, E.rank1, sp.Binv)
    h = MFMorphism(E, E, 1,
                   Binv @ FreeMatrix(ctx, E.rank1, E.rank0, h0) @ A,
                   Ainv @ FreeMatrix(ctx, E.rank0, E.rank1, h1) @ B)
    if h.differential() != MFMorphism.identity(E):
        raise MFError("internal: split contraction does not square to the identity")
    return h


def is_homotopy_iso(phi: MFMorphism) -> bool:
    """Decided by contractibility of the cone."""
    return is_contractible(cone(phi))


@dataclass(frozen=True)
class ExtResult:
    degree: int
    presentation: ModulePresentation

    @property
    def k_dim(self):
        return self.presentation.k_dim

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "k_dim": self.k_dim,
            "relations": self.presentation.relations.to_lists(),
        }


def ext_module(P: MatFac, Q: MatFac, degree: int) -> ExtResult:
    """Homology of the Hom complex in the given parity (needs equal potentials)."""
    if P.pot != Q.pot:
        raise PotentialMismatch(f"{P.W} vs {Q.W}")
    C = assemble_hom_complex(P, Q)
    degree %= 2
    pres = module_homology(C.d_from(degree + 1), C.d_from(degree), P.ctx)
    return ExtResult(degree, pres)


def ext_dims(P: MatFac, Q: MatFac) -> tuple:
    return ext_module(P, Q, 0).k_dim, ext_module(P, Q, 1).k_dim


# -- the case W = 0 -----------------------------------------------------------

def _need_w0(E: MatFac):
    if not E.pot.is_zero():
        raise PotentialNotZero(f"potential is {E.W}")


def homology_w0(E: MatFac):
    """``(H0, H1) = (ker e0 / im e1, ker e1 / im e0)`` for ``W = 0``."""
    _need_w0(E)
    return module_homology(E.e1, E.e0, E.ctx), module_homology(E.e0, E.e1, E.ctx)


def _induced_iso(phi_a: FreeMatrix, e_src_out, e_src_in, e_dst_out, e_dst_in) -> bool:
    ctx = phi_a.ring
    K_E = syzygy_basis(e_src_out, ctx)
    K_F = syzygy_basis(e_dst_out, ctx)
    img = phi_a @ K_E if K_E.cols else FreeMatrix(ctx, phi_a.rows, 0)
    span = FreeMatrix.block_sized(ctx, [[img, e_dst_in]], [phi_a.rows], [img.cols, e_dst_in.cols])
    for col in K_F.columns():
        if not submodule_membership(col, span, ctx).member:
            return False
    if K_E.cols == 0:
        return True
    S = syzygy_basis(span, ctx)
    if S.cols == 0:
        return True
    C = S.submatrix(range(K_E.cols), range(S.cols))
    back = K_E @ C
    for col in back.columns():
        if not submodule_membership(col, e_src_in, ctx).member:
            return False
    return True


def quasi_iso(phi: MFMorphism) -> bool:
    """Does ``phi`` induce isomorphisms on both homology modules?  (``W = 0``.)"""
    E, F = phi.source, phi.target
    _need_w0(E)
    _need_w0(F)
    if phi.degree != 0:
        raise MFError("quasi_iso needs a degree-0 morphism")
    require_closed(phi)
    return (_induced_iso(phi.on0, E.e0, E.e1, F.e0, F.e1)
            and _induced_iso(phi.on1, E.e1, E.e0, F.e1, F.e0))
