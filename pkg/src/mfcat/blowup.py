"""Local model of pushing a factorization forward along a divisor ``f = 0``.

Setting: ``A`` a ring, ``f`` a nonzerodivisor, ``M = {m1; m0}`` a matrix
factorization over ``A/f`` of ``W mod f`` with ``M1 = (A/f)^s1`` and
``M0 = (A/f)^s0``.  We lift ``m0`` to ``alpha: P0 -> P1`` and ``m1`` to
``beta: P1 -> P0`` (``P_i = A^s_i``), divide ``W - beta alpha`` and
``W - alpha beta`` by ``f``, and check the explicit resolution, the
duality diagram and the contracting homotopy entry by entry.

Maps into objects with ``A/f``-module components are represented as
morphisms of factorizations over ``A/f`` after reducing the source mod
``f``; exactness is checked on ``A``-module presentations where ``(A/f)^s``
is presented by ``f * id``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra.matrix import FreeMatrix
from .algebra.modules import short_exact_report, submodule_membership, syzygy_basis
from .algebra.ring import Poly, RingContext
from .errors import MFError, NotDivisible, NotSurjective, RingMismatch
from .homotopy import is_contractible
from .mf.core import MatFac, MFMorphism, Potential, RingMap, base_change, cone_maps, shift
from .mf.ops import dual, dual_morphism, hom_mf


def _blocks(ctx: RingContext, grid, sizes_r, sizes_c) -> FreeMatrix:
    """Block matrix where scalars stand for scalar multiples of the identity."""
    out = []
    for i, row in enumerate(grid):
        brow = []
        for j, b in enumerate(row):
            if isinstance(b, FreeMatrix):
                brow.append(b)
            else:
                b = ctx(b)
                if not b.terms:
                    brow.append(None)
                else:
                    if sizes_r[i] != sizes_c[j]:
                        raise MFError("scalar block must be square")
                    brow.append(FreeMatrix.identity(ctx, sizes_r[i], b))
        out.append(brow)
    return FreeMatrix.block_sized(ctx, out, sizes_r, sizes_c)


@dataclass
class LocalModel:
    A: RingContext
    B: RingContext  # A / (f)
    f: Poly
    W: Poly
    M: MatFac
    alpha: FreeMatrix  # P0 -> P1, lifts m0
    beta: FreeMatrix   # P1 -> P0, lifts m1
    u0: FreeMatrix     # on P1
    u1: FreeMatrix     # on P0

    @property
    def s0(self) -> int:
        return self.M.rank0

    @property
    def s1(self) -> int:
        return self.M.rank1

    @property
    def pot(self) -> Potential:
        return Potential(self.A, self.W)

    def reduce(self, m: FreeMatrix) -> FreeMatrix:
        return m.over(self.B)


def _divide_by(M: FreeMatrix, f: Poly, what: str) -> FreeMatrix:
    ctx = M.ring
    grid = []
    for i, row in enumerate(M.entries):
        out = []
        for j, a in enumerate(row):
            res = submodule_membership(a, [f], ctx)
            if not res.member:
                raise NotDivisible(f"{what} entry ({i},{j}) = {a} is not divisible by {f}")
            out.append(res.coeffs[0])
        grid.append(out)
    return FreeMatrix(ctx, M.rows, M.cols, grid)


def lift_potential_data(M: MatFac, f: Poly, W, alpha=None, beta=None) -> LocalModel:
    """Lift ``M`` over ``A/f`` to ``alpha, beta`` over ``A`` and solve for ``u0, u1``."""
    A = f.ring
    W = A(W)
    B = A.quotient(f)
    if M.ctx != B:
        raise RingMismatch(f"M lives over {M.ctx}, expected {B}")
    if syzygy_basis(FreeMatrix(A, 1, 1, [[f]]), A).cols:
        raise MFError(f"{f} is a zero divisor in {A}")
    if M.W != B(W):
        raise NotDivisible(f"W mod f is {B(W)} but M has potential {M.W}")
    s0, s1 = M.rank0, M.rank1
    alpha = M.e0.over(A) if alpha is None else alpha
    beta = M.e1.over(A) if beta is None else beta
    if alpha.over(B) != M.e0 or beta.over(B) != M.e1:
        raise MFError("given lifts do not reduce to m0, m1")
    u1 = _divide_by(FreeMatrix.identity(A, s0, W) - beta @ alpha, f, "W - beta*alpha")
    u0 = _divide_by(FreeMatrix.identity(A, s1, W) - alpha @ beta, f, "W - alpha*beta")
    model = LocalModel(A, B, f, W, M, alpha, beta, u0, u1)
    for name, lhs, rhs in _model_identities(model):
        if lhs != rhs:
            raise MFError(f"identity {name} fails: {lhs} != {rhs}")
    return model


def _model_identities(m: LocalModel):
    A = m.A
    a, b, u0, u1, f = m.alpha, m.beta, m.u0, m.u1, m.f
    return [
        ("W = f u1 + beta alpha", FreeMatrix.identity(A, m.s0, m.W), u1.scale(f) + b @ a),
        ("W = f u0 + alpha beta", FreeMatrix.identity(A, m.s1, m.W), u0.scale(f) + a @ b),
        ("alpha u1 = u0 alpha", a @ u1, u0 @ a),
        ("beta u0 = u1 beta", b @ u0, u1 @ b),
        ("c alpha = m0 c", a.over(m.B), m.M.e0),
        ("c beta = m1 c", b.over(m.B), m.M.e1),
    ]


# -- the two-step resolution --------------------------------------------------

@dataclass
class ResolutionPair:
    model: LocalModel
    Q_minus1: MatFac
    Q_0: MatFac
    q: MFMorphism          # Q^-1 -> Q^0 over A
    r: MFMorphism          # (Q^0 mod f) -> M over A/f
    certificates: dict = field(default_factory=dict)


def _sizes(m: LocalModel, k=1):
    return [m.s0, m.s1] * k


def two_step_resolution(m: LocalModel) -> ResolutionPair:
    A, f = m.A, m.f
    a, b, u0, u1 = m.alpha, m.beta, m.u0, m.u1
    P = _sizes(m)
    pot = m.pot
    Q0 = MatFac(pot, _blocks(A, [[u1.scale(f), b], [-a, 1]], P, P),
                _blocks(A, [[1, -b], [a, u0.scale(f)]], P, P))
    Qm1 = MatFac(pot, _blocks(A, [[u1, b], [-a, f]], P, P),
                 _blocks(A, [[f, -b], [a, u0]], P, P))
    q = MFMorphism(Qm1, Q0, 0, _blocks(A, [[f, 0], [0, 1]], P, P), _blocks(A, [[1, 0], [0, f]], P, P))
    B = m.B
    c0 = FreeMatrix.identity(B, m.s0)
    c1 = FreeMatrix.identity(B, m.s1)
    to_B = RingMap(A, B, B.gens())
    Q0_bar = base_change(to_B, Q0)
    r = MFMorphism(Q0_bar, m.M, 0,
                   FreeMatrix.block_sized(B, [[c0, None]], [m.s0], P),
                   FreeMatrix.block_sized(B, [[None, c1]], [m.s1], P))
    certs = {}
    certs["q closed"] = q.is_closed()
    certs["r closed"] = r.is_closed()
    rq = r @ MFMorphism(base_change(to_B, Qm1), Q0_bar, 0, q.on0.over(B), q.on1.over(B))
    certs["r q = 0"] = rq.is_zero()
    for par in (0, 1):
        rel = FreeMatrix.identity(A, m.M.rank(par), f)
        rep = short_exact_report(q.component(par), r.component(par).over(A), rel)
        certs[f"exact in parity {par}"] = rep.ok
    certs["Q0 contractible"] = is_contractible(Q0)
    return ResolutionPair(m, Qm1, Q0, q, r, certs)


# -- duality diagram ------------------------------------------------------------

@dataclass
class Verdict:
    passed: bool
    checked: list = field(default_factory=list)
    failed_identity: str | None = None
    lhs: str | None = None
    rhs: str | None = None

    def to_json(self) -> dict:
        out = {"pass": self.passed, "checked": len(self.checked)}
        if not self.passed:
            out.update({"failed_identity": self.failed_identity, "lhs": self.lhs, "rhs": self.rhs})
        return out


class _Failure(Exception):
    pass


class _Checker:
    def __init__(self):
        self.checked = []

    def equal(self, name, lhs, rhs):
        if lhs != rhs:
            raise _Failure(name, str(lhs), str(rhs))
        self.checked.append(name)

    def holds(self, name, cond, detail=""):
        if not cond:
            raise _Failure(name, detail or "false", "true")
        self.checked.append(name)

    def closed(self, name, phi: MFMorphism):
        d = phi.differential()
        self.equal(f"{name} closed", str(d), str(MFMorphism.zero(phi.source, phi.target, d.degree)))


def duality_witness(m: LocalModel) -> Verdict:
    """Run every identity of the local duality argument; report the first failure."""
    chk = _Checker()
    try:
        _run_duality(m, chk)
    except _Failure as e:
        name, lhs, rhs = e.args
        return Verdict(False, chk.checked, name, lhs, rhs)
    return Verdict(True, chk.checked)


def _run_duality(m: LocalModel, chk: _Checker) -> None:
    A, B, f = m.A, m.B, m.f
    a, b, u0, u1 = m.alpha, m.beta, m.u0, m.u1
    aT, bT, u0T, u1T = a.T, b.T, u0.T, u1.T
    s0, s1 = m.s0, m.s1
    P, PP = _sizes(m), _sizes(m, 2)
    to_B = RingMap(A, B, B.gens())

    for name, lhs, rhs in _model_identities(m):
        chk.equal(name, lhs, rhs)

    res = two_step_resolution(m)
    for name, ok in res.certificates.items():
        chk.holds(name, ok)
    Qm1, Q0, q = res.Q_minus1, res.Q_0, res.q

    # T = Tot(Q^-1 -> Q^0) and the maps r', u, t, r''
    T, _, u = cone_maps(q)
    chk.equal("T odd-to-even", T.e1, _blocks(A, [
        [u1.scale(f), b, f, 0], [-a, 1, 0, 1], [0, 0, -f, b], [0, 0, -a, -u0]], PP, PP))
    chk.equal("T even-to-odd", T.e0, _blocks(A, [
        [1, -b, 1, 0], [a, u0.scale(f), 0, f], [0, 0, -u1, -b], [0, 0, a, -f]], PP, PP))
    X = shift(Qm1)
    chk.equal("[1]Q^-1 odd-to-even", X.e1, _blocks(A, [[-f, b], [-a, -u0]], P, P))
    chk.equal("[1]Q^-1 even-to-odd", X.e0, _blocks(A, [[-u1, -b], [a, -f]], P, P))
    chk.equal("u", (u.on0, u.on1), (_blocks(A, [[0, 0, 1, 0], [0, 0, 0, 1]], P, PP),
                                    _blocks(A, [[0, 0, 1, 0], [0, 0, 0, 1]], P, PP)))
    chk.closed("u", u)
    t = MFMorphism(X, T, 0,
                   _blocks(A, [[-1, 0], [0, 0], [1, 0], [0, 1]], PP, P),
                   _blocks(A, [[0, 0], [0, -1], [1, 0], [0, 1]], PP, P))
    chk.closed("t", t)
    chk.equal("u t = id", u @ t, MFMorphism.identity(X))
    T_bar, X_bar = base_change(to_B, T), base_change(to_B, X)
    cB0, cB1 = FreeMatrix.identity(B, s0), FreeMatrix.identity(B, s1)
    r_prime = MFMorphism(T_bar, m.M, 0,
                         FreeMatrix.block_sized(B, [[cB0, None, None, None]], [s0], PP),
                         FreeMatrix.block_sized(B, [[None, cB1, None, None]], [s1], PP))
    chk.closed("r'", r_prime)
    t_bar = MFMorphism(X_bar, T_bar, 0, t.on0.over(B), t.on1.over(B))
    r2 = r_prime @ t_bar
    chk.equal("r'' even", r2.on0, FreeMatrix.block_sized(B, [[-cB0, None]], [s0], P))
    chk.equal("r'' odd", r2.on1, FreeMatrix.block_sized(B, [[None, -cB1]], [s1], P))
    chk.closed("r''", r2)

    # the dual diagram E -> F <- G -> H with splitting s
    E = dual(m.M)
    F = dual(X_bar)
    chk.equal("E odd-to-even", E.e1, m.M.e0.T)
    chk.equal("E even-to-odd", E.e0, -m.M.e1.T)
    ab, bb, u0b, u1b = (x.over(B) for x in (aT, bT, u0T, u1T))
    chk.equal("F odd-to-even", F.e1, _blocks(B, [[-u1b, ab], [-bb, 0]], P, P))
    chk.equal("F even-to-odd", F.e0, _blocks(B, [[0, ab], [-bb, u0b]], P, P))
    r2_star = dual_morphism(r2)
    chk.equal("r''* odd", r2_star.on1, FreeMatrix.block_sized(B, [[None], [-cB1]], P, [s1]))
    chk.equal("r''* even", r2_star.on0, FreeMatrix.block_sized(B, [[-cB0], [None]], P, [s0]))
    chk.closed("r''*", r2_star)

    zero_pot = Potential(A, A.zero)
    G_target = MatFac(zero_pot, FreeMatrix(A, 1, 1, [[f]]), FreeMatrix(A, 1, 1, [[0]]))
    H_target = MatFac(zero_pot, FreeMatrix(A, 0, 1), FreeMatrix(A, 1, 0))
    G = hom_mf(X, G_target)
    H = hom_mf(X, H_target)
    chk.equal("G odd-to-even", G.e1, _blocks(A, [
        [-u1T, aT, f, 0], [-bT, -f, 0, f], [0, 0, -f, -aT], [0, 0, bT, -u0T]], PP, PP))
    chk.equal("G even-to-odd", G.e0, _blocks(A, [
        [f, aT, f, 0], [-bT, u0T, 0, f], [0, 0, u1T, -aT], [0, 0, bT, f]], PP, PP))
    chk.equal("H odd-to-even", H.e1, _blocks(A, [[-f, -aT], [bT, -u0T]], P, P))
    chk.equal("H even-to-odd", H.e0, _blocks(A, [[u1T, -aT], [bT, f]], P, P))

    pr12 = _blocks(A, [[1, 0, 0, 0], [0, 1, 0, 0]], P, PP)
    pr34 = _blocks(A, [[0, 0, 1, 0], [0, 0, 0, 1]], P, PP)
    G_bar = base_change(to_B, G)
    rho = MFMorphism(G_bar, F, 0, pr12.over(B), pr12.over(B))
    chk.closed("rho_*", rho)
    delta = MFMorphism(G, H, 0, pr34, pr34)
    chk.closed("delta'_*", delta)
    s = MFMorphism(H, G, 0,
                   _blocks(A, [[-1, 0], [0, 0], [1, 0], [0, 1]], PP, P),
                   _blocks(A, [[0, 0], [0, 1], [1, 0], [0, 1]], PP, P))
    chk.closed("s", s)
    chk.equal("delta'_* s = id", delta @ s, MFMorphism.identity(H))

    # rho_* s lands in r''*(E), identified with the coordinate subobject of F
    R = MatFac(E.pot, ab, -bb)
    chk.equal("r''*(E) = E", R, E)
    incl = MFMorphism(R, F, 0,
                      FreeMatrix.block_sized(B, [[cB0], [None]], P, [s0]),
                      FreeMatrix.block_sized(B, [[None], [cB1]], P, [s1]))
    chk.closed("inclusion of r''*(E)", incl)
    chk.equal("r''* = -inclusion", r2_star, -incl)
    H_bar = base_change(to_B, H)
    psi = MFMorphism(H_bar, R, 0,
                     FreeMatrix.block_sized(B, [[-cB0, None]], [s0], P),
                     FreeMatrix.block_sized(B, [[None, cB1]], [s1], P))
    chk.closed("rho_* s onto r''*(E)", psi)
    s_bar = MFMorphism(H_bar, G_bar, 0, s.on0.over(B), s.on1.over(B))
    chk.equal("rho_* s = inclusion psi", rho @ s_bar, incl @ psi)

    # final short exact sequence L -> H -> r''*(E) and the contraction of L
    L = kernel_object(m)
    lam = MFMorphism(L, H, 0, _blocks(A, [[f, 0], [0, 1]], P, P), _blocks(A, [[-1, 0], [0, -f]], P, P))
    chk.closed("L -> H", lam)
    lam_bar = MFMorphism(base_change(to_B, L), H_bar, 0, lam.on0.over(B), lam.on1.over(B))
    chk.holds("psi o lambda = 0", (psi @ lam_bar).is_zero())
    for par in (0, 1):
        rel = FreeMatrix.identity(A, R.rank(par), f)
        rep = short_exact_report(lam.component(par), psi.component(par).over(A), rel)
        chk.holds(f"0 -> L -> H -> r''*(E) -> 0 exact in parity {par}", rep.ok, str(rep))
    h = kernel_contraction(m)
    chk.equal("d(h) = id on L", h.differential(), MFMorphism.identity(L))


def kernel_object(m: LocalModel) -> MatFac:
    """The kernel ``L`` of ``H -> r''*(E)``, a factorization of ``-W`` over ``A``."""
    A, f = m.A, m.f
    P = _sizes(m)
    aT, bT, u0T, u1T = m.alpha.T, m.beta.T, m.u0.T, m.u1.T
    return MatFac(-m.pot,
                  _blocks(A, [[1, aT], [-bT, u0T.scale(f)]], P, P),
                  _blocks(A, [[-u1T.scale(f), aT], [-bT, -1]], P, P))


def kernel_contraction(m: LocalModel) -> MFMorphism:
    """Odd ``h`` on ``L`` with ``h0 = [[1, 0], [0, 0]]`` and ``h1 = [[0, 0], [0, -1]]``."""
    A, P = m.A, _sizes(m)
    L = kernel_object(m)
    return MFMorphism(L, L, 1,
                      _blocks(A, [[1, 0], [0, 0]], P, P),
                      _blocks(A, [[0, 0], [0, -1]], P, P))


def projective_lift_split(p: FreeMatrix, q: FreeMatrix):
    """``l`` with ``p l = q`` and the change of basis ``[[1, -l], [0, 1]]``."""
    ctx = p.ring
    if q.rows != p.rows:
        raise MFError(f"p has {p.rows} rows, q has {q.rows}")
    for k in range(p.rows):
        e = [ctx.one if i == k else ctx.zero for i in range(p.rows)]
        if not submodule_membership(e, p, ctx).member:
            raise NotSurjective(f"basis vector {k} is not in the image", basis_index=k)
    cols = []
    for col in q.columns():
        res = submodule_membership(col, p, ctx)
        cols.append(res.coeffs)
    l = FreeMatrix.from_columns(ctx, cols, p.cols) if cols else FreeMatrix(ctx, p.cols, 0)
    if p @ l != q:
        raise MFError("internal: lift does not reproduce q")
    n, k = p.cols, q.cols
    g = FreeMatrix.block_sized(ctx, [[FreeMatrix.identity(ctx, n), -l], [None, FreeMatrix.identity(ctx, k)]],
                               [n, k], [n, k])
    return l, g
