"""Submodules of free modules over a :class:`RingContext`.

Module elements are columns (lists of :class:`Poly`); matrices act on the
left, so the columns of a :class:`FreeMatrix` are the images of the basis.
Over a quotient ring ``A/I`` every computation is done in ``A^r`` with the
extra generators ``I * e_i`` thrown in.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from ..errors import CompositionNonzero, MFError
from .groebner import axpy, groebner, leading_term, reduce_vector
from .matrix import FreeMatrix
from .ring import Poly, RingContext

__all__ = [
    "groebner_basis",
    "normal_form",
    "syzygy_basis",
    "submodule_membership",
    "Membership",
    "module_homology",
    "ModulePresentation",
    "generic_rank",
    "exact_divide",
    "short_exact_report",
    "ExactnessReport",
]


# -- raw conversion ---------------------------------------------------------

def _col_to_raw(col, offset=0) -> dict:
    out = {}
    for i, f in enumerate(col):
        for e, c in f.terms.items():
            out[(i + offset, e)] = c
    return out


def _raw_to_col(vec, rank, ctx: RingContext, offset=0) -> list:
    parts = [dict() for _ in range(rank)]
    for (pos, e), c in vec.items():
        parts[pos - offset][e] = c
    return [Poly(ctx, t) for t in parts]


def _ideal_raw(ctx: RingContext, positions) -> list:
    return [{(i, e): c for (_, e), c in g.items()} for i in positions for g in ctx._ideal_raw]


def _p(ctx):
    return ctx.field.p


def _as_columns(gens, ctx):
    """Accept polynomials or columns; return (columns, was_poly)."""
    gens = list(gens)
    if gens and isinstance(gens[0], (Poly, int, str)):
        return [[ctx(g)] for g in gens], True
    return [[ctx(x) for x in col] for col in gens], False


_GB_CACHE: dict = {}
_SYZ_CACHE: dict = {}
_CACHE_LIMIT = 4096


def _remember(cache, key, value):
    if len(cache) > _CACHE_LIMIT:
        cache.clear()
    cache[key] = value
    return value


# -- Groebner bases ---------------------------------------------------------

def _module_gb(cols, rank, ctx: RingContext):
    """Reduced GB (raw vectors) of the preimage of ``span(cols)`` in ``A^rank``."""
    key = (ctx, rank, tuple(tuple(c) for c in cols))
    hit = _GB_CACHE.get(key)
    if hit is not None:
        return hit
    raw = [_col_to_raw(c) for c in cols] + _ideal_raw(ctx, range(rank))
    gb = [v for v, _ in groebner(raw, ctx.term_order, _p(ctx), ideal_mode=(rank == 1))]
    return _remember(_GB_CACHE, key, gb)


def groebner_basis(gens, ctx: RingContext, rank: int | None = None):
    """Reduced Groebner basis of the submodule (or ideal) generated by ``gens``.

    Polynomials in, polynomials out; columns in, columns out.  Over a quotient
    ring, elements lying in ``I * A^r`` are dropped from the output.
    """
    cols, was_poly = _as_columns(gens, ctx)
    if rank is None:
        rank = len(cols[0]) if cols else 1
    gb = _module_gb(cols, rank, ctx)
    out = []
    for v in gb:
        col = _raw_to_col(v, rank, ctx)
        if any(c.terms for c in col):
            out.append(col[0] if was_poly else col)
    return out


def normal_form(f, basis, ctx: RingContext):
    """Remainder of ``f`` (a polynomial or a column) against a Groebner basis."""
    if isinstance(f, (Poly, int, str)):
        col, was_poly = [ctx(f)], True
        basis = [[ctx(b)] for b in basis]
    else:
        col, was_poly = [ctx(x) for x in f], False
        basis = [[ctx(x) for x in b] for b in basis]
    rank = len(col)
    raw = [_col_to_raw(b) for b in basis] + _ideal_raw(ctx, range(rank))
    rem = reduce_vector(_col_to_raw(col), raw, ctx.term_order, _p(ctx))
    out = _raw_to_col(rem, rank, ctx)
    return out[0] if was_poly else out


# -- syzygies -------------------------------------------------------------

def syzygy_basis(M: FreeMatrix, ctx: RingContext | None = None) -> FreeMatrix:
    """Matrix whose columns generate ``ker(M)``; canonical (a reduced GB)."""
    ctx = ctx or M.ring
    r, m = M.rows, M.cols
    key = (ctx, M)
    hit = _SYZ_CACHE.get(key)
    if hit is not None:
        return hit
    if m == 0:
        return _remember(_SYZ_CACHE, key, FreeMatrix(ctx, 0, 0))
    if r == 0 or M.is_zero():
        return _remember(_SYZ_CACHE, key, FreeMatrix.identity(ctx, m))
    gens = []
    zero_exp = ctx.zero_exp
    one = ctx.field(1)
    for j, col in enumerate(M.columns()):
        v = _col_to_raw(col)
        v[(r + j, zero_exp)] = one
        gens.append(v)
    gens += _ideal_raw(ctx, range(r + m))
    gb = groebner(gens, ctx.term_order, _p(ctx))
    syz = []
    for v, _ in gb:
        pos = leading_term(v, ctx.term_order)[0]
        if pos < r:
            continue
        col = _raw_to_col(v, m, ctx, offset=r)
        if any(c.terms for c in col):
            syz.append(col)
    out = FreeMatrix.from_columns(ctx, syz, m) if syz else FreeMatrix(ctx, m, 0)
    return _remember(_SYZ_CACHE, key, out)


# -- membership -----------------------------------------------------------

@dataclass(frozen=True)
class Membership:
    member: bool
    coeffs: list | None = None   # lift with gens @ coeffs == v
    witness: list | None = None  # nonzero normal form when not a member

    def __bool__(self):
        return self.member


class _Lifter:
    """Tagged GB of a column span, reusable for many membership queries."""

    def __init__(self, gens: FreeMatrix, ctx: RingContext):
        self.ctx = ctx
        self.rank = gens.rows
        self.m = gens.cols
        p = _p(ctx)
        zero_exp = ctx.zero_exp
        raw, tags = [], []
        for j, col in enumerate(gens.columns()):
            raw.append(_col_to_raw(col))
            tags.append({(j, zero_exp): ctx.field(1)})
        for g in _ideal_raw(ctx, range(self.rank)):
            raw.append(g)
            tags.append({})
        gb = groebner(raw, ctx.term_order, p, tags=tags)
        self.basis = [v for v, _ in gb]
        self.tags = [t for _, t in gb]

    def lift(self, v) -> Membership:
        ctx = self.ctx
        p = _p(ctx)
        rem, q = reduce_vector(_col_to_raw(v), self.basis, ctx.term_order, p, quotients=True)
        if rem:
            return Membership(False, witness=_raw_to_col(rem, self.rank, ctx))
        c = {}
        for (k, e), a in q.items():
            axpy(c, a, e, self.tags[k], p)
        return Membership(True, coeffs=_raw_to_col(c, self.m, ctx))


_LIFT_CACHE: dict = {}


def _lifter(gens: FreeMatrix, ctx) -> _Lifter:
    key = (ctx, gens)
    hit = _LIFT_CACHE.get(key)
    if hit is None:
        hit = _remember(_LIFT_CACHE, key, _Lifter(gens, ctx))
    return hit


def _infer_ring(v, gens) -> RingContext:
    if isinstance(gens, FreeMatrix):
        return gens.ring
    for x in [v, *gens]:
        if isinstance(x, Poly):
            return x.ring
        if isinstance(x, (list, tuple)):
            for y in x:
                if isinstance(y, Poly):
                    return y.ring
    raise MFError("cannot infer the ring; pass ctx")


def submodule_membership(v, gens, ctx: RingContext | None = None) -> Membership:
    """Decide ``v in span(gens)``; ``gens`` is a FreeMatrix or a list of columns/polys."""
    if ctx is None:
        ctx = _infer_ring(v, gens)
    if not isinstance(gens, FreeMatrix):
        cols, was_poly = _as_columns(gens, ctx)
        rank = len(cols[0]) if cols else (1 if isinstance(v, (Poly, int, str)) else len(v))
        gens = FreeMatrix.from_columns(ctx, cols, rank) if cols else FreeMatrix(ctx, rank, 0)
    ctx = ctx or gens.ring
    if isinstance(v, (Poly, int, str)):
        v = [ctx(v)]
    else:
        v = [ctx(x) for x in v]
    if len(v) != gens.rows:
        raise MFError(f"vector of length {len(v)} vs generators of rank {gens.rows}")
    if gens.cols == 0:
        if any(x.terms for x in v):
            return Membership(False, witness=v)
        return Membership(True, coeffs=[])
    if ctx.is_zero_ring:
        return Membership(True, coeffs=[ctx.zero] * gens.cols)
    return _pivot_membership(v, gens, ctx)


def _pivot_membership(v, gens: FreeMatrix, ctx: RingContext) -> Membership:
    """Eliminate constant pivots, then lift what is left with a Groebner basis.

    Pivoting on a unit entry ``(i, j)`` removes row ``i`` and column ``j``
    without changing the answer, and the coefficient of column ``j`` is
    recovered afterwards by back substitution.
    """
    cols = {j: {i: c for i, c in enumerate(col) if c.terms} for j, col in enumerate(gens.columns())}
    vec = {i: c for i, c in enumerate(v) if c.terms}
    steps = []  # (row, col, inverse pivot, v_row, {k: entry in row})
    while True:
        best = None
        row_count: dict = {}
        for col in cols.values():
            for i in col:
                row_count[i] = row_count.get(i, 0) + 1
        for j, col in cols.items():
            for i, c in col.items():
                if c.is_constant():
                    cost = (row_count[i] - 1) * (len(col) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, i, j)
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, i, j = best
        pivot = cols.pop(j)
        inv = ctx.field.inv(pivot[i].constant_value())
        row = {k: col.pop(i) for k, col in cols.items() if i in col}
        vi = vec.pop(i, ctx.zero)
        steps.append((i, j, inv, vi, row))
        for r, c in pivot.items():
            if r == i:
                continue
            for k, a in row.items():
                _axpy_entry(cols[k], r, -(a * c) * inv)
            if vi.terms:
                _axpy_entry(vec, r, -(vi * c) * inv)
    rows = sorted({i for col in cols.values() for i in col} | set(vec))
    rest = list(cols)
    if rows:
        pos = {i: n for n, i in enumerate(rows)}
        grid = [[ctx.zero] * len(rest) for _ in rows]
        for n, k in enumerate(rest):
            for i, c in cols[k].items():
                grid[pos[i]][n] = c
        target = [vec.get(i, ctx.zero) for i in rows]
        if not rest:
            return Membership(False, witness=_expand(target, rows, len(v), ctx))
        res = _lifter(FreeMatrix(ctx, len(rows), len(rest), grid), ctx).lift(target)
        if not res.member:
            return Membership(False, witness=_expand(res.witness, rows, len(v), ctx))
        coeffs = dict(zip(rest, res.coeffs))
    else:
        coeffs = {k: ctx.zero for k in rest}
    for i, j, inv, vi, row in reversed(steps):
        acc = vi
        for k, a in row.items():
            acc = acc - coeffs[k] * a
        coeffs[j] = acc * inv
    return Membership(True, coeffs=[coeffs[j] for j in range(gens.cols)])


def _axpy_entry(col: dict, r: int, delta: Poly) -> None:
    if not delta.terms:
        return
    new = col[r] + delta if r in col else delta
    if new.terms:
        col[r] = new
    else:
        col.pop(r, None)


def _expand(values, rows, n: int, ctx) -> list:
    out = [ctx.zero] * n
    for i, c in zip(rows, values):
        out[i] = c
    return out


def solve_columns(A: FreeMatrix, B: FreeMatrix):
    """``X`` with ``A @ X == B``, or ``(None, j, witness)`` for the first failing column."""
    ctx = A.ring
    cols = []
    for j, b in enumerate(B.columns()):
        res = submodule_membership(b, A, ctx)
        if not res.member:
            return None, j, res.witness
        cols.append(res.coeffs)
    return FreeMatrix.from_columns(ctx, cols, A.cols) if cols else FreeMatrix(ctx, A.cols, 0), None, None


# -- presentations --------------------------------------------------------

def _monomial_dim(leads, nvars) -> int:
    """Krull dimension of ``k[x]/(leads)``; -1 when the ideal is the unit ideal."""
    if any(not any(e) for e in leads):
        return -1
    supports = [frozenset(i for i, x in enumerate(e) if x) for e in leads]
    for size in range(nvars, -1, -1):
        for S in itertools.combinations(range(nvars), size):
            S = frozenset(S)
            if all(not sup <= S for sup in supports):
                return size
    return 0


def _standard_count(leads, nvars) -> int:
    """Number of monomials outside a zero-dimensional monomial ideal."""
    if any(not any(e) for e in leads):
        return 0
    if nvars == 0:
        return 1
    bounds = []
    for i in range(nvars):
        pure = [e[i] for e in leads if e[i] and all(x == 0 for k, x in enumerate(e) if k != i)]
        bounds.append(min(pure))
    count = 0
    for mono in itertools.product(*(range(b) for b in bounds)):
        if not any(all(a >= b for a, b in zip(mono, e)) for e in leads):
            count += 1
    return count


@dataclass
class ModulePresentation:
    """``A^ambient_rank / span(relations)`` over ``ring``."""

    ring: RingContext
    ambient_rank: int
    relations: FreeMatrix
    krull_dim: int = field(init=False)
    k_dim: int | str = field(init=False)

    def __post_init__(self):
        rank = self.ambient_rank
        if rank == 0:
            self.krull_dim, self.k_dim = -1, 0
            return
        gb = _module_gb(self.relations.columns(), rank, self.ring)
        order = self.ring.term_order
        leads = [[] for _ in range(rank)]
        for v in gb:
            pos, e = leading_term(v, order)
            leads[pos].append(e)
        n = self.ring.nvars
        dims = [_monomial_dim(l, n) for l in leads]
        self.krull_dim = max(dims)
        if self.krull_dim <= 0:
            self.k_dim = sum(_standard_count(l, n) for l in leads)
        else:
            self.k_dim = "infinite"

    @cached_property
    def gb(self) -> list:
        return groebner_basis(self.relations.columns(), self.ring, self.ambient_rank) if self.ambient_rank else []

    def is_zero(self) -> bool:
        return self.krull_dim == -1

    def contains(self, v) -> bool:
        """Is the column ``v`` zero in the module?"""
        return submodule_membership(v, self.relations, self.ring).member

    @classmethod
    def cokernel(cls, M: FreeMatrix, prune: bool = True) -> ModulePresentation:
        if prune:
            M = prune_presentation(M)
        return cls(M.ring, M.rows, M)

    def to_json(self) -> dict:
        return {
            "ambient_rank": self.ambient_rank,
            "relations": self.relations.to_lists(),
            "krull_dim": self.krull_dim,
            "k_dim": self.k_dim,
        }

    def __str__(self):
        if self.is_zero():
            return "0"
        return f"coker {self.relations} over {self.ring} (krull {self.krull_dim}, k_dim {self.k_dim})"


def prune_presentation(R: FreeMatrix) -> FreeMatrix:
    """Remove generators killed by a relation with a unit entry; drop zero relations.

    The result presents an isomorphic module.  Pivots are chosen deterministically
    (first column, then first row with a unit entry).
    """
    ctx = R.ring
    rows = [list(r) for r in R.entries]
    nrows, ncols = R.rows, R.cols
    alive_rows = list(range(nrows))
    alive_cols = list(range(ncols))
    changed = True
    while changed:
        changed = False
        for j in alive_cols:
            for i in alive_rows:
                c = rows[i][j].constant_value()
                if c is None or not c:
                    continue
                inv = ctx.field.inv(c)
                # generator i = -(1/c) * sum_{l != i} R[l][j] g_l ; substitute in other relations
                for k in alive_cols:
                    if k == j:
                        continue
                    a = rows[i][k]
                    if not a.terms:
                        continue
                    factor = a * inv
                    for l in alive_rows:
                        if rows[l][j].terms:
                            rows[l][k] = rows[l][k] - factor * rows[l][j]
                alive_rows.remove(i)
                alive_cols.remove(j)
                changed = True
                break
            if changed:
                break
    keep_cols = [j for j in alive_cols if any(rows[i][j].terms for i in alive_rows)]
    grid = [[rows[i][j] for j in keep_cols] for i in alive_rows]
    return FreeMatrix(ctx, len(alive_rows), len(keep_cols), grid)


def module_homology(d_in: FreeMatrix, d_out: FreeMatrix, ctx: RingContext | None = None,
                    prune: bool = True) -> ModulePresentation:
    """Presentation of ``ker(d_out) / im(d_in)``."""
    ctx = ctx or d_in.ring
    if d_out.cols != d_in.rows:
        raise MFError(f"cannot compose {d_out.shape} after {d_in.shape}")
    comp = d_out @ d_in
    if not comp.is_zero():
        i, j, a, _ = comp.first_difference(FreeMatrix(ctx, comp.rows, comp.cols))
        raise CompositionNonzero(f"d_out*d_in has entry ({i},{j}) = {a}")
    K = syzygy_basis(d_out, ctx)
    k = K.cols
    if k == 0:
        return ModulePresentation(ctx, 0, FreeMatrix(ctx, 0, 0))
    C, j, _ = solve_columns(K, d_in)
    if C is None:
        raise MFError(f"image column {j} not inside the kernel")
    S = syzygy_basis(K, ctx)
    rel = FreeMatrix.block(ctx, [[C, S]]) if S.cols else C
    return ModulePresentation.cokernel(rel, prune=prune)


# -- ranks over the fraction field ---------------------------------------

def exact_divide(a: Poly, b: Poly) -> Poly | None:
    """``a / b`` when ``b`` divides ``a`` in the (ambient) polynomial ring, else None."""
    ctx = a.ring
    if not b.terms:
        return None if a.terms else ctx.zero
    raw_b = {(0, e): c for e, c in b.terms.items()}
    rem, q = reduce_vector({(0, e): c for e, c in a.terms.items()}, [raw_b],
                           ctx.term_order, _p(ctx), quotients=True)
    if rem:
        return None
    return Poly(ctx, {e: c for (_, e), c in q.items()})


def _rank_numeric(grid, field) -> int:
    grid = [list(r) for r in grid]
    rank = 0
    nrows = len(grid)
    ncols = len(grid[0]) if grid else 0
    p = field.p
    for j in range(ncols):
        piv = next((i for i in range(rank, nrows) if grid[i][j]), None)
        if piv is None:
            continue
        grid[rank], grid[piv] = grid[piv], grid[rank]
        inv = field.inv(grid[rank][j])
        for i in range(rank + 1, nrows):
            if grid[i][j]:
                f = grid[i][j] * inv
                grid[i] = [(x - f * y) % p if p else x - f * y for x, y in zip(grid[i], grid[rank])]
        rank += 1
    return rank


def _rank_bareiss(M: FreeMatrix) -> int:
    """Rank over the fraction field by fraction-free elimination (ambient ring)."""
    amb = M.ring.ambient
    grid = [[amb(x) for x in r] for r in M.entries]
    nrows, ncols = M.rows, M.cols
    rank = 0
    prev = amb.one
    for j in range(ncols):
        piv = next((i for i in range(rank, nrows) if grid[i][j].terms), None)
        if piv is None:
            continue
        grid[rank], grid[piv] = grid[piv], grid[rank]
        pv = grid[rank][j]
        for i in range(rank + 1, nrows):
            for k in range(j + 1, ncols):
                num = pv * grid[i][k] - grid[i][j] * grid[rank][k]
                q = exact_divide(num, prev)
                if q is None:
                    raise MFError("fraction-free elimination lost exactness")
                grid[i][k] = q
            grid[i][j] = amb.zero
        prev = pv
        rank += 1
    return rank


def generic_rank(M: FreeMatrix, seed: int = 0, retries: int = 3) -> int:
    """Rank of ``M`` over the fraction field of its (polynomial) ring.

    Evaluates at pseudorandom points with nonzero coordinates; if the
    evaluated ranks disagree the exact fraction-free computation decides.
    """
    if M.rows == 0 or M.cols == 0:
        return 0
    ctx = M.ring
    if ctx.has_ideal:
        raise MFError("generic rank needs a polynomial ring without relations")
    rng = random.Random(seed)
    field = ctx.field
    ranks = []
    for _ in range(retries + 1):
        pt = [field(Fraction(rng.randint(1, 10**6), rng.randint(1, 10**3))) for _ in ctx.variables]
        if field.p and any(not x for x in pt):
            continue
        grid = [[a.evaluate(pt) for a in r] for r in M.entries]
        ranks.append(_rank_numeric(grid, field))
    if ranks and max(ranks) == min(M.rows, M.cols):
        return max(ranks)
    # evaluation only bounds the rank from below; settle it exactly
    return _rank_bareiss(M)


# -- exactness certificates -------------------------------------------------

@dataclass(frozen=True)
class ExactnessReport:
    injective: bool
    exact_middle: bool
    surjective: bool

    @property
    def ok(self) -> bool:
        return self.injective and self.exact_middle and self.surjective


def short_exact_report(incoming: FreeMatrix, outgoing: FreeMatrix,
                       target_relations: FreeMatrix | None = None) -> ExactnessReport:
    """Check ``0 -> A^a -> A^b -> A^c / R -> 0`` at each spot.

    ``incoming`` is ``b x a``, ``outgoing`` is ``c x b`` and ``R`` (``c x k``)
    presents the target; ``None`` means the target is free.
    """
    ctx = outgoing.ring
    c = outgoing.rows
    R = target_relations if target_relations is not None else FreeMatrix(ctx, c, 0)
    big = FreeMatrix.block_sized(ctx, [[outgoing, R]], [c], [outgoing.cols, R.cols])
    injective = syzygy_basis(incoming, ctx).cols == 0
    surjective = all(
        submodule_membership([ctx.one if i == k else ctx.zero for i in range(c)], big, ctx).member
        for k in range(c)
    )
    S = syzygy_basis(big, ctx)
    K = S.submatrix(range(outgoing.cols), range(S.cols))
    comp = outgoing @ incoming
    exact = all(submodule_membership(col, R, ctx).member for col in comp.columns()) and all(
        submodule_membership(col, incoming, ctx).member for col in K.columns()
    )
    return ExactnessReport(injective, exact, surjective)
