"""Matrix factorizations, their morphisms, and the basic constructions.

A factorization ``E`` of ``W`` has free components ``E1`` (odd) and ``E0``
(even) of ranks ``rank1`` and ``rank0``, with ``e1: E1 -> E0`` and
``e0: E0 -> E1`` such that both composites are ``W`` times the identity.
The text notation ``{a; b}`` means ``e1 = a`` and ``e0 = b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra.matrix import FreeMatrix
from ..algebra.modules import submodule_membership
from ..algebra.ring import Poly, RingContext
from ..errors import (
    IllDefinedRingMap,
    MFError,
    NotAFactorization,
    NotClosed,
    PotentialMismatch,
    PotentialNotUnit,
    RingMismatch,
)


@dataclass(frozen=True)
class Potential:
    ctx: RingContext
    W: Poly

    def __post_init__(self):
        object.__setattr__(self, "W", self.ctx(self.W))

    @classmethod
    def of(cls, ctx: RingContext, W) -> Potential:
        return cls(ctx, ctx(W))

    def is_zero(self) -> bool:
        return not self.W.terms

    def inverse(self) -> Poly | None:
        """``W^-1`` in the ring if ``W`` is a unit, else ``None``."""
        c = self.W.constant_value()
        if c is not None:
            return self.ctx.const(self.ctx.field.inv(c)) if c else None
        if not self.ctx.has_ideal:
            return None
        res = submodule_membership(self.ctx.one, [self.W], self.ctx)
        return res.coeffs[0] if res.member else None

    def is_unit(self) -> bool:
        return self.inverse() is not None

    def __neg__(self) -> Potential:
        return Potential(self.ctx, -self.W)

    def __add__(self, other: Potential) -> Potential:
        if other.ctx != self.ctx:
            raise RingMismatch(f"{self.ctx} vs {other.ctx}")
        return Potential(self.ctx, self.W + other.W)

    def __sub__(self, other: Potential) -> Potential:
        return self + (-other)

    def __str__(self):
        return str(self.W)


class MatFac:
    """A matrix factorization ``(E1, e1, E0, e0)`` of ``pot``; validated on construction."""

    __slots__ = ("pot", "rank1", "rank0", "e1", "e0")

    def __init__(self, pot: Potential, e1: FreeMatrix, e0: FreeMatrix, validate: bool = True):
        ctx = pot.ctx
        if e1.ring != ctx or e0.ring != ctx:
            raise RingMismatch("matrices and potential live over different rings")
        if e1.rows != e0.cols or e1.cols != e0.rows:
            raise MFError(f"incompatible shapes e1 {e1.shape}, e0 {e0.shape}")
        self.pot = pot
        self.rank1 = e1.cols
        self.rank0 = e1.rows
        self.e1 = e1
        self.e0 = e0
        if validate:
            self.check()

    @property
    def ctx(self) -> RingContext:
        return self.pot.ctx

    @property
    def W(self) -> Poly:
        return self.pot.W

    def rank(self, parity: int) -> int:
        return self.rank0 if parity % 2 == 0 else self.rank1

    def e(self, parity: int) -> FreeMatrix:
        """The differential leaving the component of the given parity."""
        return self.e0 if parity % 2 == 0 else self.e1

    def check(self) -> None:
        """Raise :class:`NotAFactorization` unless both composites equal ``W * id``."""
        ctx = self.ctx
        for name, prod, n in (("e0*e1", self.e0 @ self.e1, self.rank1),
                              ("e1*e0", self.e1 @ self.e0, self.rank0)):
            want = FreeMatrix.identity(ctx, n, self.W)
            diff = prod.first_difference(want)
            if diff is not None:
                i, j, got, exp = diff
                raise NotAFactorization(
                    f"{name} entry ({i},{j}) is {got}, expected {exp}",
                    entry=(name, i, j, str(got)),
                )

    def is_valid(self) -> bool:
        try:
            self.check()
        except NotAFactorization:
            return False
        return True

    def __eq__(self, other):
        if not isinstance(other, MatFac):
            return NotImplemented
        return self.pot == other.pot and self.e1 == other.e1 and self.e0 == other.e0

    def __hash__(self):
        return hash((self.pot, self.e1, self.e0))

    def to_json(self) -> dict:
        return {
            "ring": str(self.ctx),
            "W": str(self.W),
            "e1": self.e1.to_lists(),
            "e0": self.e0.to_lists(),
        }

    def __str__(self):
        return f"MF[{self.rank1}|{self.rank0}]{{e1={self.e1}; e0={self.e0}}} of {self.W}"

    __repr__ = __str__


def make_mf(pot: Potential, e1, e0) -> MatFac:
    """Validated factorization from matrices (or nested lists of entries)."""
    ctx = pot.ctx
    if not isinstance(e1, FreeMatrix):
        e1 = FreeMatrix.from_rows(ctx, e1)
    if not isinstance(e0, FreeMatrix):
        e0 = FreeMatrix.from_rows(ctx, e0)
    if e1.rows == 0 and e1.cols == 0 and e0.rows + e0.cols:
        e1 = FreeMatrix(ctx, e0.cols, e0.rows)
    if e0.rows == 0 and e0.cols == 0 and e1.rows + e1.cols:
        e0 = FreeMatrix(ctx, e1.cols, e1.rows)
    return MatFac(pot, e1, e0)


def zero_object(pot: Potential) -> MatFac:
    ctx = pot.ctx
    return MatFac(pot, FreeMatrix(ctx, 0, 0), FreeMatrix(ctx, 0, 0))


def _same_pot(a: MatFac, b: MatFac):
    if a.ctx != b.ctx:
        raise RingMismatch(f"{a.ctx} vs {b.ctx}")
    if a.pot != b.pot:
        raise PotentialMismatch(f"{a.W} vs {b.W}")


# -- morphisms ---------------------------------------------------------------

class MFMorphism:
    """A homogeneous map ``source -> target`` of parity ``degree``.

    ``on0`` is the component with source ``E0`` and ``on1`` the one with
    source ``E1``; for degree 0 these are ``f0`` and ``f1``, for degree 1 they
    are ``f01: E0 -> E'1`` and ``f10: E1 -> E'0``.
    """

    __slots__ = ("source", "target", "degree", "on0", "on1")

    def __init__(self, source: MatFac, target: MatFac, degree: int, on0: FreeMatrix, on1: FreeMatrix):
        if source.ctx != target.ctx:
            raise RingMismatch("source and target over different rings")
        degree %= 2
        ctx = source.ctx
        if not isinstance(on0, FreeMatrix):
            on0 = FreeMatrix(ctx, target.rank(degree), source.rank0, on0)
        if not isinstance(on1, FreeMatrix):
            on1 = FreeMatrix(ctx, target.rank(degree + 1), source.rank1, on1)
        if on0.shape != (target.rank(degree), source.rank0):
            raise MFError(f"component on E0 has shape {on0.shape}, expected "
                          f"{(target.rank(degree), source.rank0)}")
        if on1.shape != (target.rank(degree + 1), source.rank1):
            raise MFError(f"component on E1 has shape {on1.shape}, expected "
                          f"{(target.rank(degree + 1), source.rank1)}")
        self.source = source
        self.target = target
        self.degree = degree
        self.on0 = on0
        self.on1 = on1

    # named views
    @property
    def f0(self):
        return self.on0 if self.degree == 0 else None

    @property
    def f1(self):
        return self.on1 if self.degree == 0 else None

    @property
    def f01(self):
        return self.on0 if self.degree == 1 else None

    @property
    def f10(self):
        return self.on1 if self.degree == 1 else None

    def component(self, parity: int) -> FreeMatrix:
        return self.on0 if parity % 2 == 0 else self.on1

    @classmethod
    def identity(cls, E: MatFac) -> MFMorphism:
        ctx = E.ctx
        return cls(E, E, 0, FreeMatrix.identity(ctx, E.rank0), FreeMatrix.identity(ctx, E.rank1))

    @classmethod
    def zero(cls, source: MatFac, target: MatFac, degree: int = 0) -> MFMorphism:
        ctx = source.ctx
        return cls(source, target, degree,
                   FreeMatrix(ctx, target.rank(degree), source.rank0),
                   FreeMatrix(ctx, target.rank(degree + 1), source.rank1))

    def _compatible(self, other: MFMorphism):
        if (other.source, other.target, other.degree) != (self.source, self.target, self.degree):
            raise MFError("morphisms are not parallel")

    def __add__(self, other: MFMorphism) -> MFMorphism:
        self._compatible(other)
        return MFMorphism(self.source, self.target, self.degree, self.on0 + other.on0, self.on1 + other.on1)

    def __neg__(self) -> MFMorphism:
        return MFMorphism(self.source, self.target, self.degree, -self.on0, -self.on1)

    def __sub__(self, other: MFMorphism) -> MFMorphism:
        return self + (-other)

    def scale(self, c) -> MFMorphism:
        return MFMorphism(self.source, self.target, self.degree, self.on0.scale(c), self.on1.scale(c))

    def __matmul__(self, other: MFMorphism) -> MFMorphism:
        """Composition ``self o other``."""
        if other.target != self.source:
            raise MFError("composition: target of the right factor is not the source of the left")
        deg = (self.degree + other.degree) % 2
        c0 = self.component(other.degree) @ other.on0
        c1 = self.component(other.degree + 1) @ other.on1
        return MFMorphism(other.source, self.target, deg, c0, c1)

    def differential(self) -> MFMorphism:
        """``d(f) = e' o f - (-1)^|f| f o e``."""
        E, F = self.source, self.target
        if E.pot != F.pot:
            raise PotentialMismatch(f"{E.W} vs {F.W}")
        k = self.degree
        sign = -1 if k == 0 else 1
        parts = []
        for a in (0, 1):
            t = F.e(a + k) @ self.component(a)
            s = self.component(a + 1) @ E.e(a)
            parts.append(t - s if sign == -1 else t + s)
        return MFMorphism(E, F, k + 1, parts[0], parts[1])

    def is_closed(self) -> bool:
        d = self.differential()
        return d.on0.is_zero() and d.on1.is_zero()

    def is_zero(self) -> bool:
        return self.on0.is_zero() and self.on1.is_zero()

    def __eq__(self, other):
        if not isinstance(other, MFMorphism):
            return NotImplemented
        return (self.degree == other.degree and self.source == other.source
                and self.target == other.target and self.on0 == other.on0 and self.on1 == other.on1)

    def __hash__(self):
        return hash((self.degree, self.on0, self.on1))

    def to_json(self) -> dict:
        if self.degree == 0:
            return {"degree": 0, "f0": self.on0.to_lists(), "f1": self.on1.to_lists()}
        return {"degree": 1, "f10": self.on1.to_lists(), "f01": self.on0.to_lists()}

    def __str__(self):
        if self.degree == 0:
            return f"(f0={self.on0}, f1={self.on1})"
        return f"(f10={self.on1}, f01={self.on0})"

    __repr__ = __str__


def make_morphism(source: MatFac, target: MatFac, degree: int = 0, *, f0=None, f1=None,
                  f10=None, f01=None) -> MFMorphism:
    ctx = source.ctx

    def mat(m, rows, cols):
        if m is None:
            return FreeMatrix(ctx, rows, cols)
        return m if isinstance(m, FreeMatrix) else FreeMatrix.from_rows(ctx, m) if rows and cols \
            else FreeMatrix(ctx, rows, cols)

    if degree % 2 == 0:
        return MFMorphism(source, target, 0, mat(f0, target.rank0, source.rank0),
                          mat(f1, target.rank1, source.rank1))
    return MFMorphism(source, target, 1, mat(f01, target.rank1, source.rank0),
                      mat(f10, target.rank0, source.rank1))


def require_closed(phi: MFMorphism) -> None:
    d = phi.differential()
    if not d.is_zero():
        comp, m = ("E0", d.on0) if not d.on0.is_zero() else ("E1", d.on1)
        raise NotClosed(f"d(phi) is nonzero on {comp}: {m}")


# -- shift, sums, cones, totalization -------------------------------------

def shift(E: MatFac) -> MatFac:
    """``[1]E = (E0, -e0, E1, -e1)``."""
    return MatFac(E.pot, -E.e0, -E.e1, validate=False)


def shift_morphism(phi: MFMorphism) -> MFMorphism:
    """``[1]phi`` between the shifted objects; components swap places."""
    return MFMorphism(shift(phi.source), shift(phi.target), phi.degree, phi.on1, phi.on0)


def direct_sum(E: MatFac, F: MatFac) -> MatFac:
    _same_pot(E, F)
    ctx = E.ctx
    e1 = FreeMatrix.block_sized(ctx, [[E.e1, None], [None, F.e1]], [E.rank0, F.rank0], [E.rank1, F.rank1])
    e0 = FreeMatrix.block_sized(ctx, [[E.e0, None], [None, F.e0]], [E.rank1, F.rank1], [E.rank0, F.rank0])
    return MatFac(E.pot, e1, e0)


@dataclass
class MFComplex:
    """Bounded complex ``F^start -> ... -> F^(start+len-1)`` of factorizations."""

    objects: list
    differentials: list
    start: int = 0
    _checked: bool = field(default=False, repr=False)

    def __post_init__(self):
        if len(self.differentials) != max(len(self.objects) - 1, 0):
            raise MFError("need exactly one differential between consecutive objects")
        pots = {F.pot for F in self.objects}
        if len(pots) > 1:
            raise PotentialMismatch("all terms of a complex share one potential")
        for i, d in enumerate(self.differentials):
            if d.degree != 0 or d.source != self.objects[i] or d.target != self.objects[i + 1]:
                raise MFError(f"differential {self.start + i} has the wrong source, target or degree")
            require_closed(d)
        for i in range(len(self.differentials) - 1):
            comp = self.differentials[i + 1] @ self.differentials[i]
            if not comp.is_zero():
                raise MFError(f"d^{self.start + i + 1} o d^{self.start + i} is not zero")
        self._checked = True

    @property
    def degrees(self):
        return range(self.start, self.start + len(self.objects))


def totalize(C: MFComplex) -> MatFac:
    """Collapse a complex; ``F^i_j`` sits in total parity ``i + j``.

    Summands of each component are ordered by ascending complex degree, and
    the differential on ``F^i_j`` is ``d^i_j + (-1)^i f^i_j``.
    """
    if not C.objects:
        raise MFError("cannot totalize an empty complex")
    pot = C.objects[0].pot
    ctx = pot.ctx
    degs = list(C.degrees)
    objs = dict(zip(degs, C.objects))
    diffs = dict(zip(degs, C.differentials))

    # summands of total parity t: list of (i, j)
    summands = {t: [(i, (t - i) % 2) for i in degs] for t in (0, 1)}

    def size(i, j):
        return objs[i].rank(j)

    mats = {}
    for t in (0, 1):
        src, dst = summands[t], summands[1 - t]
        blocks = []
        for (i2, j2) in dst:
            row = []
            for (i, j) in src:
                blk = None
                if i2 == i + 1 and j2 == j and i in diffs:
                    blk = diffs[i].component(j)
                elif i2 == i and j2 == (j + 1) % 2:
                    blk = objs[i].e(j)
                    if i % 2:
                        blk = -blk
                row.append(blk)
            blocks.append(row)
        mats[t] = FreeMatrix.block_sized(ctx, blocks, [size(i, j) for i, j in dst],
                                         [size(i, j) for i, j in src])
    E = MatFac(pot, mats[1], mats[0], validate=False)
    E.check()
    return E


def cone(phi: MFMorphism) -> MatFac:
    """``Cone(phi)`` on ``E' + [1]E``: odd ``E'1 + E0``, even ``E'0 + E1``."""
    if phi.degree != 0:
        raise MFError("cone needs a degree-0 morphism")
    require_closed(phi)
    E, F = phi.source, phi.target
    _same_pot(E, F)
    ctx = E.ctx
    e1 = FreeMatrix.block_sized(ctx, [[F.e1, phi.on0], [None, -E.e0]],
                                [F.rank0, E.rank1], [F.rank1, E.rank0])
    e0 = FreeMatrix.block_sized(ctx, [[F.e0, phi.on1], [None, -E.e1]],
                                [F.rank1, E.rank0], [F.rank0, E.rank1])
    out = MatFac(E.pot, e1, e0, validate=False)
    out.check()
    return out


def cone_maps(phi: MFMorphism):
    """The canonical closed maps ``E' -> Cone(phi) -> [1]E``."""
    C = cone(phi)
    E, F = phi.source, phi.target
    ctx = E.ctx
    inc0 = FreeMatrix.block_sized(ctx, [[FreeMatrix.identity(ctx, F.rank0)], [None]],
                                  [F.rank0, E.rank1], [F.rank0])
    inc1 = FreeMatrix.block_sized(ctx, [[FreeMatrix.identity(ctx, F.rank1)], [None]],
                                  [F.rank1, E.rank0], [F.rank1])
    pr0 = FreeMatrix.block_sized(ctx, [[None, FreeMatrix.identity(ctx, E.rank1)]],
                                 [E.rank1], [F.rank0, E.rank1])
    pr1 = FreeMatrix.block_sized(ctx, [[None, FreeMatrix.identity(ctx, E.rank0)]],
                                 [E.rank0], [F.rank1, E.rank0])
    inc = MFMorphism(F, C, 0, inc0, inc1)
    pr = MFMorphism(C, shift(E), 0, pr0, pr1)
    return C, inc, pr


def g_plus(n0: int, n1: int, pot: Potential) -> MatFac:
    """``G+(N)`` for free ``N0, N1``: components ``N0 + N1`` with ``e0 = 1 + W``, ``e1 = W + 1``."""
    if n0 < 0 or n1 < 0:
        raise MFError("ranks must be nonnegative")
    ctx = pot.ctx
    W = pot.W
    e0 = FreeMatrix.diag(ctx, [ctx.one] * n0 + [W] * n1)
    e1 = FreeMatrix.diag(ctx, [W] * n0 + [ctx.one] * n1)
    return MatFac(pot, e1, e0)


# -- base change -------------------------------------------------------------

class RingMap:
    """``source -> target`` sending the i-th variable to ``images[i]``."""

    def __init__(self, source: RingContext, target: RingContext, images):
        if len(images) != source.nvars:
            raise MFError(f"need {source.nvars} images, got {len(images)}")
        self.source = source
        self.target = target
        self.images = [target(im) for im in images]
        for g in source.ideal_gb:
            img = g.substitute(self.images, target)
            if img.terms:
                raise IllDefinedRingMap(f"generator {g} maps to {img}, not 0", generator=str(g))

    @classmethod
    def from_dict(cls, source: RingContext, target: RingContext, assignment: dict) -> RingMap:
        images = []
        for v in source.variables:
            if v not in assignment:
                raise MFError(f"no image given for variable {v}")
            images.append(assignment[v])
        return cls(source, target, images)

    def __call__(self, f: Poly) -> Poly:
        f = self.source(f)
        return f.substitute(self.images, self.target)

    def matrix(self, M: FreeMatrix) -> FreeMatrix:
        return M.map(self, self.target)


def base_change(phi: RingMap, E: MatFac) -> MatFac:
    if E.ctx != phi.source:
        raise RingMismatch(f"object over {E.ctx}, map from {phi.source}")
    pot = Potential(phi.target, phi(E.W))
    return MatFac(pot, phi.matrix(E.e1), phi.matrix(E.e0))


def base_change_morphism(phi: RingMap, f: MFMorphism) -> MFMorphism:
    return MFMorphism(base_change(phi, f.source), base_change(phi, f.target), f.degree,
                      phi.matrix(f.on0), phi.matrix(f.on1))


# -- unit potentials ---------------------------------------------------------

def unit_contraction(E: MatFac) -> MFMorphism:
    """Odd ``h = (W^-1 e0, 0)`` with ``d(h) = id`` when ``W`` is a unit."""
    inv = E.pot.inverse()
    if inv is None:
        raise PotentialNotUnit(f"{E.W} is not a unit in {E.ctx}")
    ctx = E.ctx
    h = MFMorphism(E, E, 1, E.e0.scale(inv), FreeMatrix(ctx, E.rank0, E.rank1))
    if h.differential() != MFMorphism.identity(E):
        raise MFError("internal: d(h) differs from the identity")
    return h
