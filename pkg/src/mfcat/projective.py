"""Line bundles on projective space, folded Hom tables, and the Koszul complex."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .algebra.field import FieldSpec
from .algebra.matrix import FreeMatrix
from .algebra.modules import generic_rank, module_homology, syzygy_basis
from .algebra.ring import RingContext


@dataclass(frozen=True)
class CohTable:
    n: int
    d: int
    dims: tuple

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "dims": list(self.dims)}


def pn_line_cohomology(n: int, d: int) -> CohTable:
    """``h^i(P^n, O(d))`` for ``i = 0..n``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    dims = [0] * (n + 1)
    if d >= 0:
        dims[0] = comb(n + d, n)
    if d <= -n - 1:
        dims[n] = comb(-d - 1, n)
    return CohTable(n, d, tuple(dims))


@dataclass(frozen=True)
class FoldedHom:
    a: int
    b: int
    dim0: int
    dim1: int

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "dims": [self.dim0, self.dim1]}


def folded_hom_dims(n: int, a: int, b: int) -> FoldedHom:
    """Parity-folded ``Hom(O(a), O(b)[p])`` on ``P^n`` at ``W = 0``."""
    t = pn_line_cohomology(n, b - a).dims
    return FoldedHom(a, b, sum(t[0::2]), sum(t[1::2]))


@dataclass(frozen=True)
class ExceptionalTable:
    n: int
    twists: tuple
    folded: tuple  # folded[i][j] = (dim0, dim1) of Hom(O(twists[i]), O(twists[j]))
    passed: bool
    failure: str | None = None

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "twists": list(self.twists),
            "table": [[list(c) for c in row] for row in self.folded],
            "pass": self.passed,
        }
        if self.failure:
            out["failure"] = self.failure
        return out


def exceptional_collection_table(n: int, start: int | None = None) -> ExceptionalTable:
    """Hom table of ``O(start), ..., O(start + n)`` (default ``start = -n``) and a verdict."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if start is None:
        start = -n
    twists = tuple(range(start, start + n + 1))
    folded = []
    failure = None
    for a in twists:
        row = []
        for b in twists:
            h = pn_line_cohomology(n, b - a).dims
            row.append((sum(h[0::2]), sum(h[1::2])))
            if failure:
                continue
            if a > b and any(h):
                failure = f"Hom(O({a}), O({b})[*]) is nonzero: {h}"
            elif a <= b and any(h[1:]):
                failure = f"Hom(O({a}), O({b})[*]) has higher terms: {h}"
            elif a == b and h[0] != 1:
                failure = f"End(O({a})) has dimension {h[0]}"
        folded.append(tuple(row))
    return ExceptionalTable(n, twists, tuple(folded), failure is None, failure)


# -- Koszul complex -----------------------------------------------------------

def koszul_differentials(r: int, field: FieldSpec | None = None):
    """Ring ``k[y1..yr]`` and ``d_s: wedge^s -> wedge^(s-1)`` for ``s = 1..r``.

    Basis of ``wedge^s`` is the lexicographically sorted ``s``-subsets.
    """
    field = field or FieldSpec.rationals()
    S = RingContext(field, [f"y{i}" for i in range(1, r + 1)])
    ys = S.gens()
    subsets = {s: list(combinations(range(r), s)) for s in range(r + 1)}
    index = {s: {I: k for k, I in enumerate(subsets[s])} for s in range(r + 1)}
    diffs = {}
    for s in range(1, r + 1):
        rows, cols = len(subsets[s - 1]), len(subsets[s])
        grid = [[S.zero] * cols for _ in range(rows)]
        for j, I in enumerate(subsets[s]):
            for k, i in enumerate(I):
                J = I[:k] + I[k + 1:]
                grid[index[s - 1][J]][j] = ys[i] if k % 2 == 0 else -ys[i]
        diffs[s] = FreeMatrix(S, rows, cols, grid)
    return S, diffs


@dataclass
class KoszulKEResult:
    r: int
    passed: bool
    homology: list = field(default_factory=list)  # (s, krull_dim, k_dim)
    kernel_ranks: list = field(default_factory=list)
    expected_ranks: list = field(default_factory=list)
    failure: str | None = None

    def to_json(self) -> dict:
        out = {
            "r": self.r,
            "pass": self.passed,
            "homology": [{"s": s, "krull_dim": kd, "k_dim": k} for s, kd, k in self.homology],
            "kernel_ranks": self.kernel_ranks,
            "expected_ranks": self.expected_ranks,
        }
        if self.failure:
            out["failure"] = self.failure
        return out


def koszul_KE_check(r: int, seed: int = 0, field: FieldSpec | None = None) -> KoszulKEResult:
    """Homology of the Koszul complex on ``y1..yr`` and generic kernel ranks.

    Every homology module must have finite length (Krull dimension <= 0), and
    ``ker d_s`` must have generic rank ``C(r-1, s)`` for ``s = 1..r-1``.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    S, d = koszul_differentials(r, field)
    res = KoszulKEResult(r, True)
    for s in range(r + 1):
        n_s = comb(r, s)
        d_out = d[s] if s >= 1 else FreeMatrix(S, 0, n_s)
        d_in = d[s + 1] if s + 1 <= r else FreeMatrix(S, n_s, 0)
        H = module_homology(d_in, d_out, S)
        res.homology.append((s, H.krull_dim, H.k_dim))
        if H.krull_dim > 0 and res.passed:
            res.passed = False
            res.failure = f"homology at s={s} has Krull dimension {H.krull_dim}"
    for s in range(1, r):
        K = syzygy_basis(d[s], S)
        rk = generic_rank(K, seed=seed + s)
        res.kernel_ranks.append(rk)
        res.expected_ranks.append(comb(r - 1, s))
    if res.kernel_ranks != res.expected_ranks and res.passed:
        res.passed = False
        res.failure = f"kernel ranks {res.kernel_ranks} != {res.expected_ranks}"
    return res


def koszul_euler_check(r: int, bound: int) -> bool:
    """``sum_s (-1)^s C(r,s) dim S_(d-s)`` is 1 in degree 0 and 0 in degrees 1..bound."""
    def hilb(deg):
        return comb(deg + r - 1, r - 1) if deg >= 0 else 0

    for deg in range(bound + 1):
        chi = sum((-1) ** s * comb(r, s) * hilb(deg - s) for s in range(r + 1))
        if chi != (1 if deg == 0 else 0):
            return False
    return True
