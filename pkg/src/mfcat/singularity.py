"""The cokernel functor to modules over ``A/(W)`` and 2-periodic resolutions."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra.modules import ModulePresentation, module_homology
from .algebra.ring import RingContext
from .mf.core import MatFac


@dataclass(frozen=True)
class HypersurfaceModule:
    ring: RingContext  # A / (I + W)
    presentation: ModulePresentation

    def to_json(self) -> dict:
        out = {"ring": str(self.ring)}
        out.update(self.presentation.to_json())
        return out


def hypersurface_ring(E: MatFac) -> RingContext:
    return E.ctx.quotient(E.W)


def cokernel_module(E: MatFac, prune: bool = True) -> HypersurfaceModule:
    """``coker(e1)`` as a module over ``B = A/(W)``."""
    B = hypersurface_ring(E)
    rel = E.e1.over(B)
    return HypersurfaceModule(B, ModulePresentation.cokernel(rel, prune=prune))


@dataclass(frozen=True)
class PeriodicVerdict:
    passed: bool
    steps: int
    spots_checked: int
    first_failing_spot: int | None = None
    homology: str | None = None

    def to_json(self) -> dict:
        out = {"pass": self.passed, "steps": self.steps, "spots_checked": self.spots_checked}
        if not self.passed:
            out["first_failing_spot"] = self.first_failing_spot
            out["homology"] = self.homology
        return out


def periodic_resolution_check(E: MatFac, steps: int = 3) -> PeriodicVerdict:
    """Exactness of ``... -> E1 -> E0 -> E1 -> E0 -> coker -> 0`` reduced mod ``W``.

    The complex has ``2 * steps`` free terms ``F_{2n-1} -> ... -> F_0`` with
    ``F_k = E_(k mod 2)``; homology is checked at ``F_1 .. F_{2n-2}``.  Spots of
    equal parity carry the same homology module, computed once.
    """
    if steps < 2:
        raise ValueError("steps must be at least 2")
    B = hypersurface_ring(E)
    e1, e0 = E.e1.over(B), E.e0.over(B)
    # at F_k, k odd: ker(e1) / im(e0); k even: ker(e0) / im(e1)
    cache = {}
    spots = list(range(1, 2 * steps - 1))
    for k in spots:
        par = k % 2
        if par not in cache:
            if par:
                cache[par] = module_homology(e0, e1, B)
            else:
                cache[par] = module_homology(e1, e0, B)
        H = cache[par]
        if not H.is_zero():
            return PeriodicVerdict(False, steps, len(spots), k, str(H))
    return PeriodicVerdict(True, steps, len(spots))
