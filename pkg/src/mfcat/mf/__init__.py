"""Matrix factorizations and functors on them."""

from .core import (
    MatFac,
    MFComplex,
    MFMorphism,
    Potential,
    RingMap,
    base_change,
    cone,
    cone_maps,
    direct_sum,
    g_plus,
    make_mf,
    make_morphism,
    shift,
    totalize,
    unit_contraction,
    zero_object,
)
from .ops import dual, external_tensor, hom_mf, koszul_factorization, tensor

__all__ = [
    "Potential", "MatFac", "MFMorphism", "MFComplex", "RingMap",
    "make_mf", "make_morphism", "zero_object", "shift", "totalize", "cone", "cone_maps",
    "direct_sum", "g_plus", "base_change", "unit_contraction",
    "tensor", "hom_mf", "dual", "external_tensor", "koszul_factorization",
]
