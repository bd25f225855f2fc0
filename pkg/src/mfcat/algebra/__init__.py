"""Exact polynomial and module arithmetic."""

from .field import FieldSpec
from .matrix import FreeMatrix
from .modules import (
    Membership,
    ModulePresentation,
    generic_rank,
    groebner_basis,
    module_homology,
    normal_form,
    submodule_membership,
    syzygy_basis,
)
from .parse import parse_poly
from .ring import Poly, RingContext

__all__ = [
    "FieldSpec",
    "RingContext",
    "Poly",
    "FreeMatrix",
    "ModulePresentation",
    "Membership",
    "groebner_basis",
    "normal_form",
    "syzygy_basis",
    "submodule_membership",
    "module_homology",
    "generic_rank",
    "parse_poly",
]
