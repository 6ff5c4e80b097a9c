"""Equivariant l-adic sheaves on finite Galois sets, modelled exactly over cyclotomic fields."""

from .arith import BaseField, GaloisGSet, Morphism, WeilLevelGroup, point_hom
from .compat import CompatSystem, check_compatibility, check_compatibility_truncated
from .cyclotomic import CycloElem, CycloMatrix, FieldAut
from .descent import build_descent, descent_criterion, scholie_check, untwist
from .groups import FiniteGroup, GroupHom, RightGSet
from .manifest import Manifest, ManifestError, parse_manifest
from .reps import WeilRep
from .sheaves import EquivariantSheaf, VirtualClass

__version__ = "0.1.0"

__all__ = [
    "BaseField",
    "CompatSystem",
    "CycloElem",
    "CycloMatrix",
    "EquivariantSheaf",
    "FieldAut",
    "FiniteGroup",
    "GaloisGSet",
    "GroupHom",
    "Manifest",
    "ManifestError",
    "Morphism",
    "RightGSet",
    "VirtualClass",
    "WeilLevelGroup",
    "WeilRep",
    "build_descent",
    "check_compatibility",
    "check_compatibility_truncated",
    "descent_criterion",
    "parse_manifest",
    "point_hom",
    "scholie_check",
    "untwist",
]
