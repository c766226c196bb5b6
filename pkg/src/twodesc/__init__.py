"""Finite groupoid models of Galois 2-descent: validators, encodings, descent, oracles."""

from .descent import (DescendedGroupoid, base_change_torsor, descend, descend_morphism,
                      hom_descent_check, roundtrip_check)
from .descent_data import (CoverDescentDatum, DescentMorphism, GaloisDescentDatum,
                           action_to_descent, cover_to_galois, galois_to_cover,
                           validate_cover_datum, validate_descent_morphism, validate_galois_datum)
from .equivalence import are_equivalent, skeleton
from .groupoid import FiniteGroupoid, GroupoidFunctor, NatIso, validate_groupoid
from .groups import FiniteGroup, GroupAction
from .oracles import compare_with_descent, h1
from .report import InvalidInput, OverBudget, Report, StructuralError
from .weak_action import WeakAction, validate_weak_action

__version__ = "0.1.0"

__all__ = [
    "CoverDescentDatum", "DescendedGroupoid", "DescentMorphism", "FiniteGroup", "FiniteGroupoid",
    "GaloisDescentDatum", "GroupAction", "GroupoidFunctor", "InvalidInput", "NatIso", "OverBudget",
    "Report", "StructuralError", "WeakAction", "action_to_descent", "are_equivalent",
    "base_change_torsor", "compare_with_descent", "cover_to_galois", "descend", "descend_morphism",
    "galois_to_cover", "h1", "hom_descent_check", "roundtrip_check", "skeleton",
    "validate_cover_datum", "validate_descent_morphism", "validate_galois_datum",
    "validate_groupoid", "validate_weak_action",
]
