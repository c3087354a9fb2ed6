"""Exact arithmetic: field towers, polynomials over F_q, and Z[zeta_p]."""

from .cyclo import CycloElem
from .fields import (
    EnumContext,
    ExtensionField,
    FieldTower,
    PrimeField,
    additive_character,
    build_tower,
    middle_field,
    minimal_poly,
    poly_eval,
    prime_field,
    trace_to_prime,
)
from . import polys

__all__ = [
    "CycloElem",
    "EnumContext",
    "ExtensionField",
    "FieldTower",
    "PrimeField",
    "additive_character",
    "build_tower",
    "middle_field",
    "minimal_poly",
    "poly_eval",
    "polys",
    "prime_field",
    "trace_to_prime",
]
