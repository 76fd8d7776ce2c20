"""Exact tools for clutters, blockers, tilde clutters and the polytope I(C)."""

from .core import (
    Clutter,
    blocker,
    blocking_number,
    contract,
    delete,
    has_packing_property,
    is_minimally_non_packing,
    is_minimum_transversal_covered,
    make_clutter,
    min_transversals,
    minimalize,
    minor,
    packing_number,
    packs,
    restrict,
    tilde,
)

__all__ = [
    "Clutter",
    "blocker",
    "blocking_number",
    "contract",
    "delete",
    "has_packing_property",
    "is_minimally_non_packing",
    "is_minimum_transversal_covered",
    "make_clutter",
    "min_transversals",
    "minimalize",
    "minor",
    "packing_number",
    "packs",
    "restrict",
    "tilde",
]
