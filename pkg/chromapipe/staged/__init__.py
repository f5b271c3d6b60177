from .spec import TruncationProfile, StagedRingSpec, check_heights, validate_spec, make_spec
from .element import (
    StagedElement,
    normalize,
    promote,
    elem_add,
    elem_neg,
    elem_sub,
    elem_mul,
    elem_sum,
    ideal_degree,
    part_of_degree,
    render_element,
)
from .ring import StagedRing, build_staged, try_invert, is_unit, elem_pow, weierstrass_split
from .maps import StagedMap, staged_map, identity_map, check_continuous, apply_staged_map, compose
from .realize import realize_staged, localization_diagram, check_realization

__all__ = [
    "TruncationProfile",
    "StagedRingSpec",
    "check_heights",
    "validate_spec",
    "make_spec",
    "StagedElement",
    "normalize",
    "promote",
    "elem_add",
    "elem_neg",
    "elem_sub",
    "elem_mul",
    "elem_sum",
    "ideal_degree",
    "part_of_degree",
    "render_element",
    "StagedRing",
    "build_staged",
    "try_invert",
    "is_unit",
    "elem_pow",
    "weierstrass_split",
    "StagedMap",
    "staged_map",
    "identity_map",
    "check_continuous",
    "apply_staged_map",
    "compose",
    "realize_staged",
    "localization_diagram",
    "check_realization",
]
