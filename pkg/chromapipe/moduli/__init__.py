from .deformation import (
    StagedDeformation,
    versal,
    gamma,
    connecting_map,
    declared_heights,
    validate_deformation,
    from_stage_zero,
    tautological_deformation,
    twisted_deformation,
    height_mismatch_fixture,
    random_twist,
)
from .coordinates import CoordinateChange, extend_map, check_lubin_tate, change_coordinates
from .classify import Linearization, SolveStep, ClassifyingMap, linearization, classify

__all__ = [
    "StagedDeformation",
    "versal",
    "gamma",
    "connecting_map",
    "declared_heights",
    "validate_deformation",
    "from_stage_zero",
    "tautological_deformation",
    "twisted_deformation",
    "height_mismatch_fixture",
    "random_twist",
    "CoordinateChange",
    "extend_map",
    "check_lubin_tate",
    "change_coordinates",
    "Linearization",
    "SolveStep",
    "ClassifyingMap",
    "linearization",
    "classify",
]
