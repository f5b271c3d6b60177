from .rings import (
    FiniteRingObj,
    from_galois,
    integers_mod,
    zero_ring,
    truncated_poly,
    product as ring_product,
    sub,
    additive_closure,
    is_injective,
    is_surjective,
    is_ring_map,
    is_additive_map,
)
from .diagrams import (
    PRO,
    IND,
    PipeDiagram,
    PipeMap,
    Realization,
    Cofineified,
    LevelInclusion,
    realize,
    realize_map,
    is_bijective_at,
    check_fine,
    check_cofine,
    check_commutes,
    check_product,
    cofineify0,
    include_level,
    product,
    projection,
    levelwise_constant,
)
from .examples import (
    ClogExample,
    clog_example,
    pro_system,
    integer_tower,
    power_series_tower,
    zero_map_system,
    zero_inclusion_system,
    shift_ind_system,
    quotient_ind_system,
    constant_diagram,
    sample_diagrams,
    sample_pairs,
)
from .rigid import RigidPresentation, rigid_tower, rigid_quotient

__all__ = [
    "FiniteRingObj",
    "from_galois",
    "integers_mod",
    "zero_ring",
    "truncated_poly",
    "ring_product",
    "sub",
    "additive_closure",
    "is_injective",
    "is_surjective",
    "is_ring_map",
    "is_additive_map",
    "PRO",
    "IND",
    "PipeDiagram",
    "PipeMap",
    "Realization",
    "Cofineified",
    "LevelInclusion",
    "realize",
    "realize_map",
    "is_bijective_at",
    "check_fine",
    "check_cofine",
    "check_commutes",
    "check_product",
    "cofineify0",
    "include_level",
    "product",
    "projection",
    "levelwise_constant",
    "ClogExample",
    "clog_example",
    "pro_system",
    "integer_tower",
    "power_series_tower",
    "zero_map_system",
    "zero_inclusion_system",
    "shift_ind_system",
    "quotient_ind_system",
    "constant_diagram",
    "sample_diagrams",
    "sample_pairs",
    "RigidPresentation",
    "rigid_tower",
    "rigid_quotient",
]
