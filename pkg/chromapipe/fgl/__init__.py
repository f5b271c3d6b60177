from .series import (
    Series,
    make_series,
    at_stage,
    zero_series,
    one_series,
    variable,
    from_coefficients,
    series_mul,
    substitute,
    compose,
    comp_inverse,
    pushforward_series,
    map_coefficients,
    render_series,
)
from .hazewinkel import hazewinkel_law, hazewinkel_log_coefficients, reduce_fraction
from .laws import (
    FGL,
    INFINITE_HEIGHT,
    additive,
    multiplicative,
    honda,
    standard_fgl,
    hazewinkel_deformation,
    formal_sum,
    p_series,
    fgl_validate,
    conjugate,
    pushforward,
    reduce_mod_ideal,
    height,
    check_star,
    check_lt_coordinate,
)

__all__ = [
    "Series",
    "make_series",
    "at_stage",
    "zero_series",
    "one_series",
    "variable",
    "from_coefficients",
    "series_mul",
    "substitute",
    "compose",
    "comp_inverse",
    "pushforward_series",
    "map_coefficients",
    "render_series",
    "hazewinkel_law",
    "hazewinkel_log_coefficients",
    "reduce_fraction",
    "FGL",
    "INFINITE_HEIGHT",
    "additive",
    "multiplicative",
    "honda",
    "standard_fgl",
    "hazewinkel_deformation",
    "formal_sum",
    "p_series",
    "fgl_validate",
    "conjugate",
    "pushforward",
    "reduce_mod_ideal",
    "height",
    "check_star",
    "check_lt_coordinate",
]
