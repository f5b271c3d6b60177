from .graph import (
    POINT,
    PRIME,
    FAMILY,
    GENERIC,
    PortraitNode,
    PortraitGraph,
    contains,
    as_digraph,
    build_portrait,
    saturate,
    localize_action,
    chain_trace,
    complete_action,
)
from .examples import EXAMPLES, ExampleRing, example_ring, base_portrait, portrait_example
from .ideals import IdealSpec, PrimeFactor, parse_factor, factor_ideal, closure, divides
from .export import FORMATS, export_graph, export_digest
from .golden import GOLDENS, PortraitGolden, golden_portrait

__all__ = [
    "POINT",
    "PRIME",
    "FAMILY",
    "GENERIC",
    "PortraitNode",
    "PortraitGraph",
    "contains",
    "as_digraph",
    "build_portrait",
    "saturate",
    "localize_action",
    "chain_trace",
    "complete_action",
    "EXAMPLES",
    "ExampleRing",
    "example_ring",
    "base_portrait",
    "portrait_example",
    "IdealSpec",
    "PrimeFactor",
    "parse_factor",
    "factor_ideal",
    "closure",
    "divides",
    "FORMATS",
    "export_graph",
    "export_digest",
    "GOLDENS",
    "PortraitGolden",
    "golden_portrait",
]
