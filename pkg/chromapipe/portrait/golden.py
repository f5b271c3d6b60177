# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

"""Hand-encoded portraits of the example rings and two closures in k[[x,y]], written by label at depth 4."""

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

from chromapipe.types import UnknownExample

GOLDEN_DEPTH = 4


@dataclass(frozen=True)
class PortraitGolden:
    """Expected labels with levels; edges as (smaller, containing) label pairs, None for closure patterns."""
    ring: str
    nodes: Dict[str, int]
    edges: Optional[FrozenSet[Tuple[str, str]]] = None
    factors: Tuple[Tuple[str, int], ...] = ()


def _powers(prime: str) -> List[str]:
    return [f"({prime})"] + [f"({prime}^{j})" for j in range(2, GOLDEN_DEPTH + 1)]


def _chain_edges(chain: List[str]) -> set:
    return {(chain[k], chain[j]) for k in range(len(chain)) for j in range(k)}


def _x_chain_with_generic(ring: str, level: int) -> PortraitGolden:
    chain = _powers("x")
    nodes = {label: level for label in chain}
    nodes["(0)"] = level + 1
    edges = _chain_edges(chain) | {("(0)", label) for label in chain}
    return PortraitGolden(ring, nodes, frozenset(edges))


def _plane() -> PortraitGolden:
    point = ["(x,y)"] + [f"(x,y)^{j}" for j in range(2, GOLDEN_DEPTH + 1)]
    family = ["I"] + [f"I^{j}" for j in range(2, GOLDEN_DEPTH + 1)]
    nodes = {label: -1 for label in point}
    edges = _chain_edges(point)
    for chain in (_powers("x"), _powers("y"), family):
        nodes.update({label: 0 for label in chain})
        edges |= _chain_edges(chain)
        # the k-th power of an order one prime lies in the k-th power of the closed point
        edges |= {(chain[k], point[j]) for k in range(GOLDEN_DEPTH) for j in range(k + 1)}
    nodes["(0)"] = 1
    edges |= {("(0)", label) for label in nodes if label != "(0)"}
    return PortraitGolden("kxy", nodes, frozenset(edges))


def _closure_of_y_cubed() -> PortraitGolden:
    nodes = {"(x,y)": -1, "(x,y)^2": -1, "(x,y)^3": -1, "(y)": 0, "(y^2)": 0, "(y^3)": 0}
    return PortraitGolden("kxy", nodes, factors=(("y", 3),))


def _closure_of_mixed() -> PortraitGolden:
    nodes = {"(x,y)": -1, "(x,y)^2": -1, "(x,y)^3": -1, "(x,y)^4": -1}
    nodes.update({"(x)": 0, "(x^2)": 0, "(x^3)": 0, "(x+y)": 0, "((x+y)^2)": 0, "(y)": 0})
    return PortraitGolden("kxy", nodes, factors=(("x", 3), ("x+y", 2), ("y", 1)))


GOLDENS = {
    "kxx": lambda: _x_chain_with_generic("kxx", -1),
    "kx_laurent": lambda: PortraitGolden("kx_laurent", {"(0)": 1}, frozenset()),
    "kxy": _plane,
    "kxy_inv_y_hat_x": lambda: _x_chain_with_generic("kxy_inv_y_hat_x", 1),
    "closure_y3": _closure_of_y_cubed,
    "closure_x3_xy2_y": _closure_of_mixed,
}


def golden_portrait(name: str) -> PortraitGolden:
    """
    Raises:
        UnknownExample: name has no encoded golden.
    """
    try:
        return GOLDENS[name]()
    except KeyError:
        raise UnknownExample(f"no golden named {name!r}") from None
