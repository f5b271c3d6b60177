# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

from dataclasses import dataclass
from typing import Dict, List, Tuple

import bittensor as bt

from chromapipe.portrait.graph import (
    FAMILY,
    GENERIC,
    POINT,
    PRIME,
    PortraitGraph,
    PortraitNode,
    build_portrait,
    complete_action,
    localize_action,
)
from chromapipe.types import UnknownExample
from chromapipe.utils.config import DEFAULT_PORTRAIT_DEPTH


@dataclass(frozen=True)
class ExampleRing:
    """A named example: its base power series ring, then generators inverted, then completions."""
    name: str
    display: str
    base: str
    inverted: Tuple[str, ...] = ()
    completed: Tuple[str, ...] = ()

    @property
    def variables(self) -> Tuple[str, ...]:
        return ("x",) if self.base == "kxx" else ("x", "y")


EXAMPLES: Dict[str, ExampleRing] = {
    "kxx": ExampleRing("kxx", "k[[x]]", "kxx"),
    "kx_laurent": ExampleRing("kx_laurent", "k((x))", "kxx", inverted=("x",)),
    "kxy": ExampleRing("kxy", "k[[x,y]]", "kxy"),
    "kxy_inv_y": ExampleRing("kxy_inv_y", "y^-1 k[[x,y]]", "kxy", inverted=("y",)),
    "kxy_inv_y_hat_x": ExampleRing("kxy_inv_y_hat_x", "(y^-1 k[[x,y]])^_(x)", "kxy", inverted=("y",), completed=("x",)),
}


def example_ring(name: str) -> ExampleRing:
    try:
        return EXAMPLES[name]
    except KeyError:
        raise UnknownExample(f"{name!r} is not one of {', '.join(sorted(EXAMPLES))}") from None


def _chain(kind: str, prime: str, depth: int) -> List[PortraitNode]:
    return [PortraitNode(kind, prime, j) for j in range(1, depth + 1)]


def base_portrait(base: str, depth: int) -> PortraitGraph:
    """k[[x]]: the (x)-chain and (0). k[[x,y]]: the closed point, (x), (y), a prime family I, and (0)."""
    if depth < 1:
        raise ValueError(f"depth={depth} must be at least 1")
    generic = PortraitNode(GENERIC)
    if base == "kxx":
        return build_portrait(base, ("x",), depth, _chain(PRIME, "x", depth) + [generic])
    if base == "kxy":
        nodes = _chain(POINT, "x,y", depth) + _chain(PRIME, "x", depth) + _chain(PRIME, "y", depth)
        nodes += _chain(FAMILY, "I", depth) + [generic]
        return build_portrait(base, ("x", "y"), depth, nodes)
    raise UnknownExample(f"no base ring {base!r}")


def portrait_example(name: str, depth: int = DEFAULT_PORTRAIT_DEPTH) -> PortraitGraph:
    """
    The abbreviated portrait of a named example ring, with powers drawn up to depth.

    Raises:
        UnknownExample: name is not an example ring.
    """
    ring = example_ring(name)
    G = base_portrait(ring.base, depth)
    for g in ring.inverted:
        G = localize_action(G, g)
    for g in ring.completed:
        G = complete_action(G, g)
    bt.logging.debug(f"portrait {name} at depth {depth}: {len(G.levels)} nodes, {len(G.edges)} edges")
    return G
