# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

"""
Abbreviated portraits: one node per power of a closed prime, plus the generic point.

A node's closure is the set of nodes whose ideal contains it. Levels follow the dimension
of the quotient, shifted by one for every inverted generator, so a node's closure only
reaches nodes of equal or lower level.
"""

from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, List, Optional, Tuple

import bittensor as bt
import networkx as nx

POINT = "point"
PRIME = "prime"
FAMILY = "family"
GENERIC = "generic"


@dataclass(frozen=True, order=True)
class PortraitNode:
    """A power of the closed point, of a named prime, of the unlabeled prime family, or (0)."""
    kind: str
    prime: str = ""
    power: int = 0
    order: int = 1

    def label(self) -> str:
        if self.kind == GENERIC:
            return "(0)"
        if self.kind == FAMILY:
            return "I" if self.power == 1 else f"I^{self.power}"
        if self.kind == POINT:
            return f"({self.prime})" if self.power == 1 else f"({self.prime})^{self.power}"
        if self.power == 1:
            return f"({self.prime})"
        if self.prime.isalnum():
            return f"({self.prime}^{self.power})"
        return f"(({self.prime})^{self.power})"


def contains(b: PortraitNode, a: PortraitNode) -> bool:
    """Whether the ideal of b contains the ideal of a."""
    if a == b or a.kind == GENERIC:
        return True
    if b.kind == GENERIC:
        return False
    if b.kind == POINT:
        return b.power <= a.power * (1 if a.kind == POINT else a.order)
    return a.kind == b.kind and a.prime == b.prime and b.power <= a.power


def radical_contains(n: PortraitNode, gen: str) -> bool:
    """Whether some power of gen lies in the ideal of n."""
    if n.kind == POINT:
        return True
    return n.kind == PRIME and n.prime == gen


def base_level(n: PortraitNode, dim: int) -> int:
    """Krull dimension of the quotient, minus one."""
    if n.kind == POINT:
        return -1
    if n.kind == GENERIC:
        return dim - 1
    return dim - 2


@dataclass(frozen=True)
class PortraitGraph:
    """Nodes with level labels and transitively closed containment edges (smaller ideal, containing ideal)."""
    base: str
    variables: Tuple[str, ...]
    depth: int
    levels: Tuple[Tuple[PortraitNode, int], ...]
    edges: Tuple[Tuple[PortraitNode, PortraitNode], ...]
    inverted: Tuple[str, ...] = ()
    completed: Tuple[str, ...] = ()

    @property
    def name(self) -> str:
        out = self.base
        for g in self.inverted:
            out += f"[1/{g}]"
        for g in self.completed:
            out += f"^{g}"
        return out

    @property
    def nodes(self) -> Tuple[PortraitNode, ...]:
        return tuple(n for n, _ in self.levels)

    def level_of(self, n: PortraitNode) -> int:
        return dict(self.levels)[n]

    def closure_of(self, n: PortraitNode) -> FrozenSet[PortraitNode]:
        return frozenset({n} | {b for a, b in self.edges if a == n})

    def filtration(self, level: int) -> "PortraitGraph":
        """The subgraph of nodes at level <= the given one."""
        keep = {n for n, l in self.levels if l <= level}
        return _assemble(self, {n: l for n, l in self.levels if n in keep})

    def signature(self) -> Tuple[Dict[str, int], FrozenSet[Tuple[str, str]]]:
        """Labels with levels, and edges by label."""
        nodes = {n.label(): l for n, l in self.levels}
        edges = frozenset((a.label(), b.label()) for a, b in self.edges)
        return nodes, edges


def node_order(item: Tuple[PortraitNode, int]) -> Tuple[int, str]:
    return item[1], item[0].label()


def as_digraph(G: PortraitGraph) -> nx.DiGraph:
    D = nx.DiGraph()
    for n, level in G.levels:
        D.add_node(n, level=level)
    D.add_edges_from(G.edges)
    return D


def _closed_edges(nodes: Iterable[PortraitNode]) -> List[Tuple[PortraitNode, PortraitNode]]:
    nodes = list(nodes)
    D = nx.DiGraph()
    D.add_nodes_from(nodes)
    D.add_edges_from((a, b) for a in nodes for b in nodes if a != b and contains(b, a))
    D = nx.transitive_closure(D, reflexive=False)
    return sorted(D.edges, key=lambda e: (e[0].label(), e[1].label()))


def _assemble(
    like: PortraitGraph,
    levels: Dict[PortraitNode, int],
    inverted: Optional[Tuple[str, ...]] = None,
    completed: Optional[Tuple[str, ...]] = None,
) -> PortraitGraph:
    ordered = tuple(sorted(levels.items(), key=node_order))
    return PortraitGraph(
        base=like.base,
        variables=like.variables,
        depth=like.depth,
        levels=ordered,
        edges=tuple(_closed_edges(levels)),
        inverted=like.inverted if inverted is None else inverted,
        completed=like.completed if completed is None else completed,
    )


def build_portrait(base: str, variables: Tuple[str, ...], depth: int, nodes: Iterable[PortraitNode]) -> PortraitGraph:
    dim = len(variables)
    levels = {n: base_level(n, dim) for n in nodes}
    seed = PortraitGraph(base=base, variables=variables, depth=depth, levels=(), edges=())
    return _assemble(seed, levels)


def _identify(
    G: PortraitGraph,
    survivors: List[PortraitNode],
    key: Callable[[PortraitNode], Hashable],
    prefer: Callable[[PortraitNode], bool] = lambda n: False,
) -> Dict[PortraitNode, PortraitNode]:
    """Quotient of the survivors by equal keys; each class is sent to one representative."""
    H = as_digraph(G).subgraph(survivors)
    Q = nx.quotient_graph(H, lambda a, b: key(a) == key(b))
    rep = {}
    for block in Q.nodes:
        chosen = min(block, key=lambda n: (not prefer(n), n.label()))
        for n in block:
            rep[n] = chosen
    return rep


def saturate(G: PortraitGraph, n: PortraitNode, survivors: Iterable[PortraitNode]) -> FrozenSet[str]:
    """The surviving part of the union of closures of gen^k I: every survivor containing n."""
    return frozenset(b.label() for b in survivors if contains(b, n))


def localize_action(G: PortraitGraph, gen: str) -> PortraitGraph:
    """
    Invert gen: nodes whose radical contains gen become the unit ideal and are dropped,
    nodes with equal saturations are identified, and every level rises by one.
    """
    if gen not in G.variables:
        raise ValueError(f"{gen} is not a generator of {G.name}")
    if gen in G.inverted:
        return G
    survivors = [n for n in G.nodes if not radical_contains(n, gen)]
    rep = _identify(G, survivors, lambda n: saturate(G, n, survivors))
    levels = {r: G.level_of(r) + 1 for r in set(rep.values())}
    out = _assemble(G, levels, inverted=tuple(sorted(G.inverted + (gen,))))
    bt.logging.debug(f"localized {G.name} at {gen}: {len(G.levels)} -> {len(out.levels)} nodes")
    return out


def chain_trace(G: PortraitGraph, n: PortraitNode, gen: str) -> FrozenSet[str]:
    """Intersection of the closure of n with the gen-power chain; (0) also carries a limit marker."""
    trace = {c.label() for c in G.nodes if c.kind == PRIME and c.prime == gen and contains(c, n)}
    if n.kind == GENERIC:
        trace.add("*")
    return frozenset(trace)


def complete_action(G: PortraitGraph, gen: str) -> PortraitGraph:
    """
    Complete at (gen): closed sets with the same trace on the (gen)-chain are identified;
    an empty trace is the unit ideal and is dropped. Levels are unchanged.
    """
    if gen not in G.variables:
        raise ValueError(f"{gen} is not a generator of {G.name}")
    if gen in G.completed:
        return G
    survivors = [n for n in G.nodes if chain_trace(G, n, gen)]
    rep = _identify(
        G,
        survivors,
        lambda n: chain_trace(G, n, gen),
        prefer=lambda n: n.kind == PRIME and n.prime == gen,
    )
    levels = {r: G.level_of(r) for r in set(rep.values())}
    out = _assemble(G, levels, completed=tuple(sorted(G.completed + (gen,))))
    bt.logging.debug(f"completed {G.name} at {gen}: {len(G.levels)} -> {len(out.levels)} nodes")
    return out
