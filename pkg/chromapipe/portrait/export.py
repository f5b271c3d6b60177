# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

import json
from typing import Dict, List

import xxhash

from chromapipe.portrait.graph import PortraitGraph, PortraitNode
from chromapipe.types import UnknownFormat

FORMATS = ("dot", "json")


def _index(G: PortraitGraph) -> Dict[PortraitNode, int]:
    # levels are stored sorted by (level, label)
    return {n: i for i, (n, _) in enumerate(G.levels)}


def _sorted_edges(G: PortraitGraph, index: Dict[PortraitNode, int]) -> List[List[int]]:
    return sorted([index[a], index[b]] for a, b in G.edges)


def to_dot(G: PortraitGraph) -> str:
    """One node per ideal class labelled label@level, grouped by level, edges toward the containing ideal."""
    index = _index(G)
    lines: List[str] = [f'digraph "{G.name}" {{', "\trankdir=BT;", "\tnode [shape=circle];"]
    append = lines.append
    for level in sorted({l for _, l in G.levels}):
        append("\t{")
        append("\t\trank = same;")
        for n, l in G.levels:
            if l == level:
                append(f'\t\tn{index[n]} [label="{n.label()}@{l}"];')
        append("\t}")
    for a, b in _sorted_edges(G, index):
        append(f"\tn{a} -> n{b};")
    append("}")
    return "\n".join(lines) + "\n"


def to_json(G: PortraitGraph) -> str:
    index = _index(G)
    payload = {
        "name": G.name,
        "depth": G.depth,
        "nodes": [{"id": index[n], "label": n.label(), "level": l} for n, l in G.levels],
        "edges": _sorted_edges(G, index),
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def export_graph(G: PortraitGraph, fmt: str) -> bytes:
    """
    Serialize a portrait deterministically.

    Raises:
        UnknownFormat: fmt is not dot or json.
    """
    if fmt == "dot":
        return to_dot(G).encode("utf-8")
    if fmt == "json":
        return to_json(G).encode("utf-8")
    raise UnknownFormat(f"{fmt!r} is not one of {', '.join(FORMATS)}")


def export_digest(data: bytes) -> str:
    return xxhash.xxh64(data).hexdigest()
