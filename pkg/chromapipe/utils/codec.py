# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

"""
JSON payloads for rings, elements, series, laws, diagrams, deformations and classifying maps.

`to_*` functions return plain dicts; `dumps` renders any payload byte-stably with sorted
keys and compact separators. Elements are written in fraction normal form:
{"stage": s, "denoms": {"u1": 2}, "terms": [{"e": [...], "c": [...]}]}.
"""

import json
from typing import Any, Dict, List, Optional

from chromapipe.coeff.galois import GaloisRing, GrElement, galois_ring
from chromapipe.fgl.laws import FGL
from chromapipe.fgl.series import Series, make_series
from chromapipe.moduli.classify import ClassifyingMap
from chromapipe.moduli.deformation import StagedDeformation
from chromapipe.staged.element import StagedElement, gen_name
from chromapipe.staged.ring import StagedRing, build_staged
from chromapipe.staged.spec import StagedRingSpec, TruncationProfile, validate_spec
from chromapipe.tower.diagrams import PipeDiagram
from chromapipe.tower.rings import FiniteRingObj


def dumps(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def loads(text: str) -> Any:
    """
    Raises:
        ValueError: text is not valid JSON.
    """
    return json.loads(text)


def galois_to_json(R: GaloisRing) -> Dict[str, Any]:
    return {"p": R.p, "a": R.a, "n": R.n, "f": list(R.f)}


def galois_from_json(data: Dict[str, Any]) -> GaloisRing:
    return galois_ring(int(data["p"]), int(data["a"]), int(data.get("n", 1)), data.get("f"))


def spec_to_json(spec: StagedRingSpec) -> Dict[str, Any]:
    prof = spec.profile
    out = galois_to_json(spec.R)
    out.update({"h": spec.h, "heights": list(spec.heights), "D": prof.D, "M": prof.M, "N": list(prof.N), "N_x": prof.N_x})
    return out


def spec_from_json(data: Dict[str, Any]) -> StagedRingSpec:
    """
    Raises:
        KeyError: a required field is missing.
        ValueError: the spec fails validation.
        BadHeights: the heights are not weakly decreasing in [0, h].
    """
    R = galois_from_json(data)
    profile = TruncationProfile(a=R.a, D=int(data["D"]), M=int(data["M"]), N=tuple(data["N"]), N_x=int(data["N_x"]))
    return validate_spec(StagedRingSpec(R=R, h=int(data["h"]), heights=tuple(data["heights"]), profile=profile))


def ring_from_json(data: Dict[str, Any]) -> StagedRing:
    return build_staged(spec_from_json(data))


def coefficient_to_json(c: GrElement) -> List[int]:
    return list(c.coeffs)


def element_to_json(x: StagedElement) -> Dict[str, Any]:
    inv = x.inverted()
    return {
        "stage": x.stage,
        "denoms": {gen_name(g): d for g, d in zip(inv, x.denoms) if d},
        "terms": [{"e": list(e), "c": coefficient_to_json(c)} for e, c in x.terms],
    }


def element_from_json(ring: StagedRing, data: Dict[str, Any]) -> StagedElement:
    """
    Raises:
        ValueError: a denominator names a generator not inverted at the stage.
    """
    stage = int(data.get("stage", 0))
    inv = ring.spec.inverted(stage)
    names = {gen_name(g): i for i, g in enumerate(inv)}
    denoms = [0] * len(inv)
    for name, d in data.get("denoms", {}).items():
        if name not in names:
            raise ValueError(f"{name} is not inverted at stage {stage}")
        denoms[names[name]] = int(d)
    n = ring.spec.n_gens
    terms: Dict[tuple, GrElement] = {}
    for t in data.get("terms", []):
        e = tuple(int(v) for v in t["e"])
        if len(e) != n:
            raise ValueError(f"exponent {list(e)} needs {n} entries")
        c = ring.spec.R.element(t["c"])
        terms[e] = terms[e] + c if e in terms else c
    return ring.element(terms, stage, denoms)


def series_to_json(S: Series) -> Dict[str, Any]:
    return {
        "stage": S.stage,
        "nvars": S.nvars,
        "nx": S.nx,
        "terms": [{"m": list(m), "c": element_to_json(c)} for m, c in S.terms],
    }


def series_from_json(ring: StagedRing, data: Dict[str, Any]) -> Series:
    stage = int(data["stage"])
    terms = {tuple(t["m"]): element_from_json(ring, t["c"]) for t in data["terms"]}
    return make_series(ring, stage, int(data["nvars"]), int(data["nx"]), terms)


def fgl_to_json(F: FGL) -> Dict[str, Any]:
    return {"name": F.name, "F": series_to_json(F.F)}


def fgl_from_json(ring: StagedRing, data: Dict[str, Any]) -> FGL:
    return FGL(series_from_json(ring, data["F"]), data.get("name", "F"))


def deformation_to_json(D: StagedDeformation) -> Dict[str, Any]:
    return {
        "name": D.name,
        "ring": spec_to_json(D.ring.spec),
        "heights": list(D.heights),
        "fgls": [fgl_to_json(F) for F in D.fgls],
    }


def deformation_from_json(data: Dict[str, Any]) -> StagedDeformation:
    ring = ring_from_json(data["ring"])
    fgls = tuple(fgl_from_json(ring, f) for f in data["fgls"])
    return StagedDeformation(ring=ring, fgls=fgls, heights=tuple(int(h) for h in data["heights"]), name=data.get("name", "D"))


def classifying_map_to_json(C: ClassifyingMap) -> Dict[str, Any]:
    return {
        "images": [[element_to_json(m.image_of(g)) for g in range(1, m.source.spec.n_gens + 1)] for m in C.maps],
        "phis": [series_to_json(phi) for phi in C.phis],
        "steps": [
            {"degree": s.degree, "monomials": s.monomials, "rank": s.rank, "unique": s.unique} for s in C.steps
        ],
        "free_columns": list(C.free_columns),
    }


def _ring_table(A: FiniteRingObj) -> Dict[str, Any]:
    idx = A.index_of
    els = A.elements
    return {
        "name": A.name,
        "size": A.size,
        "add": [[idx(A.add(x, y)) for y in els] for x in els],
        "mul": [[idx(A.mul(x, y)) for y in els] for x in els],
        "neg": [idx(A.neg(x)) for x in els],
        "zero": idx(A.zero),
        "one": None if A.one is None else idx(A.one),
    }


def _ring_from_table(data: Dict[str, Any]) -> FiniteRingObj:
    add, mul, neg = data["add"], data["mul"], data["neg"]
    return FiniteRingObj(
        name=data["name"],
        elements=tuple(range(int(data["size"]))),
        add=lambda x, y: add[x][y],
        mul=lambda x, y: mul[x][y],
        neg=lambda x: neg[x],
        zero=data["zero"],
        one=data["one"],
    )


def diagram_to_json(X: PipeDiagram, depth: Optional[int] = None) -> Dict[str, Any]:
    """Leaves as operation tables on element indices, structure maps as index lists, up to depth per axis."""
    depth = X.depth_bound if depth is None else min(depth, X.depth_bound)
    leaves, steps = [], []
    for index in X.indices(depth):
        A = X.leaf(index)
        leaves.append({"index": list(index), "ring": _ring_table(A)})
        for axis in range(X.axes):
            nxt = X.neighbor(axis, index)
            if not 0 <= nxt[axis] < depth:
                continue
            f, B = X.step(axis, index), X.leaf(nxt)
            steps.append({"axis": axis, "index": list(index), "map": [B.index_of(f(x)) for x in A.elements]})
    return {"name": X.name, "length": X.length, "depth": depth, "rigid": X.rigid, "leaves": leaves, "steps": steps}


def diagram_from_json(data: Dict[str, Any]) -> PipeDiagram:
    leaves = {tuple(item["index"]): _ring_from_table(item["ring"]) for item in data["leaves"]}
    steps = {(item["axis"], tuple(item["index"])): item["map"] for item in data["steps"]}
    return PipeDiagram(
        name=data["name"],
        length=int(data["length"]),
        depth_bound=int(data["depth"]),
        leaf_fn=lambda idx: leaves[tuple(idx)],
        step_fn=lambda axis, idx: (lambda x, table=steps[(axis, tuple(idx))]: table[x]),
        rigid=bool(data.get("rigid", False)),
    )
