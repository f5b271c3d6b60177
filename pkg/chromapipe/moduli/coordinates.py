# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Tuple

import bittensor as bt

from chromapipe.fgl.laws import check_lt_coordinate
from chromapipe.moduli.deformation import versal
from chromapipe.staged.element import StagedElement, ideal_degree, promote
from chromapipe.staged.maps import StagedMap, apply_staged_map, staged_map
from chromapipe.staged.ring import StagedRing, is_unit
from chromapipe.types import IdealEscape, MapUndefined, NotLubinTate, PrecisionExhausted


@dataclass(frozen=True)
class CoordinateChange:
    """Per-stage maps u_t -> v_t(u) and their inverses v_t -> u_t(v)."""
    forward: Tuple[StagedMap, ...]
    backward: Tuple[StagedMap, ...]


def extend_map(f: StagedMap, stage: int, target: Optional[StagedRing] = None, name: Optional[str] = None) -> StagedMap:
    """
    Extend f: X_(s-1) -> R_(s-1) through the localization and completion to X_s -> R_s.

    Raises:
        MapUndefined: the image of the newly inverted generator is not a unit in R_s.
        IdealEscape: a generator of I_(h_s) does not land in the stage ideal of R_s.
    """
    if f.source_stage != stage - 1:
        raise ValueError(f"{f.name} starts at stage {f.source_stage}, cannot extend to stage {stage}")
    target = target or f.target
    source_spec = f.source.spec
    images = {g: promote(f.image_of(g), stage) for g in range(1, source_spec.n_gens + 1)}
    m = staged_map(f.source, target, images, stage, stage, name=name or f"{f.name.rstrip('0123456789')}{stage}")
    fresh = [g for g in source_spec.inverted(stage) if g not in source_spec.inverted(stage - 1)]
    for g in fresh:
        img = m.image_of(g)
        if not is_unit(img):
            raise MapUndefined(f"{m.name}({'p' if g == 0 else f'u{g}'}) = {img} is not invertible", stage=stage)
    t = target.spec.height_at(stage)
    for g in range(0, t):
        img = m.image_of(g)
        if ideal_degree(img, t) < 1:
            raise IdealEscape(f"{m.name}({'p' if g == 0 else f'u{g}'}) = {img} is not in I_{t}", stage=stage)
    bt.logging.debug(f"extended {f.name} to stage {stage}")
    return m


def _coordinate_images(ring: StagedRing, v_images: Mapping[int, StagedElement]) -> Dict[int, StagedElement]:
    n = ring.spec.n_gens
    return {t: promote(v_images[t], 0) if t in v_images else ring.generator(t, 0) for t in range(1, n + 1)}


@lru_cache(maxsize=None)
def _versal_lt_failure(ring: StagedRing) -> Optional[str]:
    """First failing Lubin-Tate check of the versal law in the u coordinates, if any."""
    G = versal(ring, 0)
    for t in range(1, ring.spec.h):
        report = check_lt_coordinate(G, t)
        if not report.ok:
            return report.describe()
    return None


def check_lubin_tate(ring: StagedRing, v: Mapping[int, StagedElement]) -> None:
    """
    The versal law is Lubin-Tate for u, and v_t - u_t lies in I_t for every t, so
    (p, v_1, ..., v_(t-1)) = I_t and the law is Lubin-Tate for v as well.

    Raises:
        NotLubinTate: either condition fails.
    """
    for t in range(1, ring.spec.h):
        if v[t].stage != 0:
            raise NotLubinTate(f"v{t} must be given at stage 0", stage=0)
    failure = _versal_lt_failure(ring)
    if failure:
        raise NotLubinTate(failure, stage=0)
    for t in range(1, ring.spec.h):
        diff = v[t] - ring.generator(t, 0)
        if not diff.is_zero() and ideal_degree(diff, t) < 1:
            raise NotLubinTate(f"v{t} - u{t} = {diff} is not in I_{t}", stage=0)


def _invert_coordinates(ring: StagedRing, v: Mapping[int, StagedElement]) -> Dict[int, StagedElement]:
    """Solve u_t = v_t - c_t(u) by fixed-point iteration, c_t = v_t(u) - u_t."""
    n = ring.spec.n_gens
    c = {t: v[t] - ring.generator(t, 0) for t in range(1, n + 1)}
    E = {t: ring.generator(t, 0) for t in range(1, n + 1)}
    for _ in range(ring.series_bound()):
        sub = staged_map(ring, ring, E, 0, 0, name="E")
        nxt = {t: ring.generator(t, 0) - apply_staged_map(sub, c[t]) for t in range(1, n + 1)}
        if nxt == E:
            return E
        E = nxt
    raise PrecisionExhausted("coordinate inversion did not settle", stage=0)


def _check_inverse(forward: StagedMap, backward: StagedMap, stage: int) -> None:
    ring = forward.source
    samples: List[StagedElement] = [ring.generator(g, stage) for g in range(1, ring.spec.n_gens + 1)]
    samples += [ring.gen_power(g, -1, stage) for g in ring.spec.inverted(stage)]
    for x in samples:
        for a, b in ((forward, backward), (backward, forward)):
            if apply_staged_map(a, apply_staged_map(b, x)) != x:
                raise PrecisionExhausted(f"{a.name} o {b.name} moves {x} at this truncation", stage=stage)


def change_coordinates(ring: StagedRing, v_images: Mapping[int, StagedElement]) -> CoordinateChange:
    """
    Isomorphisms between the iterated localizations built from u and from v.

    Stage 0 sends u_t to v_t(u); each later stage is the extension through the inverted
    generator, whose image is inverted by the geometric series. The inverse maps send u_t
    to u_t(v), found by fixed-point iteration.

    Raises:
        NotLubinTate: v is not a Lubin-Tate coordinate system.
        PrecisionExhausted: an extension or the composite check fails at the truncation.
    """
    v = _coordinate_images(ring, v_images)
    check_lubin_tate(ring, v)
    u_of_v = _invert_coordinates(ring, v)
    forward = [staged_map(ring, ring, v, 0, 0, name="phi0")]
    backward = [staged_map(ring, ring, u_of_v, 0, 0, name="psi0")]
    _check_inverse(forward[0], backward[0], 0)
    for s in range(1, ring.n_stages + 1):
        forward.append(extend_map(forward[-1], s, name=f"phi{s}"))
        backward.append(extend_map(backward[-1], s, name=f"psi{s}"))
        _check_inverse(forward[-1], backward[-1], s)
    bt.logging.info(f"coordinate change over {ring.spec.label()} verified on {ring.n_stages + 1} stages")
    return CoordinateChange(forward=tuple(forward), backward=tuple(backward))
