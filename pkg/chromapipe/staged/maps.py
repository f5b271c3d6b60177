# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Tuple

import bittensor as bt

from chromapipe.staged.element import StagedElement, gen_name, ideal_degree, promote
from chromapipe.staged.ring import StagedRing, try_invert
from chromapipe.types import IdealEscape, MapUndefined, MixedRings, NotAUnit


@dataclass(frozen=True, eq=False)
class StagedMap:
    """A continuous map X_s^source -> X_t^target fixed by the images of u_1 .. u_(h-1); p goes to p."""
    source: StagedRing
    target: StagedRing
    images: Tuple[StagedElement, ...]
    source_stage: int = 0
    target_stage: int = 0
    name: str = "phi"
    _inverse_cache: Dict[int, StagedElement] = field(default_factory=dict, repr=False)

    def image_of(self, g: int) -> StagedElement:
        if g == 0:
            return self.target.from_int(self.source.spec.p, self.target_stage)
        return self.images[g - 1]

    def inverse_image_of(self, g: int) -> StagedElement:
        """Inverse of the image of an inverted generator; MapUndefined if it is not a unit."""
        cached = self._inverse_cache.get(g)
        if cached is None:
            try:
                cached = try_invert(self.image_of(g))
            except NotAUnit as exc:
                raise MapUndefined(
                    f"{self.name}({gen_name(g)}) = {self.image_of(g)} is not invertible: {exc.info.message}",
                    stage=self.target_stage,
                ) from exc
            self._inverse_cache[g] = cached
        return cached


def staged_map(
    source: StagedRing,
    target: StagedRing,
    images: Mapping[int, StagedElement],
    source_stage: int = 0,
    target_stage: Optional[int] = None,
    name: str = "phi",
) -> StagedMap:
    """
    Build a map from generator images; missing generators map to themselves.

    Args:
        images: u-index -> image, any target stage up to target_stage.
    """
    if source.spec.p != target.spec.p or source.spec.R != target.spec.R:
        raise MixedRings(f"{source.spec.label()} and {target.spec.label()} have different coefficients")
    if target_stage is None:
        target_stage = source_stage
    out = []
    for g in range(1, source.spec.n_gens + 1):
        img = images.get(g)
        if img is None:
            img = target.generator(g, target_stage)
        elif img.ring != target:
            raise MixedRings(f"image of u{g} lives in {img.ring.spec.label()}")
        out.append(promote(img, target_stage))
    bt.logging.debug(f"staged map {name}: stage {source_stage} -> {target_stage}")
    return StagedMap(
        source=source,
        target=target,
        images=tuple(out),
        source_stage=source_stage,
        target_stage=target_stage,
        name=name,
    )


def identity_map(ring: StagedRing, stage: int = 0) -> StagedMap:
    return staged_map(ring, ring, {}, stage, stage, name="id")


def check_continuous(m: StagedMap) -> None:
    """The ideal of definition at stage 0 must land in the ideal of definition."""
    if m.source_stage != 0:
        return
    h = m.target.spec.h
    for g, img in enumerate(m.images, start=1):
        if ideal_degree(img, h) < 1:
            raise IdealEscape(f"{m.name}(u{g}) = {img} is not in I_{h}", stage=m.target_stage)


def _power(cache: Dict[Tuple[int, int], StagedElement], base: StagedElement, g: int, k: int, one: StagedElement) -> StagedElement:
    if k == 0:
        return one
    key = (g, k)
    found = cache.get(key)
    if found is None:
        found = _power(cache, base, g, k - 1, one) * base
        cache[key] = found
    return found


def apply_staged_map(m: StagedMap, x: StagedElement) -> StagedElement:
    """
    Substitute generator images monomial by monomial; inverted generators go through
    the inverse of their image.

    Raises:
        MapUndefined: an inverted generator's image is not a unit in the target.
    """
    if x.ring != m.source:
        raise MixedRings(f"{x.ring.spec.label()} is not the source of {m.name}")
    x = promote(x, m.source_stage) if x.stage < m.source_stage else x
    if x.stage != m.source_stage:
        raise ValueError(f"{m.name} is defined on stage {m.source_stage}, got stage {x.stage}")
    one = m.target.one(m.target_stage)
    cache: Dict[Tuple[int, int], StagedElement] = {}
    by_gen = dict(zip(x.inverted(), x.denoms))
    p_part = one
    d0 = by_gen.get(0, 0)
    if d0 > 0:
        p_part = _power(cache, m.inverse_image_of(0), -1, d0, one)
    elif d0 < 0:
        p_part = m.target.gen_power(0, -d0, m.target_stage)
    total = m.target.zero(m.target_stage)
    for exp, c in x.terms:
        term = m.target.constant(c, m.target_stage) * p_part
        for i, e in enumerate(exp):
            k = e - by_gen.get(i + 1, 0)
            if k > 0:
                term = term * _power(cache, m.images[i], i + 1, k, one)
            elif k < 0:
                term = term * _power(cache, m.inverse_image_of(i + 1), -2 - i, -k, one)
        total = total + term
    return total


def compose(second: StagedMap, first: StagedMap) -> StagedMap:
    """second after first."""
    if first.target != second.source or first.target_stage != second.source_stage:
        raise MixedRings(f"cannot compose {second.name} after {first.name}")
    images = {g: apply_staged_map(second, first.images[g - 1]) for g in range(1, first.source.spec.n_gens + 1)}
    return staged_map(
        first.source,
        second.target,
        images,
        first.source_stage,
        second.target_stage,
        name=f"{second.name}.{first.name}",
    )
