# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

"""
Staged deformations in presentation form: R_s is stage s of a staged ring, the connecting
maps are the stage inclusions, and F_s is a formal group law over stage s.
"""

from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import bittensor as bt
import numpy as np

from chromapipe.coeff.galois import GrElement
from chromapipe.fgl.laws import FGL, conjugate, hazewinkel_deformation, height, honda, pushforward, reduce_mod_ideal
from chromapipe.fgl.series import Series, at_stage, from_coefficients
from chromapipe.staged.element import StagedElement, part_of_degree
from chromapipe.staged.maps import StagedMap, staged_map
from chromapipe.staged.ring import StagedRing
from chromapipe.types import DomainError, Report
from chromapipe.utils.sampling import random_coefficient, random_ideal_element


@dataclass(frozen=True)
class StagedDeformation:
    """Rings R_0 -> ... -> R_n with a law F_s on each and the declared heights h_0 = h, h_1, ..."""
    ring: StagedRing
    fgls: Tuple[FGL, ...]
    heights: Tuple[int, ...]
    name: str = "D"

    @property
    def n_stages(self) -> int:
        return len(self.fgls) - 1

    def law(self, s: int) -> FGL:
        return self.fgls[s]


@lru_cache(maxsize=None)
def versal(ring: StagedRing, stage: int = 0) -> FGL:
    """The Hazewinkel deformation G_s, built once per ring and stage."""
    return hazewinkel_deformation(ring, stage)


def gamma(ring: StagedRing) -> FGL:
    """The fixed law over the residue field: G_0 modulo the maximal ideal."""
    return reduce_mod_ideal(versal(ring, 0), ring.spec.h)


def residue(c: StagedElement) -> GrElement:
    """Image of a stage-0 element in the residue field k."""
    low = part_of_degree(c, c.ring.spec.h, 1)
    return low.constant().residue()


def residue_law(F: FGL) -> Dict[Tuple[int, ...], GrElement]:
    """Nonzero coefficients of a stage-0 law reduced to k."""
    out = {}
    for e, c in F.F.terms:
        r = residue(c)
        if not r.is_zero():
            out[e] = r
    return out


def connecting_map(ring: StagedRing, s: int) -> StagedMap:
    """i_s: R_(s-1) -> R_s."""
    return staged_map(ring, ring, {}, s - 1, s, name=f"i{s}")


def declared_heights(ring: StagedRing) -> Tuple[int, ...]:
    return (ring.spec.h,) + ring.spec.heights


def validate_deformation(D: StagedDeformation) -> Report:
    """
    Residue reduction to the fixed law, pushforward compatibility along every i_s, then the
    height of each F_s against the declared height. The first violation is reported.
    """
    ring = D.ring
    check = "validate_deformation"
    if len(D.fgls) != ring.n_stages + 1 or len(D.heights) != len(D.fgls):
        return Report(False, check, None, f"need {ring.n_stages + 1} laws and heights")
    for s, F in enumerate(D.fgls):
        if F.ring != ring or F.stage != s:
            return Report(False, check, s, f"F_{s} does not live over stage {s}")
    F0 = D.fgls[0]
    if residue_law(F0) != residue_law(gamma(ring)):
        return Report(False, check, 0, "residue: F_0 does not reduce to the fixed law")
    for s in range(1, len(D.fgls)):
        pushed = pushforward(D.fgls[s - 1], connecting_map(ring, s))
        if pushed.F != D.fgls[s].F:
            return Report(False, check, s, f"pushforward: F_{s} is not F_{s - 1} pushed along i{s}")
    for s, F in enumerate(D.fgls):
        try:
            found = height(F, ring.spec.h)
        except DomainError as exc:
            return Report(False, check, s, f"height: {exc.info.label()}")
        if found != D.heights[s]:
            return Report(False, check, s, f"height: F_{s} has height {found}, declared {D.heights[s]}")
    bt.logging.debug(f"deformation {D.name} over {ring.spec.label()} validated")
    return Report(True, check, detail=D.name)


def from_stage_zero(ring: StagedRing, F0: FGL, heights: Optional[Sequence[int]] = None, name: str = "D") -> StagedDeformation:
    """Push F_0 through every stage."""
    laws = [F0]
    for s in range(1, ring.n_stages + 1):
        laws.append(FGL(at_stage(laws[-1].F, s), f"{F0.name}_{s}"))
    heights = declared_heights(ring) if heights is None else tuple(heights)
    return StagedDeformation(ring=ring, fgls=tuple(laws), heights=heights, name=name)


def tautological_deformation(ring: StagedRing) -> StagedDeformation:
    """R_s = X_s and F_s = G_s."""
    laws = tuple(versal(ring, s) for s in range(ring.n_stages + 1))
    return StagedDeformation(ring=ring, fgls=laws, heights=declared_heights(ring), name="tautological")


def twisted_deformation(ring: StagedRing, twist: Dict[int, StagedElement], phi: Series) -> StagedDeformation:
    """
    Pull G_0 back along the coordinate twist u_i -> twist[i], conjugate by phi and push
    the result through the stages.
    """
    g = staged_map(ring, ring, twist, 0, 0, name="twist")
    F0 = conjugate(pushforward(versal(ring, 0), g), phi)
    return from_stage_zero(ring, FGL(F0.F, "twisted"), name="twisted")


def height_mismatch_fixture(ring: StagedRing) -> StagedDeformation:
    """The height-h Honda law at every stage, declared with the ring's dropping heights."""
    h = ring.spec.h
    if all(x == h for x in ring.spec.heights):
        raise ValueError("mismatch fixture needs a stage whose height drops below h")
    F0 = honda(ring, h, 0)
    return replace(from_stage_zero(ring, F0), name="mismatch")


def random_twist(rng: np.random.Generator, ring: StagedRing, free: Sequence[int] = ()) -> Tuple[Dict[int, StagedElement], Series]:
    """
    A coordinate twist u_t -> u_t + c_t with c_t in I_t, and a series phi = x mod the maximal
    ideal whose coefficients vanish in the degrees listed in free.
    """
    spec = ring.spec
    twist = {}
    for t in range(1, spec.h):
        twist[t] = ring.generator(t, 0) + random_ideal_element(rng, ring, 0, t, terms=1)
    nx = spec.profile.N_x
    p = ring.from_int(spec.p)
    b1 = ring.one() if 1 in free else ring.one() + p * ring.constant(random_coefficient(rng, spec.R))
    coeffs: List[StagedElement] = [ring.zero(), b1]
    for j in range(2, nx):
        if j in free:
            coeffs.append(ring.zero())
        else:
            coeffs.append(random_ideal_element(rng, ring, 0, spec.h, terms=1))
    return twist, from_coefficients(ring, 0, coeffs, nx)
