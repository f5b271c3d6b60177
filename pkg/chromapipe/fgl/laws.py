# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

import math
from dataclasses import dataclass
from typing import Optional, Union

import bittensor as bt

from chromapipe.fgl.hazewinkel import hazewinkel_law, reduce_fraction
from chromapipe.fgl.series import (
    Series,
    at_stage,
    comp_inverse,
    make_series,
    map_coefficients,
    pushforward_series,
    substitute,
    variable,
)
from chromapipe.staged.element import StagedElement, ideal_degree, part_of_degree
from chromapipe.staged.maps import StagedMap
from chromapipe.staged.ring import StagedRing, is_unit
from chromapipe.types import PrecisionExhausted, Report

INFINITE_HEIGHT = math.inf


@dataclass(frozen=True)
class FGL:
    """A one-dimensional formal group law F(x, y) over a stage ring."""
    F: Series
    name: str = "F"

    @property
    def ring(self) -> StagedRing:
        return self.F.ring

    @property
    def stage(self) -> int:
        return self.F.stage

    @property
    def nx(self) -> int:
        return self.F.nx

    def __str__(self) -> str:
        return f"{self.name}(x, y) = {self.F}"


def _xy(ring: StagedRing, stage: int, nx: int):
    return variable(ring, stage, 2, 0, nx), variable(ring, stage, 2, 1, nx)


def additive(ring: StagedRing, stage: int = 0, nx: Optional[int] = None) -> FGL:
    nx = nx or ring.spec.profile.N_x
    x, y = _xy(ring, stage, nx)
    return FGL(x + y, "additive")


def multiplicative(ring: StagedRing, stage: int = 0, nx: Optional[int] = None) -> FGL:
    nx = nx or ring.spec.profile.N_x
    x, y = _xy(ring, stage, nx)
    return FGL(x + y + x * y, "multiplicative")


def _from_rational(ring: StagedRing, stage: int, nx: int, law, name: str, keep_u: bool) -> FGL:
    R = ring.spec.R
    terms = {}
    for (i, j), coeff in law.items():
        numer = {}
        for mono, (num, den) in coeff.items():
            c = reduce_fraction(num, den, R)
            if keep_u:
                exp = tuple(mono) + (0,) * (ring.spec.n_gens - len(mono))
            else:
                exp = (0,) * ring.spec.n_gens
            numer[exp] = numer[exp] + c if exp in numer else c
        terms[(i, j)] = ring.element(numer, 0)
    F = make_series(ring, 0, 2, nx, terms)
    return FGL(at_stage(F, stage), name)


def honda(ring: StagedRing, h: int, stage: int = 0, nx: Optional[int] = None) -> FGL:
    """
    The height-h Honda law, logarithm sum_i x^(p^(h i)) / p^i.

    Raises:
        PrecisionExhausted: N_x <= p^h.
        IntegralityFailure: a coefficient has p in its denominator.
    """
    nx = nx or ring.spec.profile.N_x
    p = ring.spec.p
    if nx <= p ** h:
        raise PrecisionExhausted(f"N_x={nx} cannot see x^{p ** h}")
    law = hazewinkel_law(p, h, nx, deform=False)
    return _from_rational(ring, stage, nx, law, f"honda{h}", keep_u=False)


def standard_fgl(kind: str, ring: StagedRing, stage: int = 0, h: int = 1, nx: Optional[int] = None) -> FGL:
    """additive, multiplicative or honda (height h)."""
    if kind == "additive":
        return additive(ring, stage, nx)
    if kind == "multiplicative":
        return multiplicative(ring, stage, nx)
    if kind == "honda":
        return honda(ring, h, stage, nx)
    raise ValueError(f"unknown formal group law {kind!r}")


def hazewinkel_deformation(ring: StagedRing, stage: int = 0) -> FGL:
    """
    Versal deformation over X_0 from the Hazewinkel generators v_i = u_i, v_h = 1,
    pulled to the requested stage.

    Raises:
        PrecisionExhausted: N_x <= p^h.
        IntegralityFailure: a rational coefficient is not p-integral.
    """
    spec = ring.spec
    nx = spec.profile.N_x
    if nx <= spec.p ** spec.h:
        raise PrecisionExhausted(f"N_x={nx} cannot see x^{spec.p ** spec.h}")
    bt.logging.info(f"building hazewinkel deformation over {spec.label()} at N_x={nx}")
    law = hazewinkel_law(spec.p, spec.h, nx, deform=True)
    return _from_rational(ring, stage, nx, law, f"G{spec.h}", keep_u=True)


def formal_sum(F: FGL, f: Series, g: Series) -> Series:
    """F(f, g) for one-variable series without constant term."""
    return substitute(F.F, [f, g])


def p_series(F: FGL, k: Optional[int] = None) -> Series:
    """[k]_F(x) by [k](x) = F([k-1](x), x); k defaults to p."""
    k = F.ring.spec.p if k is None else k
    if k < 1:
        raise ValueError(f"k={k} must be at least 1")
    x = variable(F.ring, F.stage, 1, 0, F.nx)
    out = x
    for _ in range(k - 1):
        out = formal_sum(F, out, x)
    return out


def fgl_validate(F: FGL) -> Report:
    """Unit, commutativity and associativity at the truncation; the first failure carries its degree."""
    ring, stage, nx = F.ring, F.stage, F.nx
    x1 = variable(ring, stage, 1, 0, nx)
    zero1 = make_series(ring, stage, 1, nx, {})
    left_unit = substitute(F.F, [x1, zero1])
    right_unit = substitute(F.F, [zero1, x1])
    for label, got in (("F(x,0) = x", left_unit), ("F(0,y) = y", right_unit)):
        diff = got - x1
        if not diff.is_zero():
            return Report(False, "fgl_validate", diff.order(), f"{label} fails: {got}")
    x, y = _xy(ring, stage, nx)
    swapped = substitute(F.F, [y, x])
    diff = swapped - F.F
    if not diff.is_zero():
        return Report(False, "fgl_validate", diff.order(), "F(x,y) = F(y,x) fails")
    x3, y3, z3 = (variable(ring, stage, 3, i, nx) for i in range(3))
    fxy = substitute(F.F, [x3, y3])
    fyz = substitute(F.F, [y3, z3])
    diff = substitute(F.F, [fxy, z3]) - substitute(F.F, [x3, fyz])
    if not diff.is_zero():
        return Report(False, "fgl_validate", diff.order(), "F(F(x,y),z) = F(x,F(y,z)) fails")
    return Report(True, "fgl_validate", detail=f"N_x={nx}")


def conjugate(F: FGL, phi: Series) -> FGL:
    """phi^-1(F(phi(x), phi(y))).

    Raises:
        NotAUnit: phi has no compositional inverse.
    """
    inv = comp_inverse(phi)
    x, y = _xy(F.ring, max(F.stage, phi.stage), F.nx)
    phix = substitute(phi, [x])
    phiy = substitute(phi, [y])
    inner = substitute(F.F, [phix, phiy])
    return FGL(substitute(inv, [inner]), f"{F.name}^phi")


def pushforward(F: FGL, m: StagedMap) -> FGL:
    """Coefficients of F sent through a staged map."""
    return FGL(pushforward_series(F.F, m), f"{m.name}*{F.name}")


def reduce_mod_ideal(F: FGL, t: int) -> FGL:
    """Drop every coefficient monomial lying in I_t."""
    return FGL(map_coefficients(F.F, lambda c: part_of_degree(c, t, 1)), f"{F.name} mod I{t}")


def _in_ideal(c: StagedElement, t: int) -> bool:
    return c.is_zero() or ideal_degree(c, t) >= 1


def _unit_mod_ideal(c: StagedElement, t: int) -> bool:
    """c is a unit modulo I_t: its I_t-degree-zero part is invertible."""
    if t == 0:
        return is_unit(c)
    lead = part_of_degree(c, t, 1)
    return not lead.is_zero() and is_unit(lead)


def height(F: FGL, t_max: int) -> Union[int, float]:
    """
    Least t <= t_max with a_i in the stage ideal for i < p^t and a_(p^t) a unit modulo it;
    INFINITE_HEIGHT when none is found within the bound.

    Raises:
        PrecisionExhausted: N_x <= p^t_max.
    """
    p = F.ring.spec.p
    if F.nx <= p ** t_max:
        raise PrecisionExhausted(f"N_x={F.nx} cannot see x^{p ** t_max}", stage=F.stage)
    coeffs = p_series(F).coefficients()
    ideal = F.ring.spec.height_at(F.stage)
    for t in range(0, t_max + 1):
        n = p ** t
        if not all(_in_ideal(coeffs[i], ideal) for i in range(1, n)):
            break
        if _unit_mod_ideal(coeffs[n], ideal):
            bt.logging.debug(f"height of {F.name} at stage {F.stage}: {t}")
            return t
    return INFINITE_HEIGHT


def check_star(F: FGL, t: int, n: int) -> Report:
    """[p]_F has a_i in I_t for 1 <= i < n and a_n a unit."""
    if n >= F.nx:
        raise PrecisionExhausted(f"n={n} is not below N_x={F.nx}", stage=F.stage)
    coeffs = p_series(F).coefficients()
    for i in range(1, n):
        if not _in_ideal(coeffs[i], t):
            return Report(False, "check_star", i, f"a_{i} = {coeffs[i]} not in I_{t}")
    if not is_unit(coeffs[n]):
        return Report(False, "check_star", n, f"a_{n} = {coeffs[n]} is not a unit")
    return Report(True, "check_star", n)


def check_lt_coordinate(F: FGL, t: int) -> Report:
    """
    [p]_F(x) = u_t x^(p^t) mod (p, u_1, ..., u_(t-1), x^(1+p^t)), with u_h read as 1.

    Raises:
        PrecisionExhausted: N_x <= p^t.
    """
    spec = F.ring.spec
    if not 1 <= t <= spec.h:
        raise ValueError(f"t={t} outside [1, {spec.h}]")
    n = spec.p ** t
    if F.nx <= n:
        raise PrecisionExhausted(f"N_x={F.nx} cannot see x^{n}", stage=F.stage)
    coeffs = p_series(F).coefficients()
    for i in range(1, n):
        if not _in_ideal(coeffs[i], t):
            return Report(False, "check_lt_coordinate", i, f"a_{i} = {coeffs[i]} not in I_{t}")
    target = F.ring.one(F.stage) if t == spec.h else F.ring.generator(t, F.stage)
    if not _in_ideal(coeffs[n] - target, t):
        lead = part_of_degree(coeffs[n], t, 1)
        return Report(False, "check_lt_coordinate", n, f"a_{n} = {lead} mod I_{t}, expected {target}")
    return Report(True, "check_lt_coordinate", n)
