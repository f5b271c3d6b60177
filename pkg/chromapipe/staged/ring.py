# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

import bittensor as bt

from chromapipe.coeff.galois import GrElement
from chromapipe.staged.element import (
    Exp,
    StagedElement,
    gen_name,
    monomial_degree,
    normalize,
    promote,
)
from chromapipe.staged.spec import StagedRingSpec, validate_spec
from chromapipe.types import NoSplit, NotAUnit, PrecisionExhausted
from chromapipe.utils.config import DEFAULT_SERIES_ITERATIONS


@dataclass(frozen=True)
class StagedRing:
    """Handle on the stage rings X_0 -> X_1 -> ... -> X_n of one spec."""
    spec: StagedRingSpec
    series_iterations: int = field(default=DEFAULT_SERIES_ITERATIONS, compare=False)

    @property
    def n_stages(self) -> int:
        return self.spec.n_stages

    def _check_stage(self, stage: int) -> None:
        if not 0 <= stage <= self.spec.n_stages:
            raise ValueError(f"stage {stage} outside [0, {self.spec.n_stages}]")

    def element(self, terms: Dict[Exp, GrElement], stage: int = 0, denoms: Optional[Sequence[int]] = None) -> StagedElement:
        self._check_stage(stage)
        if denoms is None:
            denoms = (0,) * len(self.spec.inverted(stage))
        return normalize(self, stage, dict(terms), denoms)

    def zero(self, stage: int = 0) -> StagedElement:
        return self.element({}, stage)

    def constant(self, c: GrElement, stage: int = 0) -> StagedElement:
        return self.element({(0,) * self.spec.n_gens: c}, stage)

    def from_int(self, k: int, stage: int = 0) -> StagedElement:
        self._check_stage(stage)
        v = 0
        if k and self.spec.is_rational(stage):
            p = self.spec.p
            while k % p == 0:
                k //= p
                v += 1
        return self._p_scaled(self.spec.R.from_int(k), v, stage)

    def _p_scaled(self, c: GrElement, v: int, stage: int) -> StagedElement:
        """c * p^v; negative v needs p inverted at the stage."""
        inv = self.spec.inverted(stage)
        denoms = [0] * len(inv)
        if 0 in inv:
            denoms[inv.index(0)] = -v
        elif v < 0:
            raise NotAUnit(f"p is not inverted at stage {stage}", stage=stage)
        elif v:
            c = c * self.spec.R.from_int(self.spec.p ** v)
        return self.element({(0,) * self.spec.n_gens: c}, stage, denoms)

    def one(self, stage: int = 0) -> StagedElement:
        return self.from_int(1, stage)

    def monomial(self, exps: Sequence[int], c=1, stage: int = 0) -> StagedElement:
        """c * u^exps with signed exponents; negative exponents need the generator inverted."""
        if isinstance(c, int):
            c = self.spec.R.from_int(c)
        n = self.spec.n_gens
        exps = tuple(exps) + (0,) * (n - len(exps))
        inv = self.spec.inverted(stage)
        denoms = [0] * len(inv)
        numer = []
        for i, e in enumerate(exps):
            if e < 0:
                if i + 1 not in inv:
                    raise NotAUnit(f"u{i + 1} is not inverted at stage {stage}", stage=stage)
                denoms[inv.index(i + 1)] = -e
                numer.append(0)
            else:
                numer.append(e)
        return self.element({tuple(numer): c}, stage, denoms)

    def generator(self, g: int, stage: int = 0) -> StagedElement:
        """u_g, or p for g = 0."""
        if g == 0:
            return self.gen_power(0, 1, stage)
        if not 1 <= g <= self.spec.n_gens:
            raise ValueError(f"no generator u{g} at height {self.spec.h}")
        exps = [0] * self.spec.n_gens
        exps[g - 1] = 1
        return self.monomial(exps, 1, stage)

    def gen_power(self, g: int, k: int, stage: int) -> StagedElement:
        """g^k for any integer k; negative k needs g inverted at the stage."""
        self._check_stage(stage)
        if g == 0:
            return self._p_scaled(self.spec.R.one(), k, stage)
        if k >= 0:
            return self.generator(g, stage) ** k
        inv = self.spec.inverted(stage)
        if g not in inv:
            raise NotAUnit(f"{gen_name(g)} is not inverted at stage {stage}", stage=stage)
        denoms = [0] * len(inv)
        denoms[inv.index(g)] = -k
        return self.element({(0,) * self.spec.n_gens: self.spec.R.one()}, stage, denoms)

    def stage_map(self, x: StagedElement, stage: int) -> StagedElement:
        """i_s composed up to the given stage."""
        self._check_stage(stage)
        return promote(x, stage)

    def at_stage(self, x: StagedElement, stage: int) -> StagedElement:
        """Reinterpret x's fraction data at another stage with the same denominators available."""
        old = dict(zip(self.spec.inverted(x.stage), x.denoms))
        inv = self.spec.inverted(stage)
        if any(d and g not in inv for g, d in old.items()):
            raise ValueError(f"denominators of x are not available at stage {stage}")
        return normalize(self, stage, x.term_dict(), [old.get(g, 0) for g in inv])

    def series_bound(self) -> int:
        """Iteration cap for correction series: the configured floor, raised to what the window can need."""
        prof = self.spec.profile
        return max(self.series_iterations, 4 * (prof.a + self.spec.n_gens * prof.D + sum(prof.N)) + 8)

    def __repr__(self) -> str:
        return f"StagedRing({self.spec.label()})"


def build_staged(spec: StagedRingSpec, series_iterations: int = DEFAULT_SERIES_ITERATIONS) -> StagedRing:
    """Validate a spec and return its ring handle."""
    validate_spec(spec)
    bt.logging.debug(f"staged ring {spec.label()} profile {spec.profile}")
    return StagedRing(spec, series_iterations=series_iterations)


def _group_by_exponent(x: StagedElement, g: int) -> Dict[int, Dict[Exp, GrElement]]:
    """Split x by effective u_g exponent k; each group keeps its monomials with u_g^k removed."""
    d = x.denom_of(g)
    groups: Dict[int, Dict[Exp, GrElement]] = {}
    for exp, c in x.terms:
        k = exp[g - 1] - d
        e = list(exp)
        e[g - 1] = 0
        groups.setdefault(k, {})[tuple(e)] = c
    return groups


def _other_denoms(x: StagedElement, g: int, stage: int) -> Tuple[int, ...]:
    by_gen = dict(zip(x.inverted(), x.denoms))
    return tuple(by_gen.get(j, 0) for j in x.ring.spec.inverted(stage) if j != g)


def _geometric_refine(x: StagedElement, y0: StagedElement) -> StagedElement:
    """Correct an approximate inverse y0 by the finite series sum (-m)^j with m = x*y0 - 1."""
    ring = x.ring
    one = ring.one(x.stage)
    m = x * y0 - one
    if m.is_zero():
        return y0
    total = one
    term = one
    neg_m = -m
    for _ in range(ring.series_bound()):
        term = term * neg_m
        if term.is_zero():
            break
        grown = total + term
        # relative precision at rational stages: small terms stop registering
        if grown == total:
            break
        total = grown
    else:
        raise NotAUnit(f"correction series for {x} does not terminate", stage=x.stage)
    y = y0 * total
    if not (x * y).is_one():
        raise PrecisionExhausted(f"inverse of {x} does not survive the window", stage=x.stage)
    return y


def _approximate_inverse(x: StagedElement) -> StagedElement:
    ring = x.ring
    spec = ring.spec
    s = x.stage
    if s == 0:
        c = x.constant()
        if not c.is_unit():
            raise NotAUnit(f"{x} has non-unit constant term", stage=0)
        return ring.constant(c.inv(), 0)
    g = spec.heights[s - 1]
    if g == spec.h or g in spec.inverted(s - 1):
        prev = ring.at_stage(x, s - 1)
        return promote(try_invert(prev), s)
    if g == 0:
        prev, shift = _p_free_part(x)
        return promote(try_invert(prev), s) * ring.gen_power(0, shift, s)
    k, c_k = _leading_group(x, g)
    if c_k is None:
        raise NotAUnit(f"{x} has no unit leading coefficient in u{g}", stage=s)
    if k > spec.profile.M:
        raise PrecisionExhausted(f"shift u{g}^-{k} exceeds cap M={spec.profile.M}", stage=s)
    return ring.gen_power(g, -k, s) * promote(try_invert(c_k), s)


def _p_free_part(x: StagedElement) -> Tuple[StagedElement, int]:
    """Numerator of x with its p-content removed, at the previous stage, and the p-exponent that was dropped."""
    s = x.stage
    v = min(c.val() for _, c in x.terms)
    numer = {}
    for exp, c in x.terms:
        for _ in range(v):
            c = c.div_p(balanced=True)
        numer[exp] = c
    prev = normalize(x.ring, s - 1, numer, _other_denoms(x, 0, s - 1))
    return prev, x.denom_of(0) - v


def _leading_group(x: StagedElement, g: int) -> Tuple[int, Optional[StagedElement]]:
    """First u_g-coefficient of x, at the previous stage, with a monomial outside I_g."""
    spec = x.ring.spec
    s = x.stage
    rest = _other_denoms(x, g, s - 1)
    by_gen = dict(zip(spec.inverted(s - 1), rest))
    groups = _group_by_exponent(x, g)
    for k in sorted(groups):
        if min(monomial_degree(spec, g, e, c, by_gen) for e, c in groups[k].items()) > 0:
            continue
        return k, normalize(x.ring, s - 1, groups[k], rest)
    return 0, None


def try_invert(x: StagedElement) -> StagedElement:
    """
    Inverse of x in its stage ring.

    The leading coefficient is located recursively: at stage 0 it is the constant term;
    at a stage inverting a new u_g it is the first u_g-coefficient not in I_g; at the
    stage inverting p it is the numerator stripped of its common p-power. The remainder
    is topologically nilpotent in the window and is absorbed by a geometric series.

    Raises:
        NotAUnit: x is zero or has no invertible leading coefficient.
        PrecisionExhausted: the inverse needs denominators past M or loses terms to the window.
    """
    if x.is_zero():
        raise NotAUnit("zero is not a unit", stage=x.stage)
    if x.is_one():
        return x
    return _geometric_refine(x, _approximate_inverse(x))


def is_unit(x: StagedElement) -> bool:
    """
    Whether x is a unit of its stage ring.

    Follows the same leading-coefficient recursion as try_invert but never builds the
    inverse, so a unit whose inverse does not fit the window still counts.
    """
    if x.is_zero():
        return False
    s = x.stage
    if s == 0:
        return x.constant().is_unit()
    spec = x.ring.spec
    g = spec.heights[s - 1]
    if g == spec.h or g in spec.inverted(s - 1):
        return is_unit(x.ring.at_stage(x, s - 1))
    if g == 0:
        prev, _ = _p_free_part(x)
        return is_unit(prev)
    _, c_k = _leading_group(x, g)
    return c_k is not None and is_unit(c_k)


def elem_pow(x: StagedElement, k: int) -> StagedElement:
    if k >= 0:
        return x ** k
    return try_invert(x) ** (-k)


def weierstrass_split(x: StagedElement, g: int) -> Tuple[int, StagedElement]:
    """
    Write x = u_g^e * unit with e the smallest u_g-exponent carrying a unit coefficient.

    Args:
        x (StagedElement): Nonzero element.
        g (int): Generator index of the splitting direction.

    Returns:
        Tuple[int, StagedElement]: The order e and the unit part.

    Raises:
        NoSplit: no coefficient is a unit, or u_g is not inverted and lower
            non-unit terms are not divisible by u_g^e.
    """
    ring = x.ring
    if not 1 <= g <= ring.spec.n_gens:
        raise ValueError(f"no generator u{g} at height {ring.spec.h}")
    if x.is_zero():
        raise NoSplit("zero has no Weierstrass order", stage=x.stage)
    inverted = g in x.inverted()
    groups = _group_by_exponent(x, g)
    denoms = x.denoms
    for k in sorted(groups):
        c_k = normalize(ring, x.stage, groups[k], _zero_at(x, g, denoms))
        if not is_unit(c_k):
            continue
        if not inverted and k != min(groups):
            raise NoSplit(f"terms below u{g}^{k} are not divisible by it", stage=x.stage)
        if inverted:
            unit = x * ring.gen_power(g, -k, x.stage)
        else:
            unit = normalize(ring, x.stage, _shift(x.term_dict(), g, -k), denoms)
        return k, unit
    raise NoSplit(f"no coefficient of {x} in u{g} is a unit", stage=x.stage)


def _zero_at(x: StagedElement, g: int, denoms: Tuple[int, ...]) -> Tuple[int, ...]:
    inv = x.inverted()
    return tuple(0 if j == g else d for j, d in zip(inv, denoms))


def _shift(terms: Dict[Exp, GrElement], g: int, by: int) -> Dict[Exp, GrElement]:
    out = {}
    for exp, c in terms.items():
        e = list(exp)
        e[g - 1] += by
        out[tuple(e)] = c
    return out
