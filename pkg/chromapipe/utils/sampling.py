# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

"""Seeded random elements for self-tests and the command-line checks."""

from typing import Optional

import numpy as np
import xxhash

from chromapipe.coeff.galois import GaloisRing, GrElement
from chromapipe.fgl.series import Series, from_coefficients
from chromapipe.staged.element import StagedElement
from chromapipe.staged.ring import StagedRing


def derive_seed(seed: int, label: str) -> int:
    """Stable per-check seed so adding a check does not shift the others."""
    return xxhash.xxh64(label.encode("utf-8"), seed=seed).intdigest()


def rng_for(seed: int, label: str) -> np.random.Generator:
    return np.random.default_rng(derive_seed(seed, label))


def random_coefficient(rng: np.random.Generator, R: GaloisRing, max_val: Optional[int] = None, unit: bool = False) -> GrElement:
    """
    A random element of R.

    Args:
        max_val: Upper bound on the p-adic valuation; the element is a multiple of
            p^v with v drawn from [0, max_val].
        unit: Force a unit.
    """
    coords = [int(c) for c in rng.integers(0, R.modulus, size=R.n)]
    if unit or (max_val is not None and max_val == 0):
        if all(c % R.p == 0 for c in coords):
            coords[0] += 1
        return R.element(coords)
    c = R.element(coords)
    if max_val is None:
        return c
    v = int(rng.integers(0, max_val + 1))
    return c * R.from_int(R.p ** v)


def random_staged(
    rng: np.random.Generator,
    ring: StagedRing,
    stage: int,
    terms: int = 3,
    max_exp: int = 1,
    max_denom: int = 1,
    max_val: int = 1,
) -> StagedElement:
    """A random element of X_stage with small exponents, denominators and valuations."""
    spec = ring.spec
    inv = spec.inverted(stage)
    numer = {}
    for _ in range(int(rng.integers(0, terms + 1))):
        exp = tuple(int(e) for e in rng.integers(0, max_exp + 1, size=spec.n_gens))
        c = random_coefficient(rng, spec.R, max_val)
        numer[exp] = numer[exp] + c if exp in numer else c
    denoms = [int(d) for d in rng.integers(0, max_denom + 1, size=len(inv))]
    return ring.element(numer, stage, denoms)


def random_ideal_element(rng: np.random.Generator, ring: StagedRing, stage: int, t: int, terms: int = 2) -> StagedElement:
    """A random element of I_t with nonnegative exponents."""
    spec = ring.spec
    total = ring.zero(stage)
    if t == 0:
        return total
    for _ in range(terms):
        g = int(rng.integers(0, t))
        c = random_coefficient(rng, spec.R)
        exps = tuple(int(e) for e in rng.integers(0, 2, size=spec.n_gens))
        total = total + ring.generator(g, stage) * ring.element({exps: c}, stage)
    return total


def random_unit(rng: np.random.Generator, ring: StagedRing, stage: int, max_shift: int = 1) -> StagedElement:
    """
    u_g^k * c * (1 + m) with c a unit coefficient, m in the stage ideal and g the most
    recently inverted generator (k = 0 when none is inverted). Once p is inverted m is
    drawn from the ideal of the last height above 0.
    """
    spec = ring.spec
    c = ring.constant(random_coefficient(rng, spec.R, unit=True), stage)
    t = next((spec.height_at(s) for s in range(stage, -1, -1) if spec.height_at(s)), 0)
    m = random_ideal_element(rng, ring, stage, t)
    x = c * (ring.one(stage) + m)
    inv = spec.inverted(stage)
    if inv:
        g = inv[-1]
        k = int(rng.integers(-max_shift, max_shift + 1))
        x = x * ring.gen_power(g, k, stage)
    return x


def random_series(rng: np.random.Generator, ring: StagedRing, stage: int = 0, nx: Optional[int] = None) -> Series:
    """An invertible x-series: unit linear coefficient, small higher terms without denominators."""
    nx = nx or ring.spec.profile.N_x
    coeffs = [ring.zero(stage), ring.constant(random_coefficient(rng, ring.spec.R, unit=True), stage)]
    for _ in range(2, nx):
        coeffs.append(random_staged(rng, ring, stage, terms=2, max_exp=1, max_denom=0, max_val=1))
    return from_coefficients(ring, stage, coeffs, nx)
