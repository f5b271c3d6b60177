# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

"""
Finite realizations of a stage ring.

`realize_staged` enumerates the stage-s window at a depth: denominators below depth,
coefficients modulo p^depth (when p is not inverted), everything else cut by the
profile. `localization_diagram` builds the same object as an ind-of-pro diagram in the
tower layer: the ind axis bounds denominators, the inner pro axis bounds p-adic
precision, and the completion truncation is computed per monomial from the profile
alone. `check_realization` compares the two.
"""

import itertools
from typing import Dict, List, Sequence, Tuple

import bittensor as bt

from chromapipe.coeff.galois import GaloisRing, GrElement
from chromapipe.staged.element import StagedElement, normalize, reduce_coefficient
from chromapipe.staged.ring import StagedRing, build_staged
from chromapipe.staged.spec import StagedRingSpec
from chromapipe.tower.diagrams import Index, PipeDiagram, realize
from chromapipe.tower.rings import FiniteRingObj, is_additive_map
from chromapipe.types import DepthExceeded, Report


def _check_window(spec: StagedRingSpec, s: int, depth: int) -> None:
    if not 0 <= s <= spec.n_stages:
        raise ValueError(f"stage {s} outside [0, {spec.n_stages}]")
    if not 1 <= depth <= spec.profile.M + 1:
        raise DepthExceeded(f"depth {depth} outside [1, M+1={spec.profile.M + 1}]", stage=s)


def _precision(spec: StagedRingSpec, s: int, depth: int) -> int:
    if spec.is_rational(s):
        return spec.profile.a
    return min(spec.profile.a, depth)


def _coefficients(R: GaloisRing, digits: int) -> List[GrElement]:
    """Representatives of R / p^digits."""
    if digits <= 0:
        return [R.zero()]
    m = R.p ** min(digits, R.a)
    return [R.element(c) for c in itertools.product(range(m), repeat=R.n)]


def _reduce(x: StagedElement, digits: int) -> StagedElement:
    if digits >= x.ring.spec.profile.a:
        return x
    terms = {e: reduce_coefficient(c, digits) for e, c in x.terms}
    return normalize(x.ring, x.stage, terms, x.denoms)


def realize_staged(spec: StagedRingSpec, s: int, depth: int) -> FiniteRingObj:
    """
    The stage-s window at a depth as a finite object.

    Args:
        spec (StagedRingSpec): Ring presentation.
        s (int): Stage.
        depth (int): Denominators stay below depth; coefficients are taken mod p^depth
            unless p is inverted.

    Returns:
        FiniteRingObj: Carrier of canonical elements with the staged operations.

    Raises:
        DepthExceeded: depth is 0 or needs denominators past M.
    """
    _check_window(spec, s, depth)
    ring = build_staged(spec)
    beta = depth - 1
    digits = _precision(spec, s, depth)
    inv = spec.inverted(s)
    boxes = [
        range(0, spec.profile.D + (beta if g in inv else 0))
        for g in range(1, spec.n_gens + 1)
    ]
    points = list(itertools.product(*boxes))
    coeffs = _coefficients(spec.R, digits)
    seen: Dict[StagedElement, None] = {}
    for choice in itertools.product(coeffs, repeat=len(points)):
        x = normalize(ring, s, dict(zip(points, choice)), [beta] * len(inv))
        seen.setdefault(x, None)
    carrier = tuple(seen)
    bt.logging.debug(f"realize_staged {spec.label()} stage={s} depth={depth} size={len(carrier)}")
    return FiniteRingObj(
        name=f"X_{s}[depth {depth}]",
        elements=carrier,
        add=lambda x, y: _reduce(x + y, digits),
        mul=lambda x, y: _reduce(x * y, digits),
        neg=lambda x: -x,
        zero=ring.zero(s),
        one=_reduce(ring.one(s), digits),
    )


def _box(spec: StagedRingSpec, s: int, beta: int) -> List[Tuple[int, ...]]:
    """Effective exponent vectors with denominators up to beta."""
    inv = spec.inverted(s)
    ranges = [range(-beta if g in inv else 0, spec.profile.D) for g in range(1, spec.n_gens + 1)]
    return list(itertools.product(*ranges))


def _digits_at(spec: StagedRingSpec, s: int, q: int, point: Sequence[int]) -> int:
    """p-adic digits a coefficient keeps at an effective exponent."""
    k = q
    for j in range(1, s + 1):
        t = spec.heights[j - 1]
        if t >= 1:
            k = min(k, spec.profile.depth_at(j) - sum(point[: t - 1]))
    return max(k, 0)


class _Leaf:
    """Coefficient vectors over a box of effective exponents."""

    def __init__(self, spec: StagedRingSpec, s: int, beta: int, q: int):
        self.spec = spec
        self.points = _box(spec, s, beta)
        self.position = {pt: i for i, pt in enumerate(self.points)}
        self.digits = [_digits_at(spec, s, q, pt) for pt in self.points]

    def clean(self, vec: Sequence[GrElement]) -> Tuple[GrElement, ...]:
        return tuple(reduce_coefficient(c, k) for c, k in zip(vec, self.digits))

    def ring(self, name: str) -> FiniteRingObj:
        R = self.spec.R
        zero = tuple(R.zero() for _ in self.points)
        carrier = tuple(itertools.product(*[_coefficients(R, k) for k in self.digits]))
        origin = self.position.get((0,) * self.spec.n_gens)
        one = None
        if origin is not None and self.digits[origin] > 0:
            one = self.clean(tuple(R.one() if i == origin else R.zero() for i in range(len(self.points))))

        def add(x, y):
            return self.clean(tuple(a + b for a, b in zip(x, y)))

        def mul(x, y):
            out = [R.zero() for _ in self.points]
            for i, a in enumerate(x):
                if a.is_zero():
                    continue
                for j, b in enumerate(y):
                    pt = tuple(u + v for u, v in zip(self.points[i], self.points[j]))
                    k = self.position.get(pt)
                    if k is not None:
                        out[k] = out[k] + a * b
            return self.clean(out)

        return FiniteRingObj(
            name=name,
            elements=carrier,
            add=add,
            mul=mul,
            neg=lambda x: self.clean(tuple(-a for a in x)),
            zero=zero,
            one=one,
        )


def localization_diagram(spec: StagedRingSpec, s: int, depth_bound: int) -> PipeDiagram:
    """
    Stage s as a length-1 diagram: constant outer pro axis, ind axis over denominator
    bounds (inclusions), inner pro axis over p-adic precision (reductions).
    """
    if spec.is_rational(s):
        raise ValueError(f"stage {s} inverts p; its window has no p-adic pro axis")
    if depth_bound > spec.profile.M + 1:
        raise DepthExceeded(f"depth bound {depth_bound} needs denominators past M={spec.profile.M}", stage=s)
    a = spec.profile.a
    leaves: Dict[Tuple[int, int], _Leaf] = {}

    def shape(beta: int, gamma: int) -> _Leaf:
        key = (beta, gamma)
        if key not in leaves:
            leaves[key] = _Leaf(spec, s, beta, min(a, gamma + 1))
        return leaves[key]

    def leaf(idx: Index) -> FiniteRingObj:
        _, beta, gamma = idx
        return shape(beta, gamma).ring(f"X_{s}(u^-{beta}, p^{min(a, gamma + 1)})")

    def step(axis: int, idx: Index):
        _, beta, gamma = idx
        if axis == 0:
            return lambda x: x
        src = shape(beta, gamma)
        if axis == 1:
            dst = shape(beta + 1, gamma)

            def widen(x):
                out = [dst.spec.R.zero() for _ in dst.points]
                for pt, c in zip(src.points, x):
                    out[dst.position[pt]] = c
                return tuple(out)
            return widen
        dst = shape(beta, gamma - 1)
        return lambda x: dst.clean(x)

    return PipeDiagram(
        name=f"L_{s}({spec.label()})",
        length=1,
        depth_bound=depth_bound,
        leaf_fn=leaf,
        step_fn=step,
    )


def leaf_to_staged(ring: StagedRing, s: int, beta: int, points: Sequence[Tuple[int, ...]], vec: Sequence[GrElement]) -> StagedElement:
    """Read a coefficient vector over effective exponents as a staged element with denominators beta."""
    inv = ring.spec.inverted(s)
    terms = {}
    for pt, c in zip(points, vec):
        if c.is_zero():
            continue
        numer = tuple(e + (beta if g in inv else 0) for g, e in enumerate(pt, start=1))
        terms[numer] = c
    return normalize(ring, s, terms, [beta] * len(inv))


def check_realization(spec: StagedRingSpec, s: int, depth: int) -> Report:
    """Compare realize_staged with the tower realization of localization_diagram at a depth."""
    _check_window(spec, s, depth)
    ring = build_staged(spec)
    staged = realize_staged(spec, s, depth)
    X = localization_diagram(spec, s, depth)
    tower = realize(X, depth)
    beta = tower.index[1]
    points = _box(spec, s, beta)

    def convert(v):
        return leaf_to_staged(ring, s, beta, points, v)

    if tower.ring.size != staged.size:
        return Report(False, "realize_staged", tower.index, f"sizes {tower.ring.size} vs {staged.size}")
    images = {convert(v) for v in tower.ring.elements}
    if images != set(staged.elements):
        return Report(False, "realize_staged", tower.index, "carriers differ")
    if not is_additive_map(convert, tower.ring, staged):
        return Report(False, "realize_staged", tower.index, "conversion is not additive")
    return Report(True, "realize_staged", tower.index, f"size {staged.size}", extra={"size": staged.size})
