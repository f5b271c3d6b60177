# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

import bittensor as bt

from chromapipe.coeff.galois import GaloisRing, galois_ring
from chromapipe.tower.diagrams import (
    PipeDiagram,
    PipeMap,
    include_level,
    is_bijective_at,
    levelwise_constant,
)
from chromapipe.tower.rings import (
    FiniteRingObj,
    from_galois,
    shift_up,
    sub,
    truncate,
    truncated_poly,
    zero_ring,
)


def _identity(x):
    return x


def pro_system(rings: Sequence[FiniteRingObj], maps: Sequence[Callable], name: str) -> PipeDiagram:
    """0-pipe from explicit stages; maps[i - 1] is the transition X_i -> X_(i-1)."""
    if len(maps) != len(rings) - 1:
        raise ValueError("need one transition map per consecutive pair")
    rings = tuple(rings)
    maps = tuple(maps)
    return PipeDiagram(
        name=name,
        length=0,
        depth_bound=len(rings),
        leaf_fn=lambda idx: rings[idx[0]],
        step_fn=lambda axis, idx: maps[idx[0] - 1],
    )


def integer_tower(p: int, depth_bound: int) -> PipeDiagram:
    """... -> Z/p^3 -> Z/p^2 -> Z/p with reduction maps."""
    descs = [galois_ring(p, i + 1, 1) for i in range(depth_bound)]
    rings = [from_galois(R) for R in descs]
    maps = [(lambda x, R=descs[i - 1]: R.element(x.coeffs)) for i in range(1, depth_bound)]
    return pro_system(rings, maps, f"Z_{p}")


def power_series_tower(R: GaloisRing, depth_bound: int) -> PipeDiagram:
    """R[[x]] as ... -> R[x]/x^3 -> R[x]/x^2 -> R."""
    rings = [truncated_poly(R, i + 1) for i in range(depth_bound)]
    maps = [(lambda x, k=i: truncate(x, k)) for i in range(1, depth_bound)]
    diagram = pro_system(rings, maps, f"{R.label()}[[x]]")
    return diagram


def zero_map_system(p: int, depth_bound: int) -> PipeDiagram:
    """Constant Z/p stages joined by zero maps."""
    R = galois_ring(p, 1, 1)
    ring = from_galois(R)
    zero = R.zero()
    return pro_system([ring] * depth_bound, [lambda x: zero] * (depth_bound - 1), f"Z/{p} (zero maps)")


def zero_inclusion_system(depth_bound: int) -> PipeDiagram:
    """F_2 at the bottom stage with the zero ring above it, joined by the inclusion 0 -> F_2."""
    F2 = galois_ring(2, 1, 1)
    bottom = from_galois(F2)
    Z = zero_ring()
    rings = [bottom] + [Z] * (depth_bound - 1)
    maps = [lambda x: F2.zero()] + [_identity] * (depth_bound - 2)
    return pro_system(rings, maps, "0 -> F2")


def shift_ind_system(R: GaloisRing, depth_bound: int) -> PipeDiagram:
    """
    x^-1 R[[x]] as a 1-pipe: leaf (a, b, d) = R[x]/x^(d + 1 + b), ind maps multiply by x,
    pro maps truncate, the outer pro axis is constant.
    """
    cache = {}

    def leaf(idx):
        k = idx[2] + 1 + idx[1]
        if k not in cache:
            cache[k] = truncated_poly(R, k)
        return cache[k]

    def step(axis, idx):
        if axis == 0:
            return _identity
        if axis == 1:
            return lambda x: shift_up(tuple(x) + (R.zero(),), 1)
        k = idx[2] + idx[1]
        return lambda x: truncate(x, k)

    return PipeDiagram(
        name=f"x^-1 {R.label()}[[x]]",
        length=1,
        depth_bound=depth_bound,
        leaf_fn=leaf,
        step_fn=step,
    )


def quotient_ind_system(depth_bound: int) -> PipeDiagram:
    """1-pipe whose first ind map is the quotient F_2[x]/x^2 -> F_2."""
    F2 = galois_ring(2, 1, 1)
    big = truncated_poly(F2, 2)
    small = truncated_poly(F2, 1)

    def step(axis, idx):
        if axis == 1 and idx[1] == 0:
            return lambda x: truncate(x, 1)
        return _identity

    return PipeDiagram(
        name="F2[x]/x^2 -> F2 (ind)",
        length=1,
        depth_bound=depth_bound,
        leaf_fn=lambda idx: big if idx[1] == 0 else small,
        step_fn=step,
    )


def constant_diagram(ring: FiniteRingObj, length: int = 0, depth_bound: int = 4) -> PipeDiagram:
    return levelwise_constant(ring, length, depth_bound)


@dataclass
class ClogExample:
    """Q0 = i0(R[[x]]), Q1 = i1(R[[x]]), the levelwise quotient between them, and its kernel pro-ideal."""
    q0: PipeDiagram
    q1: PipeDiagram
    quotient: PipeMap
    kernel: List[FiniteRingObj]
    bijective: bool
    kernel_nonzero: bool


def clog_example(R: GaloisRing, depth: int) -> ClogExample:
    """
    A map realizing to a bijection with nonzero kernel.

    Kernel stage n (n = 1..depth) is (x^n), read inside R[x]/x^(depth + 1), hence nonzero.
    """
    tower = power_series_tower(R, depth + 1)
    q0 = include_level(tower, 0).diagram
    q1 = include_level(tower, 1).diagram
    quotient = PipeMap(
        source=q0,
        target=q1,
        reindex=lambda idx, d: (idx[0], idx[1], idx[0]),
        leaf_map=lambda idx: _identity,
        name="Q0 -> Q1",
    )
    bijective = is_bijective_at(quotient, depth)

    kernel = []
    for beta in range(depth):
        src = (beta, depth - 1, depth)
        target_index = (beta, depth - 1, 0)
        mid, f = quotient.at(target_index, depth)
        zero = q1.leaf(target_index).zero
        members = [
            x for x in q0.leaf(src).elements
            if f(q0.transport(src, mid, x)) == zero
        ]
        kernel.append(sub(q0.leaf(src), members, f"(x^{beta + 1})"))
    kernel_nonzero = all(stage.size > 1 for stage in kernel)
    bt.logging.debug(
        f"clog {R.label()} depth={depth} bijective={bijective} "
        f"kernel sizes={[stage.size for stage in kernel]}"
    )
    return ClogExample(
        q0=q0,
        q1=q1,
        quotient=quotient,
        kernel=kernel,
        bijective=bijective,
        kernel_nonzero=kernel_nonzero,
    )


def sample_diagrams(length: int, depth_bound: int = 4) -> List[PipeDiagram]:
    """Small diagrams of one length used by the realization property checks."""
    F2 = galois_ring(2, 1, 1)
    F3 = galois_ring(3, 1, 1)
    zero_pipes = [
        constant_diagram(from_galois(F2), 0, depth_bound),
        constant_diagram(from_galois(galois_ring(2, 2, 1)), 0, depth_bound),
        integer_tower(2, depth_bound),
        power_series_tower(F2, depth_bound),
        zero_map_system(3, depth_bound),
        power_series_tower(F3, min(depth_bound, 3)),
    ]
    if length == 0:
        return zero_pipes
    if length == 1:
        out = []
        for X in zero_pipes[:4]:
            out.append(include_level(X, 0).diagram)
            out.append(include_level(X, 1).diagram)
        out.append(shift_ind_system(F2, min(depth_bound, 3)))
        return out
    raise ValueError(f"no samples of length {length}")


def sample_pairs(count: int, depth_bound: int = 3) -> List[Tuple[PipeDiagram, PipeDiagram]]:
    """Deterministic list of same-length diagram pairs."""
    by_length = []
    for length in (0, 1):
        pool = sample_diagrams(length, depth_bound)
        by_length.append([(X, Y) for i, X in enumerate(pool) for Y in pool[i:]])
    pairs = [pair for group in zip(*by_length) for pair in group]
    return pairs[:count]
