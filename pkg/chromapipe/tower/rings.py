# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Hashable, Iterable, Optional, Tuple

from chromapipe.coeff.galois import GaloisRing, GrElement, galois_ring


@dataclass(frozen=True, eq=False)
class FiniteRingObj:
    """A finite ring (or non-unital ideal) with an explicit carrier and closed-form operations."""
    name: str
    elements: Tuple[Hashable, ...]
    add: Callable[[Any, Any], Any]
    mul: Callable[[Any, Any], Any]
    neg: Callable[[Any], Any]
    zero: Hashable
    one: Optional[Hashable] = None
    _members: Dict[Hashable, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for i, e in enumerate(self.elements):
            self._members[e] = i

    @property
    def size(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._members

    def index_of(self, x) -> int:
        return self._members[x]

    def is_unital(self) -> bool:
        return self.one is not None

    def check_closed(self) -> bool:
        """Operations keep the carrier closed (exhaustive)."""
        for x in self.elements:
            if self.neg(x) not in self:
                return False
            for y in self.elements:
                if self.add(x, y) not in self or self.mul(x, y) not in self:
                    return False
        return True


def from_galois(R: GaloisRing) -> FiniteRingObj:
    """The finite ring underlying a Galois ring descriptor."""
    return FiniteRingObj(
        name=R.label(),
        elements=tuple(R.elements()),
        add=lambda x, y: x + y,
        mul=lambda x, y: x * y,
        neg=lambda x: -x,
        zero=R.zero(),
        one=R.one(),
    )


def integers_mod(p: int, k: int) -> FiniteRingObj:
    """Z/p^k."""
    return from_galois(galois_ring(p, k, 1))


def zero_ring() -> FiniteRingObj:
    return FiniteRingObj(
        name="0",
        elements=(0,),
        add=lambda x, y: 0,
        mul=lambda x, y: 0,
        neg=lambda x: 0,
        zero=0,
        one=0,
    )


def _tp_mul(R: GaloisRing, k: int):
    def mul(x, y):
        out = [R.zero()] * k
        for i, xi in enumerate(x):
            if xi.is_zero():
                continue
            for j in range(k - i):
                if not y[j].is_zero():
                    out[i + j] = out[i + j] + xi * y[j]
        return tuple(out)
    return mul


def truncated_poly(R: GaloisRing, k: int) -> FiniteRingObj:
    """R[x]/x^k with elements as coefficient tuples, constant term first."""
    base = tuple(R.elements())
    carrier = tuple(tuple(c) for c in itertools.product(base, repeat=k))
    zero = tuple([R.zero()] * k)
    one = tuple([R.one()] + [R.zero()] * (k - 1)) if k > 0 else ()
    return FiniteRingObj(
        name=f"{R.label()}[x]/x^{k}",
        elements=carrier,
        add=lambda x, y: tuple(a + b for a, b in zip(x, y)),
        mul=_tp_mul(R, k),
        neg=lambda x: tuple(-a for a in x),
        zero=zero,
        one=one,
    )


def truncate(x: Tuple[GrElement, ...], k: int) -> Tuple[GrElement, ...]:
    return tuple(x[:k])


def shift_up(x: Tuple[GrElement, ...], by: int = 1) -> Tuple[GrElement, ...]:
    """Multiplication by x^by inside R[x]/x^len."""
    if by <= 0:
        return x
    zero = x[0] - x[0]
    return tuple([zero] * by + list(x[: len(x) - by]))


def product(A: FiniteRingObj, B: FiniteRingObj) -> FiniteRingObj:
    """Cartesian product ring A x B."""
    carrier = tuple((a, b) for a in A.elements for b in B.elements)
    one = (A.one, B.one) if A.is_unital() and B.is_unital() else None
    return FiniteRingObj(
        name=f"({A.name} x {B.name})",
        elements=carrier,
        add=lambda x, y: (A.add(x[0], y[0]), B.add(x[1], y[1])),
        mul=lambda x, y: (A.mul(x[0], y[0]), B.mul(x[1], y[1])),
        neg=lambda x: (A.neg(x[0]), B.neg(x[1])),
        zero=(A.zero, B.zero),
        one=one,
    )


def sub(A: FiniteRingObj, members: Iterable[Hashable], name: str) -> FiniteRingObj:
    """Sub-object of A on the given members, ordered as in A. Unital only if it contains A's one."""
    wanted = set(members)
    carrier = tuple(e for e in A.elements if e in wanted)
    one = A.one if A.one is not None and A.one in wanted else None
    return FiniteRingObj(
        name=name,
        elements=carrier,
        add=A.add,
        mul=A.mul,
        neg=A.neg,
        zero=A.zero,
        one=one,
    )


def additive_closure(A: FiniteRingObj, seeds: Iterable[Hashable]) -> Tuple[Hashable, ...]:
    """Smallest additive subgroup of A containing the seeds."""
    closed = {A.zero}
    frontier = [s for s in seeds if s not in closed]
    closed.update(frontier)
    while frontier:
        fresh = []
        for x in frontier:
            for y in list(closed):
                z = A.add(x, y)
                if z not in closed:
                    closed.add(z)
                    fresh.append(z)
        frontier = fresh
    return tuple(e for e in A.elements if e in closed)


def image(f: Callable[[Any], Any], A: FiniteRingObj) -> set:
    return {f(a) for a in A.elements}


def is_injective(f: Callable[[Any], Any], A: FiniteRingObj) -> bool:
    return len(image(f, A)) == A.size


def is_surjective(f: Callable[[Any], Any], A: FiniteRingObj, B: FiniteRingObj) -> bool:
    return image(f, A) >= set(B.elements)


def is_ring_map(f: Callable[[Any], Any], A: FiniteRingObj, B: FiniteRingObj) -> bool:
    """Exhaustive additive and multiplicative check; units are compared only when both sides are unital."""
    for x in A.elements:
        for y in A.elements:
            if f(A.add(x, y)) != B.add(f(x), f(y)):
                return False
            if f(A.mul(x, y)) != B.mul(f(x), f(y)):
                return False
    if A.is_unital() and B.is_unital():
        return f(A.one) == B.one
    return True


def is_additive_map(f: Callable[[Any], Any], A: FiniteRingObj, B: FiniteRingObj) -> bool:
    return all(f(A.add(x, y)) == B.add(f(x), f(y)) for x in A.elements for y in A.elements)
