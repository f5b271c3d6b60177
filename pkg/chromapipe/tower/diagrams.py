# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

"""
Pro/ind diagrams of finite rings over N-indexed axes.

A diagram of length n has 2n + 1 axes, outermost first: pro, ind, pro, ..., pro.
Length -1 is a single finite ring with no axes. Structure maps are levelwise:
`step(axis, index)` moves one coordinate, down by one on a pro axis and up by one
on an ind axis.
"""

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, Optional, Tuple

import bittensor as bt

from chromapipe.tower.rings import (
    FiniteRingObj,
    is_injective,
    is_surjective,
    product as ring_product,
    sub,
)
from chromapipe.types import BadLevel, DepthExceeded, Report

Index = Tuple[int, ...]
PRO = "pro"
IND = "ind"


def axis_kind(axis: int) -> str:
    return PRO if axis % 2 == 0 else IND


def _identity(x):
    return x


@dataclass(frozen=True, eq=False)
class PipeDiagram:
    """An n-pipe given by leaf rings and levelwise structure maps, evaluated up to depth_bound per axis."""
    name: str
    length: int
    depth_bound: int
    leaf_fn: Callable[[Index], FiniteRingObj]
    step_fn: Callable[[int, Index], Callable[[Any], Any]]
    rigid: bool = False
    _leaves: Dict[Index, FiniteRingObj] = field(default_factory=dict, repr=False)

    @property
    def axes(self) -> int:
        return 2 * self.length + 1 if self.length >= 0 else 0

    def _check_index(self, index: Index) -> None:
        if len(index) != self.axes:
            raise ValueError(f"{self.name}: index {index} has wrong arity, expected {self.axes}")
        for i in index:
            if not 0 <= i < self.depth_bound:
                raise DepthExceeded(f"{self.name}: index {index} outside depth bound {self.depth_bound}")

    def leaf(self, index: Index) -> FiniteRingObj:
        index = tuple(index)
        cached = self._leaves.get(index)
        if cached is None:
            self._check_index(index)
            cached = self.leaf_fn(index)
            self._leaves[index] = cached
        return cached

    def neighbor(self, axis: int, index: Index) -> Index:
        move = -1 if axis_kind(axis) == PRO else 1
        out = list(index)
        out[axis] += move
        return tuple(out)

    def has_step(self, axis: int, index: Index) -> bool:
        nxt = self.neighbor(axis, index)[axis]
        return 0 <= nxt < self.depth_bound

    def step(self, axis: int, index: Index) -> Callable[[Any], Any]:
        """Structure map leaf(index) -> leaf(neighbor(axis, index))."""
        index = tuple(index)
        self._check_index(index)
        if not self.has_step(axis, index):
            raise DepthExceeded(f"{self.name}: no {axis_kind(axis)} step on axis {axis} from {index}")
        return self.step_fn(axis, index)

    def transport(self, src: Index, dst: Index, x: Any) -> Any:
        """Compose structure maps from src to dst, one axis at a time."""
        cur = list(src)
        for axis in range(self.axes):
            kind = axis_kind(axis)
            if kind == PRO and dst[axis] > cur[axis]:
                raise ValueError(f"{self.name}: pro axis {axis} cannot move up {cur[axis]} -> {dst[axis]}")
            if kind == IND and dst[axis] < cur[axis]:
                raise ValueError(f"{self.name}: ind axis {axis} cannot move down {cur[axis]} -> {dst[axis]}")
            while cur[axis] != dst[axis]:
                x = self.step(axis, tuple(cur))(x)
                cur = list(self.neighbor(axis, tuple(cur)))
        return x

    def indices(self, depth: int) -> Iterator[Index]:
        return itertools.product(range(depth), repeat=self.axes)

    def corner(self, depth: int) -> Index:
        return (depth - 1,) * self.axes

    def restrict(self, prefix: Index) -> "PipeDiagram":
        """The sub-diagram obtained by fixing the outermost coordinates."""
        k = len(prefix)
        if k % 2 or k > self.axes - 1:
            raise ValueError(f"prefix {prefix} must fix a (pro, ind) pair")
        prefix = tuple(prefix)
        return PipeDiagram(
            name=f"{self.name}{list(prefix)}",
            length=self.length - k // 2,
            depth_bound=self.depth_bound,
            leaf_fn=lambda idx: self.leaf(prefix + tuple(idx)),
            step_fn=lambda axis, idx: self.step(axis + k, prefix + tuple(idx)),
            rigid=self.rigid,
        )


@dataclass(frozen=True, eq=False)
class PipeMap:
    """
    A levelwise map source -> target.

    `reindex(target_index, depth)` picks the source index feeding each target index and
    `leaf_map(target_index)` is the leaf map source.leaf(reindex(...)) -> target.leaf(target_index).
    Ind coordinates must be preserved at the corner so the map is realizable.
    """
    source: PipeDiagram
    target: PipeDiagram
    reindex: Callable[[Index, int], Index]
    leaf_map: Callable[[Index], Callable[[Any], Any]]
    name: str = "map"

    def at(self, target_index: Index, depth: int) -> Tuple[Index, Callable[[Any], Any]]:
        """Source index and leaf map feeding one target index."""
        target_index = tuple(target_index)
        return self.reindex(target_index, depth), self.leaf_map(target_index)

    def realized(self, depth: int) -> Callable[[Any], Any]:
        src_corner = self.source.corner(depth)
        tgt_corner = self.target.corner(depth)
        src_index = self.reindex(tgt_corner, depth)
        for axis, i in enumerate(src_index):
            if axis_kind(axis) == IND and i != depth - 1:
                raise ValueError(f"{self.name}: ind coordinate {axis} not at the corner")
        f = self.leaf_map(tgt_corner)
        return lambda x: f(self.source.transport(src_corner, src_index, x))


@dataclass
class Realization:
    """Depth-bounded realization: the ring, the index it is read from, and the stabilization flag."""
    ring: FiniteRingObj
    depth: int
    index: Index
    stabilized: bool


def _check_depth(X: PipeDiagram, depth: int) -> None:
    if depth < 1 or depth > X.depth_bound:
        raise DepthExceeded(f"{X.name}: depth {depth} outside [1, {X.depth_bound}]")


def realize(X: PipeDiagram, depth: int) -> Realization:
    """
    Iterated limit/colimit of X restricted to indices < depth on every axis.

    Over a finite N-chain the limit of a pro-system is its top object and the colimit of an
    ind-system is its last object, so the realization is read at the corner index. The flag
    reports whether the corner at depth + 1 has the same size; it is False when depth + 1
    exceeds the bound.
    """
    _check_depth(X, depth)
    corner = X.corner(depth)
    ring = X.leaf(corner)
    stabilized = False
    if X.axes == 0:
        stabilized = True
    elif depth + 1 <= X.depth_bound:
        stabilized = X.leaf(X.corner(depth + 1)).size == ring.size
    bt.logging.debug(f"realize {X.name} depth={depth} size={ring.size} stabilized={stabilized}")
    return Realization(ring=ring, depth=depth, index=corner, stabilized=stabilized)


def realize_map(f: PipeMap, depth: int) -> Tuple[Realization, Realization, Callable[[Any], Any]]:
    return realize(f.source, depth), realize(f.target, depth), f.realized(depth)


def is_bijective_at(f: PipeMap, depth: int) -> bool:
    src, tgt, g = realize_map(f, depth)
    return is_injective(g, src.ring) and is_surjective(g, src.ring, tgt.ring)


def check_fine(X: PipeDiagram, depth: int) -> Report:
    """Injectivity of every realized inner-to-outer map, recursively, within depth."""
    _check_depth(X, depth)
    if X.length <= 0:
        return Report(True, "fine", detail="length <= 0")
    rest = (depth - 1,) * (X.axes - 2)
    for alpha in range(depth):
        for beta in range(depth):
            src = (alpha, beta) + rest
            dst = (alpha, depth - 1) + rest
            ring = X.leaf(src)
            if not is_injective(lambda x: X.transport(src, dst, x), ring):
                return Report(False, "fine", index=(alpha, beta), detail="realized map not injective")
            if X.length >= 2:
                inner = check_fine(X.restrict((alpha, beta)), depth)
                if not inner.ok:
                    return Report(False, "fine", index=(alpha, beta) + tuple(inner.index or ()), detail=inner.detail)
    return Report(True, "fine")


def check_cofine(X: PipeDiagram, depth: int) -> Report:
    """Surjectivity of the realization onto each outer component, recursively, within depth."""
    _check_depth(X, depth)
    if X.length < 0:
        return Report(True, "cofine", detail="length -1")
    corner = X.corner(depth)
    top = X.leaf(corner)
    for lam in range(depth):
        dst = (lam,) + corner[1:]
        target = X.leaf(dst)
        if not is_surjective(lambda x: X.transport(corner, dst, x), top, target):
            return Report(False, "cofine", index=(lam,), detail="projection not surjective")
    if X.length >= 1:
        for lam in range(depth):
            for mu in range(depth):
                inner = check_cofine(X.restrict((lam, mu)), depth)
                if not inner.ok:
                    return Report(False, "cofine", index=(lam, mu) + tuple(inner.index or ()), detail=inner.detail)
    return Report(True, "cofine")


def check_commutes(X: PipeDiagram, depth: int) -> Report:
    """Every square of structure maps within depth commutes, checked elementwise."""
    _check_depth(X, depth)
    for index in X.indices(depth):
        ring = X.leaf(index)
        for a, b in itertools.combinations(range(X.axes), 2):
            if not (X.has_step(a, index) and X.has_step(b, index)):
                continue
            ia = X.neighbor(a, index)
            ib = X.neighbor(b, index)
            if max(ia) >= depth or max(ib) >= depth:
                continue
            fa, fb = X.step(a, index), X.step(b, index)
            ga, gb = X.step(b, ia), X.step(a, ib)
            for x in ring.elements:
                if gb(fb(x)) != ga(fa(x)):
                    return Report(False, "commutes", index=index, detail=f"axes {a},{b}")
    return Report(True, "commutes")


@dataclass
class Cofineified:
    """Eventual-image diagram with its inclusion into the source."""
    diagram: PipeDiagram
    inclusion: PipeMap
    stabilized: bool


def cofineify0(X: PipeDiagram, depth: int) -> Cofineified:
    """
    Eventual images of a 0-pipe within a window.

    evim(X_a) is the image of X_depth -> X_a for a < depth; stabilization means the images
    from X_depth and X_(depth-1) agree for every a <= depth - 2.
    """
    if X.length != 0:
        raise ValueError(f"{X.name}: eventual images need a 0-pipe, got length {X.length}")
    if depth < 1 or depth + 1 > X.depth_bound:
        raise DepthExceeded(f"{X.name}: eventual images need depth + 1 <= {X.depth_bound}")
    top = X.leaf((depth,))
    images = []
    for alpha in range(depth):
        members = {X.transport((depth,), (alpha,), x) for x in top.elements}
        images.append(sub(X.leaf((alpha,)), members, f"evim({X.leaf((alpha,)).name})"))
    prev = X.leaf((depth - 1,))
    stabilized = True
    for alpha in range(depth - 1):
        from_prev = {X.transport((depth - 1,), (alpha,), x) for x in prev.elements}
        if from_prev != set(images[alpha].elements):
            stabilized = False
            break
    diagram = PipeDiagram(
        name=f"evim({X.name})",
        length=0,
        depth_bound=depth,
        leaf_fn=lambda idx: images[idx[0]],
        step_fn=lambda axis, idx: X.step(axis, idx),
        rigid=X.rigid,
    )
    inclusion = PipeMap(
        source=diagram,
        target=X,
        reindex=lambda idx, d: idx,
        leaf_map=lambda idx: _identity,
        name=f"evim({X.name}) -> {X.name}",
    )
    bt.logging.debug(f"cofineify0 {X.name} depth={depth} stabilized={stabilized}")
    return Cofineified(diagram=diagram, inclusion=inclusion, stabilized=stabilized)


def _inserted_axes(length: int, m: int) -> Tuple[int, ...]:
    if length < 0:
        return (0,)
    if m == 0:
        return (0, 1)
    return (2 * m - 1, 2 * m)


@dataclass
class LevelInclusion:
    """i_m X with the comparison map back to X."""
    diagram: PipeDiagram
    comparison: PipeMap
    inserted: Tuple[int, ...]


def include_level(X: PipeDiagram, m: int) -> LevelInclusion:
    """Insert a constant axis pair so that X becomes a pipe one length up."""
    if not 0 <= m <= X.length + 1:
        raise BadLevel(f"{X.name}: m={m} outside [0, {X.length + 1}]")
    inserted = _inserted_axes(X.length, m)
    inserted_set = set(inserted)

    def project(idx: Index) -> Index:
        return tuple(i for k, i in enumerate(idx) if k not in inserted_set)

    def original_axis(axis: int) -> int:
        return axis - sum(1 for k in inserted if k < axis)

    def step_fn(axis: int, idx: Index):
        if axis in inserted_set:
            return _identity
        return X.step(original_axis(axis), project(idx))

    diagram = PipeDiagram(
        name=f"i{m}({X.name})",
        length=X.length + 1,
        depth_bound=X.depth_bound,
        leaf_fn=lambda idx: X.leaf(project(idx)),
        step_fn=step_fn,
        rigid=X.rigid,
    )

    def reindex(idx: Index, depth: int) -> Index:
        out = list(idx)
        for k in inserted:
            out.insert(k, depth - 1)
        return tuple(out)

    comparison = PipeMap(
        source=diagram,
        target=X,
        reindex=reindex,
        leaf_map=lambda idx: _identity,
        name=f"{diagram.name} -> {X.name}",
    )
    return LevelInclusion(diagram=diagram, comparison=comparison, inserted=inserted)


def product(X: PipeDiagram, Y: PipeDiagram) -> PipeDiagram:
    """Levelwise product of two diagrams of the same length."""
    if X.length != Y.length:
        raise ValueError(f"length mismatch: {X.length} vs {Y.length}")

    def step_fn(axis: int, idx: Index):
        f, g = X.step(axis, idx), Y.step(axis, idx)
        return lambda pair: (f(pair[0]), g(pair[1]))

    return PipeDiagram(
        name=f"({X.name} x {Y.name})",
        length=X.length,
        depth_bound=min(X.depth_bound, Y.depth_bound),
        leaf_fn=lambda idx: ring_product(X.leaf(idx), Y.leaf(idx)),
        step_fn=step_fn,
        rigid=X.rigid and Y.rigid,
    )


def projection(XY: PipeDiagram, factor: PipeDiagram, which: int) -> PipeMap:
    return PipeMap(
        source=XY,
        target=factor,
        reindex=lambda idx, d: idx,
        leaf_map=lambda idx: (lambda pair: pair[which]),
        name=f"pr{which}",
    )


def check_product(X: PipeDiagram, Y: PipeDiagram, depth: int) -> Report:
    """realize(X x Y) -> realize(X) x realize(Y) is a bijection."""
    XY = product(X, Y)
    src = realize(XY, depth).ring
    target = ring_product(realize(X, depth).ring, realize(Y, depth).ring)
    p0 = projection(XY, X, 0).realized(depth)
    p1 = projection(XY, Y, 1).realized(depth)
    pair = lambda z: (p0(z), p1(z))
    ok = is_injective(pair, src) and is_surjective(pair, src, target)
    return Report(ok, "product", index=depth, detail="" if ok else f"{XY.name} not bijective")


def levelwise_constant(ring: FiniteRingObj, length: int, depth_bound: int, name: Optional[str] = None) -> PipeDiagram:
    """The constant diagram of a given length on one ring."""
    return PipeDiagram(
        name=name or f"const({ring.name})",
        length=length,
        depth_bound=depth_bound,
        leaf_fn=lambda idx: ring,
        step_fn=lambda axis, idx: _identity,
    )
