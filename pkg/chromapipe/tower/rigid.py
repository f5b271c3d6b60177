# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

from dataclasses import dataclass
from typing import Any, Callable, Sequence, Tuple

from chromapipe.coeff.galois import GaloisRing, GrElement
from chromapipe.tower.diagrams import Index, PipeDiagram
from chromapipe.tower.rings import additive_closure, sub, truncate, truncated_poly
from chromapipe.types import NotRigid


@dataclass(frozen=True, eq=False)
class RigidPresentation:
    """A diagram of finite algebras over a base ring, with the base acting on every leaf."""
    base: str
    diagram: PipeDiagram
    act: Callable[[Index, Any, Any], Any]


def _poly_scalar(R: GaloisRing, g, k: int) -> Tuple[GrElement, ...]:
    """A base polynomial as an element of R[u]/u^k; ints and GrElements are constants."""
    if isinstance(g, int):
        g = (R.from_int(g),)
    elif isinstance(g, GrElement):
        g = (g,)
    else:
        g = tuple(c if isinstance(c, GrElement) else R.from_int(c) for c in g)
    g = tuple(g[:k])
    return g + (R.zero(),) * (k - len(g))


def rigid_tower(R: GaloisRing, depth_bound: int) -> RigidPresentation:
    """The u-adic tower ... -> R[u]/u^3 -> R[u]/u^2 -> R over the base R[u]."""
    rings = [truncated_poly(R, j + 1) for j in range(depth_bound)]
    diagram = PipeDiagram(
        name=f"{R.label()}[[u]]",
        length=0,
        depth_bound=depth_bound,
        leaf_fn=lambda idx: rings[idx[0]],
        step_fn=lambda axis, idx: (lambda x, k=idx[0]: truncate(x, k)),
        rigid=True,
    )

    def act(idx: Index, g, a):
        leaf = rings[idx[0]]
        return leaf.mul(_poly_scalar(R, g, idx[0] + 1), a)

    return RigidPresentation(base=f"{R.label()}[u]", diagram=diagram, act=act)


def rigid_quotient(S: RigidPresentation, generators: Sequence[Any]) -> RigidPresentation:
    """
    Replace every object A by IA, the additive closure of {g a : g in generators, a in A},
    with the restricted structure maps.
    """
    if not S.diagram.rigid:
        raise NotRigid(f"{S.diagram.name} is not tagged rigid")
    gens = tuple(generators)
    label = ",".join(str(g) for g in gens) or "0"
    X = S.diagram

    def leaf(idx: Index):
        A = X.leaf(idx)
        seeds = [S.act(idx, g, a) for g in gens for a in A.elements]
        return sub(A, additive_closure(A, seeds), f"({label}){A.name}")

    diagram = PipeDiagram(
        name=f"({label}){X.name}",
        length=X.length,
        depth_bound=X.depth_bound,
        leaf_fn=leaf,
        step_fn=X.step,
        rigid=True,
    )
    return RigidPresentation(base=S.base, diagram=diagram, act=S.act)
