# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

"""
Factored ideals over the example rings and their closures in the abbreviated portrait.

The rings are UFDs, so a closed set is fixed by the prime powers containing the ideal:
the closed point's powers up to the order of the generator, and each factor's powers
up to its multiplicity. Inverting a generator removes the nodes whose radical contains
it; completing at (x) keeps only the (x)-chain.
"""

import itertools
from dataclasses import dataclass
from tokenize import TokenError
from typing import FrozenSet, List, Sequence, Tuple

from sympy import Poly, symbols
from sympy.core.sympify import SympifyError
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.polyerrors import PolynomialError

from chromapipe.portrait.examples import example_ring, portrait_example
from chromapipe.portrait.graph import POINT, PRIME, PortraitNode, radical_contains
from chromapipe.types import NotFactored
from chromapipe.utils.config import DEFAULT_PORTRAIT_DEPTH

X, Y = symbols("x y")
TRANSFORMATIONS = standard_transformations + (convert_xor,)


@dataclass(frozen=True)
class IdealSpec:
    """(prod f_i^m_i) over a named example ring; zero=True is the zero ideal, no factors is (1)."""
    ring: str
    factors: Tuple[Tuple[str, int], ...] = ()
    zero: bool = False
    p: int = 2


@dataclass(frozen=True)
class PrimeFactor:
    label: str
    order: int
    multiplicity: int


MAX_DIVISOR_CANDIDATES = 1 << 14


def _label(poly: Poly) -> str:
    return str(poly.as_expr()).replace(" ", "").replace("**", "^")


def _divisor_candidates(gens: Sequence, degree: int, p: int):
    """Polynomials of total degree 1..degree with first nonzero coefficient 1."""
    monos = [(i, t - i) for t in range(0, degree + 1) for i in range(t, -1, -1)]
    if p ** len(monos) > MAX_DIVISOR_CANDIDATES:
        raise NotFactored(f"irreducibility search over degree {degree} divisors is too large")
    for coeffs in itertools.product(range(p), repeat=len(monos)):
        lead = next((c for c in coeffs if c), 0)
        if lead != 1 or not any(coeffs[1:]):
            continue
        yield Poly.from_dict({m: c for m, c in zip(monos, coeffs) if c}, *gens, modulus=p)


def is_irreducible(poly: Poly, p: int) -> bool:
    """Irreducibility over F_p; bivariate polynomials are checked by a divisor search."""
    d = poly.total_degree()
    if d == 1:
        return True
    used = [g for g in poly.gens if poly.degree(g) > 0]
    if len(used) == 1:
        _, parts = Poly(poly.as_expr(), used[0], modulus=p).factor_list()
        return len(parts) == 1 and parts[0][1] == 1
    for g in _divisor_candidates(poly.gens, d // 2, p):
        if g.total_degree() >= 1 and poly.rem(g).is_zero:
            return False
    return True


def parse_factor(expr: str, variables: Tuple[str, ...], p: int) -> Tuple[str, int]:
    """
    The canonical label and order of one irreducible distinguished polynomial over F_p.

    Raises:
        NotFactored: the expression is not a polynomial in the ring's variables, is a unit,
            or is reducible over F_p.
    """
    gens = [X, Y][: len(variables)]
    try:
        parsed = parse_expr(expr, local_dict={"x": X, "y": Y}, transformations=TRANSFORMATIONS)
    except (SympifyError, SyntaxError, TypeError, NameError, TokenError) as exc:
        raise NotFactored(f"cannot parse {expr!r}: {exc}") from exc
    extra = parsed.free_symbols - set(gens)
    if extra:
        raise NotFactored(f"{expr!r} uses {sorted(str(s) for s in extra)} outside {variables}")
    try:
        poly = Poly(parsed, *gens, modulus=p)
    except PolynomialError as exc:
        raise NotFactored(f"{expr!r} is not a polynomial: {exc}") from exc
    if poly.is_zero or poly.total_degree() == 0:
        raise NotFactored(f"{expr!r} is a constant")
    if poly.as_dict().get((0,) * len(gens), 0) % p:
        raise NotFactored(f"{expr!r} has a unit constant term")
    if not is_irreducible(poly, p):
        raise NotFactored(f"{expr!r} factors over F_{p}")
    monic = poly.monic()
    order = min(sum(m) for m in monic.monoms())
    return _label(monic), order


def factor_ideal(J: IdealSpec) -> List[PrimeFactor]:
    """
    Raises:
        NotFactored: a multiplicity below 1, a bad factor, or two associate factors.
    """
    ring = example_ring(J.ring)
    out: List[PrimeFactor] = []
    seen = set()
    for expr, mult in J.factors:
        if mult < 1:
            raise NotFactored(f"multiplicity {mult} of {expr!r} is below 1")
        label, order = parse_factor(expr, ring.variables, J.p)
        if label in seen:
            raise NotFactored(f"{expr!r} is associate to another factor")
        seen.add(label)
        out.append(PrimeFactor(label, order, mult))
    return out


def closure(J: IdealSpec, depth: int = DEFAULT_PORTRAIT_DEPTH) -> FrozenSet[PortraitNode]:
    """
    Nodes of the portrait containing J, powers capped at depth.

    Raises:
        UnknownExample: J names no example ring.
        NotFactored: J's factored form is invalid.
    """
    ring = example_ring(J.ring)
    if J.zero:
        return frozenset(portrait_example(J.ring, depth).nodes)
    factors = factor_ideal(J)
    nodes = set()
    if len(ring.variables) == 2:
        total = sum(f.order * f.multiplicity for f in factors)
        nodes |= {PortraitNode(POINT, "x,y", j) for j in range(1, min(total, depth) + 1)}
    for f in factors:
        nodes |= {PortraitNode(PRIME, f.label, j, f.order) for j in range(1, min(f.multiplicity, depth) + 1)}
    for g in ring.inverted:
        nodes = {n for n in nodes if not radical_contains(n, g)}
    for g in ring.completed:
        nodes = {n for n in nodes if n.kind == PRIME and n.prime == g}
    return frozenset(nodes)


def divides(J: IdealSpec, K: IdealSpec) -> bool:
    """Whether J's generator divides K's, so that K is contained in J."""
    if K.zero:
        return True
    if J.zero:
        return False
    theirs = {f.label: f.multiplicity for f in factor_ideal(K)}
    return all(theirs.get(f.label, 0) >= f.multiplicity for f in factor_ideal(J))
