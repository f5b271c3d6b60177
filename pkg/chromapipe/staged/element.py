# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

"""
Elements of staged rings in fraction normal form.

An element at stage s is a numerator sum_e c_e u^e over GR(p, a, n) divided by
prod_g g^(d_g), one exponent per generator inverted by stage s (g = 0 is p).

Normal form:
  - zero coefficients are dropped;
  - a monomial is dropped when its effective u_i exponent (e_i minus d_i for an
    inverted u_i) reaches D;
  - a coefficient is reduced modulo p^k where k is the smallest N[s'] minus the
    I_t-degree of its bare monomial, over stages s' <= s of height t >= 1; the degree
    is sum_(i<t) e_i minus the denominator exponents of inverted generators in I_t;
  - common factors of inverted generators are stripped from numerator and
    denominator;
  - zero carries all-zero denominators.
The window and completion rules are invariant under stripping.

Once p is inverted the p-denominator is signed: the numerator's whole p-content moves
into it, so a nonzero numerator always has a unit coefficient and p^k for k >= a stays
nonzero. Coefficients then carry a relative precision of a digits, and earlier
completions only cut the u-part of a monomial's degree.
"""

from dataclasses import dataclass
from typing import TYPE_CHECKING, Dict, Iterable, List, Sequence, Tuple

from chromapipe.coeff.galois import GrElement
from chromapipe.types import MixedRings, PrecisionExhausted

if TYPE_CHECKING:
    from chromapipe.staged.ring import StagedRing

Exp = Tuple[int, ...]


def gen_name(g: int) -> str:
    return "p" if g == 0 else f"u{g}"


@dataclass(frozen=True)
class StagedElement:
    """Canonical element of X_stage."""
    ring: "StagedRing"
    stage: int
    terms: Tuple[Tuple[Exp, GrElement], ...]
    denoms: Tuple[int, ...]

    @property
    def spec(self):
        return self.ring.spec

    def term_dict(self) -> Dict[Exp, GrElement]:
        return dict(self.terms)

    def inverted(self) -> Tuple[int, ...]:
        return self.ring.spec.inverted(self.stage)

    def denom_of(self, g: int) -> int:
        inv = self.inverted()
        return self.denoms[inv.index(g)] if g in inv else 0

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        if len(self.terms) != 1 or any(self.denoms):
            return False
        exp, c = self.terms[0]
        return not any(exp) and c.is_one()

    def constant(self) -> GrElement:
        """Coefficient of the exponent-zero monomial of the numerator."""
        zero = (0,) * self.ring.spec.n_gens
        return self.term_dict().get(zero, self.ring.spec.R.zero())

    def __add__(self, other):
        return elem_add(self, _coerce(self, other))

    __radd__ = __add__

    def __sub__(self, other):
        return elem_sub(self, _coerce(self, other))

    def __rsub__(self, other):
        return elem_sub(_coerce(self, other), self)

    def __neg__(self):
        return elem_neg(self)

    def __mul__(self, other):
        return elem_mul(self, _coerce(self, other))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers go through try_invert")
        result = self.ring.one(self.stage)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __str__(self) -> str:
        return render_element(self)


def _coerce(x: StagedElement, other):
    if isinstance(other, StagedElement):
        return other
    if isinstance(other, int):
        return x.ring.from_int(other, x.stage)
    if isinstance(other, GrElement):
        return x.ring.constant(other, x.stage)
    raise TypeError(f"cannot combine staged element with {type(other).__name__}")


def effective_exponents(spec, exp: Exp, denoms_by_gen: Dict[int, int]) -> Tuple[int, ...]:
    return tuple(e - denoms_by_gen.get(i + 1, 0) for i, e in enumerate(exp))


def monomial_degree(spec, t: int, exp: Exp, c: GrElement, denoms_by_gen: Dict[int, int]) -> int:
    """Effective I_t-degree of one monomial."""
    if t <= 0:
        return 0
    return c.val() + u_degree(spec, t, exp, denoms_by_gen) - denoms_by_gen.get(0, 0)


def u_degree(spec, t: int, exp: Exp, denoms_by_gen: Dict[int, int]) -> int:
    """The I_t-degree of a monomial without its p part."""
    deg = sum(exp[: max(t - 1, 0)])
    for g, d in denoms_by_gen.items():
        if g and d and spec.in_ideal(g, t):
            deg -= d
    return deg


def monomial_precision(spec, stage: int, exp: Exp, denoms_by_gen: Dict[int, int]) -> int:
    """
    Number of p-adic digits a coefficient keeps at this monomial; 0 or less means the
    monomial is dropped. Capped at the coefficient precision a.
    """
    D = spec.profile.D
    for i, e in enumerate(exp):
        if e - denoms_by_gen.get(i + 1, 0) >= D:
            return 0
    rational = spec.is_rational(stage)
    keep = spec.profile.a
    for s in range(1, stage + 1):
        t = spec.heights[s - 1]
        if t < 1:
            continue
        if rational:
            if u_degree(spec, t, exp, denoms_by_gen) >= spec.profile.depth_at(s):
                return 0
            continue
        rest = monomial_degree(spec, t, exp, spec.R.one(), denoms_by_gen)
        keep = min(keep, spec.profile.depth_at(s) - rest)
    return keep


def reduce_coefficient(c: GrElement, digits: int) -> GrElement:
    """c modulo p^digits, kept in the same ring."""
    if digits >= c.ring.a:
        return c
    if digits <= 0:
        return c.ring.zero()
    m = c.ring.p ** digits
    return GrElement(c.ring, tuple(x % m for x in c.coeffs))


def _divisible(terms: Dict[Exp, GrElement], g: int) -> bool:
    if g == 0:
        return all(c.val() >= 1 for c in terms.values())
    return all(exp[g - 1] >= 1 for exp in terms)


def _divide(terms: Dict[Exp, GrElement], g: int, balanced: bool = False) -> Dict[Exp, GrElement]:
    if g == 0:
        return {exp: c.div_p(balanced=balanced) for exp, c in terms.items()}
    out = {}
    for exp, c in terms.items():
        e = list(exp)
        e[g - 1] -= 1
        out[tuple(e)] = c
    return out


def normalize(ring: "StagedRing", stage: int, terms: Dict[Exp, GrElement], denoms: Sequence[int]) -> StagedElement:
    """Bring raw numerator/denominator data into canonical form at a stage."""
    spec = ring.spec
    inv = spec.inverted(stage)
    denoms = list(denoms)
    if len(denoms) != len(inv):
        raise ValueError(f"stage {stage} expects {len(inv)} denominator exponents, got {len(denoms)}")
    by_gen = dict(zip(inv, denoms))
    kept = {}
    for exp, c in terms.items():
        c = reduce_coefficient(c, monomial_precision(spec, stage, exp, by_gen))
        if not c.is_zero():
            kept[exp] = c
    for j, g in enumerate(inv):
        signed = g == 0
        while kept and (signed or denoms[j] > 0) and _divisible(kept, g):
            kept = _divide(kept, g, balanced=signed)
            denoms[j] -= 1
    if not kept:
        denoms = [0] * len(inv)
    M = spec.profile.M
    for g, d in zip(inv, denoms):
        if d > M:
            raise PrecisionExhausted(f"denominator {gen_name(g)}^{d} exceeds cap M={M}", stage=stage)
    ordered = tuple(sorted(kept.items(), key=lambda item: item[0]))
    return StagedElement(ring=ring, stage=stage, terms=ordered, denoms=tuple(denoms))


def _check_same(x: StagedElement, y: StagedElement) -> None:
    if x.ring.spec != y.ring.spec:
        raise MixedRings(f"{x.ring.spec.label()} vs {y.ring.spec.label()}")


def promote(x: StagedElement, stage: int) -> StagedElement:
    """The structure map X_(x.stage) -> X_stage."""
    if stage == x.stage:
        return x
    if stage < x.stage:
        raise ValueError(f"cannot move from stage {x.stage} down to {stage}")
    spec = x.ring.spec
    old = dict(zip(spec.inverted(x.stage), x.denoms))
    denoms = [old.get(g, 0) for g in spec.inverted(stage)]
    return normalize(x.ring, stage, x.term_dict(), denoms)


def align(x: StagedElement, y: StagedElement) -> Tuple[StagedElement, StagedElement]:
    _check_same(x, y)
    s = max(x.stage, y.stage)
    return promote(x, s), promote(y, s)


def _scale(spec, terms: Dict[Exp, GrElement], g: int, k: int) -> Dict[Exp, GrElement]:
    """Multiply a numerator by g^k."""
    if k == 0:
        return terms
    if g == 0:
        factor = spec.R.from_int(spec.p ** k)
        return {exp: c * factor for exp, c in terms.items()}
    out = {}
    for exp, c in terms.items():
        e = list(exp)
        e[g - 1] += k
        out[tuple(e)] = c
    return out


def _accumulate(target: Dict[Exp, GrElement], source: Dict[Exp, GrElement]) -> None:
    for exp, c in source.items():
        if exp in target:
            target[exp] = target[exp] + c
        else:
            target[exp] = c


def elem_add(x: StagedElement, y: StagedElement) -> StagedElement:
    x, y = align(x, y)
    spec = x.ring.spec
    inv = spec.inverted(x.stage)
    common = [max(a, b) for a, b in zip(x.denoms, y.denoms)]
    tx, ty = x.term_dict(), y.term_dict()
    for g, a, b, c in zip(inv, x.denoms, y.denoms, common):
        tx = _scale(spec, tx, g, c - a)
        ty = _scale(spec, ty, g, c - b)
    total = dict(tx)
    _accumulate(total, ty)
    return normalize(x.ring, x.stage, total, common)


def elem_neg(x: StagedElement) -> StagedElement:
    return StagedElement(
        ring=x.ring,
        stage=x.stage,
        terms=tuple((exp, -c) for exp, c in x.terms),
        denoms=x.denoms,
    )


def elem_sub(x: StagedElement, y: StagedElement) -> StagedElement:
    return elem_add(x, elem_neg(y))


def elem_mul(x: StagedElement, y: StagedElement) -> StagedElement:
    """Product in canonical form: numerators convolve, denominator exponents add, then strip."""
    x, y = align(x, y)
    if x.is_zero() or y.is_zero():
        return x.ring.zero(x.stage)
    out: Dict[Exp, GrElement] = {}
    for ex, cx in x.terms:
        for ey, cy in y.terms:
            c = cx * cy
            if c.is_zero():
                continue
            e = tuple(a + b for a, b in zip(ex, ey))
            if e in out:
                out[e] = out[e] + c
            else:
                out[e] = c
    denoms = [a + b for a, b in zip(x.denoms, y.denoms)]
    return normalize(x.ring, x.stage, out, denoms)


def elem_sum(items: Iterable[StagedElement], ring: "StagedRing", stage: int) -> StagedElement:
    total = ring.zero(stage)
    for item in items:
        total = total + item
    return total


def ideal_degree(x: StagedElement, t: int) -> int:
    """Largest j, capped, with every monomial of x of effective I_t-degree at least j."""
    spec = x.ring.spec
    if not 0 <= t <= spec.h:
        raise ValueError(f"t={t} outside [0, {spec.h}]")
    cap = spec.degree_cap(x.stage, t)
    if x.is_zero():
        return cap
    if t == 0:
        return 0
    by_gen = dict(zip(x.inverted(), x.denoms))
    low = min(monomial_degree(spec, t, exp, c, by_gen) for exp, c in x.terms)
    return min(low, cap)


def part_of_degree(x: StagedElement, t: int, below: int) -> StagedElement:
    """The monomials of x whose effective I_t-degree is below a bound."""
    spec = x.ring.spec
    by_gen = dict(zip(x.inverted(), x.denoms))
    kept = {exp: c for exp, c in x.terms if monomial_degree(spec, t, exp, c, by_gen) < below}
    return normalize(x.ring, x.stage, kept, x.denoms)


def _coeff_str(c: GrElement) -> str:
    if c.ring.n == 1:
        return str(c.signed_coeffs()[0])
    return f"({c})" if c.needs_parens() else str(c)


def monomial_str(n_gens: int, exp: Exp, c: GrElement, by_gen: Dict[int, int]) -> str:
    factors = []
    d0 = by_gen.get(0, 0)
    if d0 == -1:
        factors.append("p")
    elif d0:
        factors.append(f"p^{-d0}")
    for i in range(n_gens):
        k = exp[i] - by_gen.get(i + 1, 0)
        if k == 1:
            factors.append(f"u{i + 1}")
        elif k:
            factors.append(f"u{i + 1}^{k}")
    coeff = _coeff_str(c)
    if not factors:
        return coeff
    body = "*".join(factors)
    if coeff == "1":
        return body
    if coeff == "-1":
        return f"-{body}"
    return f"{coeff}*{body}"


def ordered_terms(x: StagedElement) -> List[Tuple[Exp, GrElement]]:
    """Graded order on effective exponents, then u-index order."""
    by_gen = dict(zip(x.inverted(), x.denoms))
    spec = x.ring.spec

    def key(item):
        exp, _ = item
        eff = effective_exponents(spec, exp, by_gen)
        return (sum(eff), eff)

    return sorted(x.terms, key=key)


def render_element(x: StagedElement) -> str:
    if x.is_zero():
        return "0"
    by_gen = dict(zip(x.inverted(), x.denoms))
    n_gens = x.ring.spec.n_gens
    out = ""
    for i, (exp, c) in enumerate(ordered_terms(x)):
        piece = monomial_str(n_gens, exp, c, by_gen)
        if i == 0:
            out = piece
        elif piece.startswith("-"):
            out += f" - {piece[1:]}"
        else:
            out += f" + {piece}"
    return out
