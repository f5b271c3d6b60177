# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

"""Power series in one or more formal variables over a stage ring, truncated at total degree N_x."""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from chromapipe.staged.element import StagedElement, promote
from chromapipe.staged.maps import StagedMap, apply_staged_map
from chromapipe.staged.ring import StagedRing, try_invert
from chromapipe.types import MixedRings

Mono = Tuple[int, ...]
VARIABLES = ("x", "y", "z", "w")


@dataclass(frozen=True)
class Series:
    """Sum of c_e * x^e over monomials e with |e| < nx; zero coefficients are never stored."""
    ring: StagedRing
    stage: int
    nvars: int
    nx: int
    terms: Tuple[Tuple[Mono, StagedElement], ...]

    def term_dict(self) -> Dict[Mono, StagedElement]:
        return dict(self.terms)

    def coefficient(self, exp: Union[int, Mono]) -> StagedElement:
        if isinstance(exp, int):
            exp = (exp,)
        return self.term_dict().get(tuple(exp), self.ring.zero(self.stage))

    def coefficients(self) -> List[StagedElement]:
        """b_0 .. b_(nx-1) of a one-variable series."""
        if self.nvars != 1:
            raise ValueError("coefficients() needs a one-variable series")
        d = self.term_dict()
        zero = self.ring.zero(self.stage)
        return [d.get((j,), zero) for j in range(self.nx)]

    def is_zero(self) -> bool:
        return not self.terms

    def constant(self) -> StagedElement:
        return self.coefficient((0,) * self.nvars)

    def order(self) -> int:
        """Lowest total degree present; nx for zero."""
        return min((sum(e) for e, _ in self.terms), default=self.nx)

    def _like(self, terms: Dict[Mono, StagedElement]) -> "Series":
        return make_series(self.ring, self.stage, self.nvars, self.nx, terms)

    def _check(self, other: "Series") -> None:
        if self.ring != other.ring or self.nvars != other.nvars or self.nx != other.nx:
            raise MixedRings("series live over different rings, variables or truncations")

    def _lift(self, other: "Series") -> Tuple["Series", "Series"]:
        self._check(other)
        s = max(self.stage, other.stage)
        return at_stage(self, s), at_stage(other, s)

    def __add__(self, other: "Series") -> "Series":
        a, b = self._lift(other)
        out = a.term_dict()
        for e, c in b.terms:
            out[e] = out[e] + c if e in out else c
        return a._like(out)

    def __neg__(self) -> "Series":
        return self._like({e: -c for e, c in self.terms})

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def __mul__(self, other) -> "Series":
        if isinstance(other, Series):
            return series_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "Series":
        if isinstance(c, int):
            c = self.ring.from_int(c, self.stage)
        s = max(self.stage, c.stage)
        return make_series(self.ring, s, self.nvars, self.nx, {e: x * c for e, x in self.terms})

    def __pow__(self, k: int) -> "Series":
        out = one_series(self.ring, self.stage, self.nvars, self.nx)
        for _ in range(k):
            out = out * self
        return out

    def __str__(self) -> str:
        return render_series(self)


def make_series(ring: StagedRing, stage: int, nvars: int, nx: int, terms: Dict[Mono, StagedElement]) -> Series:
    kept = {}
    for e, c in terms.items():
        if sum(e) >= nx:
            continue
        c = promote(c, stage) if c.stage < stage else c
        if not c.is_zero():
            kept[tuple(e)] = c
    return Series(ring=ring, stage=stage, nvars=nvars, nx=nx, terms=tuple(sorted(kept.items(), key=lambda t: t[0])))


def at_stage(f: Series, stage: int) -> Series:
    if stage == f.stage:
        return f
    return make_series(f.ring, stage, f.nvars, f.nx, {e: promote(c, stage) for e, c in f.terms})


def zero_series(ring: StagedRing, stage: int, nvars: int, nx: int) -> Series:
    return make_series(ring, stage, nvars, nx, {})


def one_series(ring: StagedRing, stage: int, nvars: int, nx: int) -> Series:
    return make_series(ring, stage, nvars, nx, {(0,) * nvars: ring.one(stage)})


def variable(ring: StagedRing, stage: int, nvars: int, i: int, nx: int) -> Series:
    e = [0] * nvars
    e[i] = 1
    return make_series(ring, stage, nvars, nx, {tuple(e): ring.one(stage)})


def from_coefficients(ring: StagedRing, stage: int, coeffs: Sequence, nx: int) -> Series:
    """One-variable series sum coeffs[j] x^j; ints are read in the coefficient ring."""
    terms = {}
    for j, c in enumerate(coeffs):
        if isinstance(c, int):
            c = ring.from_int(c, stage)
        terms[(j,)] = c
    return make_series(ring, stage, 1, nx, terms)


def series_mul(f: Series, g: Series) -> Series:
    f, g = f._lift(g)
    out: Dict[Mono, StagedElement] = {}
    for ea, ca in f.terms:
        da = sum(ea)
        for eb, cb in g.terms:
            if da + sum(eb) >= f.nx:
                continue
            e = tuple(x + y for x, y in zip(ea, eb))
            c = ca * cb
            out[e] = out[e] + c if e in out else c
    return f._like(out)


def substitute(F: Series, args: Sequence[Series]) -> Series:
    """F(g_1, ..., g_k); every g_i must have zero constant term."""
    if len(args) != F.nvars:
        raise ValueError(f"need {F.nvars} arguments, got {len(args)}")
    first = args[0]
    for g in args:
        if g.nvars != first.nvars or g.nx != first.nx or g.ring != F.ring:
            raise MixedRings("substituted series disagree on ring, variables or truncation")
        if not g.constant().is_zero():
            raise ValueError("substituted series must have zero constant term")
    stage = max([F.stage] + [g.stage for g in args])
    args = [at_stage(g, stage) for g in args]
    one = one_series(F.ring, stage, first.nvars, first.nx)
    powers: List[Dict[int, Series]] = [{0: one} for _ in args]

    def power(i: int, k: int) -> Series:
        cache = powers[i]
        if k not in cache:
            cache[k] = power(i, k - 1) * args[i]
        return cache[k]

    total = zero_series(F.ring, stage, first.nvars, first.nx)
    for e, c in F.terms:
        if sum(e) >= first.nx:
            continue
        term = one.scale(promote(c, stage) if c.stage < stage else c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        total = total + term
    return total


def compose(f: Series, g: Series) -> Series:
    """f o g for one-variable series with g(0) = 0."""
    if f.nvars != 1:
        raise ValueError("compose expects a one-variable outer series")
    return substitute(f, [g])


def comp_inverse(f: Series) -> Series:
    """
    Compositional inverse, solved degree by degree.

    Each new coefficient c_n is -b_1^(-1) times the x^n coefficient of f(g_(<n)), where
    g_(<n) is the inverse known so far.

    Raises:
        NotAUnit: b_1 is not invertible.
    """
    if f.nvars != 1 or not f.constant().is_zero():
        raise ValueError("comp_inverse expects a one-variable series with f(0) = 0")
    b1_inv = try_invert(f.coefficient(1))
    x = variable(f.ring, f.stage, 1, 0, f.nx)
    g = x.scale(b1_inv)
    for n in range(2, f.nx):
        residual = compose(f, g).coefficient(n)
        if residual.is_zero():
            continue
        g = g - make_series(f.ring, g.stage, 1, f.nx, {(n,): b1_inv * residual})
    return g


def pushforward_series(f: Series, m: StagedMap) -> Series:
    """Apply a staged map to every coefficient."""
    if f.ring != m.source:
        raise MixedRings(f"series do not live on the source of {m.name}")
    stage = m.target_stage
    terms = {e: apply_staged_map(m, promote(c, m.source_stage) if c.stage < m.source_stage else c) for e, c in f.terms}
    return make_series(m.target, stage, f.nvars, f.nx, terms)


def map_coefficients(f: Series, fn, stage: Optional[int] = None) -> Series:
    stage = f.stage if stage is None else stage
    return make_series(f.ring, stage, f.nvars, f.nx, {e: fn(c) for e, c in f.terms})


def ordered_monomials(terms: Iterable[Tuple[Mono, StagedElement]]) -> List[Tuple[Mono, StagedElement]]:
    """Graded lexicographic: lower total degree first, then higher powers of earlier variables."""
    return sorted(terms, key=lambda t: (sum(t[0]), tuple(-k for k in t[0])))


def _mono_str(e: Mono) -> str:
    parts = []
    for name, k in zip(VARIABLES, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def render_series(f: Series) -> str:
    if f.is_zero():
        return "0"
    pieces = []
    for e, c in ordered_monomials(f.terms):
        mono = _mono_str(e)
        text = str(c)
        if not mono:
            piece = text
        elif text == "1":
            piece = mono
        elif text == "-1":
            piece = f"-{mono}"
        elif len(c.terms) == 1 and " " not in text:
            piece = f"{text}*{mono}"
        else:
            piece = f"({text})*{mono}"
        pieces.append(piece)
    out = pieces[0]
    for piece in pieces[1:]:
        out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
    return out
