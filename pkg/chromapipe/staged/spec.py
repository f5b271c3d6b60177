# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from chromapipe.coeff.galois import GaloisRing, galois_ring
from chromapipe.types import BadHeights
from chromapipe.utils.config import DEFAULT_XDEG_MARGIN


@dataclass(frozen=True)
class TruncationProfile:
    """Window caps: p-adic precision a, exponent cap D, denominator cap M, completion depths N[1..n], x-degree cap N_x."""
    a: int
    D: int
    M: int
    N: Tuple[int, ...]
    N_x: int

    def depth_at(self, s: int) -> int:
        """N[s] for s >= 1."""
        return self.N[s - 1]


@dataclass(frozen=True)
class StagedRingSpec:
    """Presentation of X_0 -> X_1 -> ... -> X_n at a truncation profile."""
    R: GaloisRing
    h: int
    heights: Tuple[int, ...]
    profile: TruncationProfile

    @property
    def p(self) -> int:
        return self.R.p

    @property
    def n_gens(self) -> int:
        """Number of u generators, u_1 .. u_(h-1)."""
        return self.h - 1

    @property
    def n_stages(self) -> int:
        return len(self.heights)

    def height_at(self, s: int) -> int:
        """h_s, with h_0 = h."""
        return self.h if s == 0 else self.heights[s - 1]

    def inverted(self, s: int) -> Tuple[int, ...]:
        """Generators inverted by stage s in order of inversion; 0 stands for p."""
        out = []
        for j in range(1, s + 1):
            g = self.heights[j - 1]
            if g < self.h and g not in out:
                out.append(g)
        return tuple(out)

    def is_rational(self, s: int) -> bool:
        """Whether p is inverted by stage s."""
        return 0 in self.inverted(s)

    def in_ideal(self, g: int, t: int) -> bool:
        """Whether generator g (0 for p) lies in I_t = (p, u_1, ..., u_(t-1))."""
        if t <= 0:
            return False
        return g == 0 or g < t

    def window_cap(self, t: int) -> int:
        return self.profile.a + max(t - 1, 0) * self.profile.D

    def degree_cap(self, s: int, t: int) -> int:
        """Cap on ideal_degree(., t) at stage s."""
        caps = [self.profile.depth_at(j) for j in range(1, s + 1) if self.heights[j - 1] == t]
        return min(caps) if caps else self.window_cap(t)

    def label(self) -> str:
        hs = ",".join(str(x) for x in self.heights)
        return f"E_{self.h}[{hs}] over {self.R.label()}"


def check_heights(h: int, heights: Sequence[int]) -> Tuple[int, ...]:
    heights = tuple(int(x) for x in heights)
    prev = h
    for x in heights:
        if not 0 <= x <= h:
            raise BadHeights(f"height {x} outside [0, {h}]")
        if x > prev:
            raise BadHeights(f"heights {list(heights)} are not weakly decreasing from {h}")
        prev = x
    return heights


def validate_spec(spec: StagedRingSpec) -> StagedRingSpec:
    """Check heights and profile caps; raises BadHeights or ValueError."""
    if spec.h < 1:
        raise ValueError(f"height h={spec.h} must be at least 1")
    check_heights(spec.h, spec.heights)
    prof = spec.profile
    if prof.a != spec.R.a:
        raise ValueError(f"profile precision a={prof.a} differs from coefficient ring a={spec.R.a}")
    if min(prof.a, prof.D, prof.M, prof.N_x) < 1:
        raise ValueError("profile caps must be at least 1")
    if len(prof.N) != len(spec.heights):
        raise ValueError(f"need one completion depth per stage, got {len(prof.N)} for {len(spec.heights)}")
    for s, (hs, n) in enumerate(zip(spec.heights, prof.N), start=1):
        if n < 1:
            raise ValueError(f"N[{s}]={n} must be at least 1")
        if hs >= 1 and n > spec.window_cap(hs):
            raise ValueError(f"N[{s}]={n} exceeds {spec.window_cap(hs)}, the window already kills I_{hs}^{n}")
    return spec


def make_spec(
    p: int,
    h: int,
    heights: Sequence[int] = (),
    a: int = 1,
    n: int = 1,
    D: int = 4,
    M: int = 4,
    N: Optional[Sequence[int]] = None,
    N_x: Optional[int] = None,
    depth: Optional[int] = None,
    xdeg_margin: int = DEFAULT_XDEG_MARGIN,
) -> StagedRingSpec:
    """
    Convenience constructor.

    Args:
        p (int): Residue characteristic.
        h (int): Height of the base formal group.
        heights: Stage heights h_1 >= h_2 >= ...
        a, n: Coefficient ring GR(p, a, n).
        D, M: Exponent and denominator caps.
        N: Completion depths per stage; defaults to the window cap for each stage,
            lowered to depth when one is given.
        N_x: x-degree cap; defaults to p^h + xdeg_margin.

    Returns:
        StagedRingSpec: A validated spec.
    """
    heights = check_heights(h, heights)
    R = galois_ring(p, a, n)
    if N is None:
        N = tuple(max(1, a + max(x - 1, 0) * D) for x in heights)
        if depth is not None:
            N = tuple(min(n_s, max(1, depth)) for n_s in N)
    if N_x is None:
        N_x = p ** h + xdeg_margin
    profile = TruncationProfile(a=a, D=D, M=M, N=tuple(N), N_x=N_x)
    return validate_spec(StagedRingSpec(R=R, h=h, heights=heights, profile=profile))
