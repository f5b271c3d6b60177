# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

"""
Galois rings GR(p, a, n) = (Z/p^a)[t]/(f(t)).

Elements are coordinate tuples in the basis 1, t, ..., t^(n-1), each coordinate
reduced into [0, p^a). Python integers are arbitrary precision, so there is no
separate big-integer path.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence, Tuple

from chromapipe.types import MixedRings, NotAUnit

MAX_RESIDUE_DEGREE = 8


def _poly_rem_mod_p(num: Sequence[int], den: Sequence[int], p: int) -> Tuple[int, ...]:
    """Remainder of num by a monic den over F_p. Coefficients constant term first."""
    rem = [c % p for c in num]
    d = len(den) - 1
    for top in range(len(rem) - 1, d - 1, -1):
        c = rem[top]
        if c == 0:
            continue
        shift = top - d
        for i, dc in enumerate(den):
            rem[shift + i] = (rem[shift + i] - c * dc) % p
    return tuple(rem[:d])


def is_irreducible_mod_p(f: Sequence[int], p: int) -> bool:
    """
    Brute-force irreducibility test for a monic polynomial over F_p.

    Args:
        f (Sequence[int]): Coefficients, constant term first, leading coefficient 1.
        p (int): The prime.

    Returns:
        bool: True when no monic factor of degree 1..deg(f)//2 divides f.
    """
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = tuple(tail) + (1,)
            if not any(_poly_rem_mod_p(f, divisor, p)):
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, n: int) -> Tuple[int, ...]:
    """Lexicographically least monic irreducible of degree n over F_p, as (c0, ..., c_{n-1}, 1)."""
    for tail in itertools.product(range(p), repeat=n):
        f = tuple(tail) + (1,)
        if is_irreducible_mod_p(f, p):
            return f
    raise ValueError(f"no irreducible polynomial of degree {n} over F_{p}")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True)
class GaloisRing:
    """Descriptor for GR(p, a, n) with defining polynomial f (constant term first, monic)."""
    p: int
    a: int
    n: int
    f: Tuple[int, ...]

    @property
    def modulus(self) -> int:
        return self.p ** self.a

    @property
    def size(self) -> int:
        return self.modulus ** self.n

    def zero(self) -> "GrElement":
        return GrElement(self, (0,) * self.n)

    def one(self) -> "GrElement":
        return self.from_int(1)

    def from_int(self, k: int) -> "GrElement":
        return GrElement(self, (k % self.modulus,) + (0,) * (self.n - 1))

    def t(self) -> "GrElement":
        """The class of t (equals -f(0) when n = 1)."""
        if self.n == 1:
            return self.from_int(-self.f[0])
        return GrElement(self, (0, 1) + (0,) * (self.n - 2))

    def element(self, coords: Sequence[int]) -> "GrElement":
        coords = list(coords)
        if len(coords) > self.n:
            raise ValueError(f"expected at most {self.n} coordinates, got {len(coords)}")
        coords += [0] * (self.n - len(coords))
        return GrElement(self, tuple(c % self.modulus for c in coords))

    def elements(self) -> Iterator["GrElement"]:
        """Enumerate the whole carrier, coordinates in lexicographic order."""
        for coords in itertools.product(range(self.modulus), repeat=self.n):
            yield GrElement(self, coords)

    def residue_field(self) -> "GaloisRing":
        """GR(p, 1, n) with f reduced mod p."""
        return GaloisRing(self.p, 1, self.n, tuple(c % self.p for c in self.f))

    def with_precision(self, a: int) -> "GaloisRing":
        return GaloisRing(self.p, a, self.n, tuple(c % (self.p ** a) for c in self.f))

    def label(self) -> str:
        return f"GR({self.p},{self.a},{self.n})"


def galois_ring(p: int, a: int, n: int = 1, f: Optional[Sequence[int]] = None) -> GaloisRing:
    """
    Build and validate a Galois ring descriptor.

    Args:
        p (int): Prime residue characteristic.
        a (int): p-adic precision, at least 1.
        n (int): Residue field degree, 1 through 8.
        f (Optional[Sequence[int]]): Monic defining polynomial, constant term first.
            Defaults to the lexicographically least irreducible lift.

    Returns:
        GaloisRing: The descriptor.
    """
    if not _is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if a < 1:
        raise ValueError(f"precision a={a} must be at least 1")
    if not 1 <= n <= MAX_RESIDUE_DEGREE:
        raise ValueError(f"residue degree n={n} must lie in [1, {MAX_RESIDUE_DEGREE}]")
    if f is None:
        f = default_modulus(p, n)
    f = tuple(int(c) for c in f)
    if len(f) != n + 1 or f[-1] % (p ** a) != 1:
        raise ValueError(f"f must be monic of degree {n}")
    if not is_irreducible_mod_p(f, p):
        raise ValueError(f"f={list(f)} is reducible mod {p}")
    return GaloisRing(p, a, n, tuple(c % (p ** a) for c in f))


def _vp(c: int, p: int, cap: int) -> int:
    if c == 0:
        return cap
    v = 0
    while c % p == 0 and v < cap:
        c //= p
        v += 1
    return v


@dataclass(frozen=True)
class GrElement:
    """An element of a Galois ring in canonical coordinates."""
    ring: GaloisRing
    coeffs: Tuple[int, ...]

    def _check(self, other: "GrElement") -> None:
        if self.ring != other.ring:
            raise MixedRings(f"{self.ring.label()} vs {other.ring.label()}")

    def _coerce(self, other) -> "GrElement":
        if isinstance(other, int):
            return self.ring.from_int(other)
        if isinstance(other, GrElement):
            self._check(other)
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        m = self.ring.modulus
        return GrElement(self.ring, tuple((x + y) % m for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        m = self.ring.modulus
        return GrElement(self.ring, tuple((-x) % m for x in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return gr_mul(self, other, self.ring)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return gr_inv(self, self.ring) ** (-k)
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def val(self) -> int:
        return gr_val(self, self.ring)

    def is_unit(self) -> bool:
        return gr_val(self, self.ring) == 0

    def inv(self) -> "GrElement":
        return gr_inv(self, self.ring)

    def div_p(self, balanced: bool = False) -> "GrElement":
        """
        Exact division by p of an element with val >= 1. The top p-adic digit becomes 0,
        or with balanced=True follows the sign of the balanced representative, so that
        -p divides to -1.
        """
        p = self.ring.p
        if any(c % p for c in self.coeffs):
            raise NotAUnit("element is not divisible by p")
        if balanced:
            return self.ring.element([c // p for c in self.signed_coeffs()])
        return GrElement(self.ring, tuple(c // p for c in self.coeffs))

    def residue(self) -> "GrElement":
        """Reduction into the residue field GR(p, 1, n)."""
        k = self.ring.residue_field()
        return GrElement(k, tuple(c % k.p for c in self.coeffs))

    def digit(self, j: int) -> "GrElement":
        """The j-th p-adic digit, as an element of the residue field."""
        k = self.ring.residue_field()
        p = k.p
        return GrElement(k, tuple((c // p ** j) % p for c in self.coeffs))

    def lift_to(self, ring: GaloisRing) -> "GrElement":
        """Reinterpret coordinates in a ring of the same p and n (used for residue-field lifts)."""
        return ring.element(self.coeffs)

    def __int__(self) -> int:
        return self.coeffs[0]

    def signed_coeffs(self) -> Tuple[int, ...]:
        m = self.ring.modulus
        return tuple(c - m if c > m // 2 else c for c in self.coeffs)

    def __str__(self) -> str:
        if self.ring.n == 1:
            return str(self.coeffs[0])
        parts = []
        for i in range(self.ring.n - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("t" if c == 1 else f"{c}t")
            else:
                parts.append(f"t^{i}" if c == 1 else f"{c}t^{i}")
        return " + ".join(parts) if parts else "0"

    def needs_parens(self) -> bool:
        return sum(1 for c in self.coeffs if c) > 1


def gr_mul(x: GrElement, y: GrElement, R: GaloisRing) -> GrElement:
    """Product in (Z/p^a)[t]/(f): schoolbook multiply, then reduce by the monic f."""
    if x.ring != R or y.ring != R:
        raise MixedRings(f"operands not in {R.label()}")
    n = R.n
    m = R.modulus
    if n == 1:
        return GrElement(R, ((x.coeffs[0] * y.coeffs[0]) % m,))
    prod = [0] * (2 * n - 1)
    for i, xi in enumerate(x.coeffs):
        if xi == 0:
            continue
        for j, yj in enumerate(y.coeffs):
            prod[i + j] += xi * yj
    f = R.f
    for top in range(2 * n - 2, n - 1, -1):
        c = prod[top] % m
        if c == 0:
            continue
        shift = top - n
        for i in range(n):
            prod[shift + i] -= c * f[i]
        prod[top] = 0
    return GrElement(R, tuple(c % m for c in prod[:n]))


def gr_val(x: GrElement, R: GaloisRing) -> int:
    """Largest j <= a with x in p^j GR; a for zero."""
    return min(_vp(c, R.p, R.a) for c in x.coeffs)


def gr_inv(x: GrElement, R: GaloisRing) -> GrElement:
    """Invert in F_q by x^(q-2), then Hensel-lift with y <- y(2 - xy)."""
    if x.ring != R:
        raise MixedRings(f"operand not in {R.label()}")
    if gr_val(x, R) > 0:
        raise NotAUnit(f"{x} has positive valuation in {R.label()}")
    k = R.residue_field()
    xr = x.residue()
    q = R.p ** R.n
    yr = k.one()
    base = xr
    e = q - 2
    while e:
        if e & 1:
            yr = gr_mul(yr, base, k)
        base = gr_mul(base, base, k)
        e >>= 1
    y = R.element(yr.coeffs)
    two = R.from_int(2)
    for _ in range(R.a):
        y = gr_mul(y, two - gr_mul(x, y, R), R)
    return y
