# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

"""
p-typical formal group laws from the Hazewinkel functional equation, over exact rationals.

The logarithm is sum_m l_m x^(p^m) with l_0 = 1 and p l_m = sum_(0<=i<m) l_i v_(m-i)^(p^i).
With v_i = u_i for i < h, v_h = 1 and v_j = 0 above h, the law exp(log x + log y) has
p-integral coefficients in Z_(p)[u_1, ..., u_(h-1)]; each is checked before reduction.
"""

from functools import lru_cache
from typing import Dict, List, Tuple

import bittensor as bt
from sympy import QQ
from sympy.polys.rings import PolyElement, ring

from chromapipe.coeff.galois import GaloisRing, GrElement
from chromapipe.types import IntegralityFailure

Mono = Tuple[int, ...]
RationalLaw = Dict[Tuple[int, int], Dict[Mono, Tuple[int, int]]]


def _truncate(poly: PolyElement, nx: int) -> PolyElement:
    """Drop monomials of total (x, y) degree >= nx."""
    R = poly.ring
    return R({m: c for m, c in poly.items() if m[0] + m[1] < nx})


def _v(gens: List[PolyElement], one: PolyElement, h: int, j: int, deform: bool) -> PolyElement:
    if j == h:
        return one
    if j < h and deform:
        return gens[j - 1]
    return one * 0


def hazewinkel_log_coefficients(p: int, h: int, nx: int, deform: bool = True) -> Tuple[object, List[Tuple[int, PolyElement]]]:
    """
    The pairs (p^m, l_m) with p^m < nx.

    Returns:
        The sympy polynomial ring (gens x, y, u_1 .. u_(h-1)) and the coefficient list.
    """
    names = ["x", "y"] + [f"u{i}" for i in range(1, h)]
    R = ring(",".join(names), QQ)[0]
    gens = list(R.gens)
    one = R.one
    us = gens[2:]
    ls = [one]
    out = [(1, one)]
    m = 1
    while p ** m < nx:
        acc = R.zero
        for i in range(m):
            acc += ls[i] * _v(us, one, h, m - i, deform) ** (p ** i)
        l_m = acc * QQ(1, p)
        ls.append(l_m)
        out.append((p ** m, l_m))
        m += 1
    return R, out


def _series_inverse(R, log_x: PolyElement, x: PolyElement, nx: int) -> List[PolyElement]:
    """Coefficients e_1 .. e_(nx-1) of the compositional inverse of a one-variable log with leading term x."""
    powers = [R.one, log_x]
    for _ in range(2, nx):
        powers.append(_truncate(powers[-1] * log_x, nx))
    e = [R.zero, R.one]
    for n in range(2, nx):
        acc = R.zero
        for k in range(1, n):
            acc += e[k] * powers[k]
        coeff = R.zero
        for mono, c in acc.items():
            if mono[0] == n and mono[1] == 0:
                coeff += R({(0, 0) + mono[2:]: c})
        e.append(-coeff)
    return e


@lru_cache(maxsize=None)
def hazewinkel_law(p: int, h: int, nx: int, deform: bool = True) -> RationalLaw:
    """
    Coefficients of F(x, y) = exp(log x + log y) as exact fractions.

    Args:
        p (int): Prime.
        h (int): Height; v_h is set to 1.
        nx (int): Truncation degree in x and y.
        deform (bool): Keep u_1 .. u_(h-1) symbolic; otherwise they are 0 (the Honda law).

    Returns:
        Dict mapping (i, j) to {u-exponent: (numerator, denominator)}.
    """
    R, logs = hazewinkel_log_coefficients(p, h, nx, deform)
    x, y = R.gens[0], R.gens[1]
    log_x = R.zero
    log_y = R.zero
    for k, l_m in logs:
        log_x += l_m * x ** k
        log_y += l_m * y ** k
    e = _series_inverse(R, log_x, x, nx)
    s = log_x + log_y
    total = R.zero
    power = R.one
    for k in range(1, nx):
        power = _truncate(power * s, nx)
        total += e[k] * power
    total = _truncate(total, nx)
    law: RationalLaw = {}
    for mono, c in total.items():
        num, den = int(QQ.numer(c)), int(QQ.denom(c))
        law.setdefault((mono[0], mono[1]), {})[tuple(mono[2:])] = (num, den)
    bt.logging.debug(f"hazewinkel law p={p} h={h} nx={nx}: {len(law)} coefficients")
    return law


def reduce_fraction(num: int, den: int, R: GaloisRing) -> GrElement:
    """num/den in R; the denominator must be prime to p."""
    if den % R.p == 0:
        raise IntegralityFailure(f"coefficient {num}/{den} is not {R.p}-integral")
    m = R.modulus
    return R.from_int(num * pow(den, -1, m))
