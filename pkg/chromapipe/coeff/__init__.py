from .galois import (
    GaloisRing,
    GrElement,
    galois_ring,
    default_modulus,
    is_irreducible_mod_p,
    gr_mul,
    gr_inv,
    gr_val,
)
from .linalg import LinearSolution, rref, solve, pivot_columns, restrict_columns

__all__ = [
    "GaloisRing",
    "GrElement",
    "galois_ring",
    "default_modulus",
    "is_irreducible_mod_p",
    "gr_mul",
    "gr_inv",
    "gr_val",
    "LinearSolution",
    "rref",
    "solve",
    "pivot_columns",
    "restrict_columns",
]
