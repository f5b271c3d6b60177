# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

from chromapipe.coeff.galois import GaloisRing, GrElement


@dataclass
class LinearSolution:
    """Result of solving A z = b over a residue field."""
    z: Optional[List[GrElement]]
    rank: int
    pivots: Tuple[int, ...]
    unique: bool

    @property
    def consistent(self) -> bool:
        return self.z is not None


def _rref_prime_field(mat: List[List[GrElement]], k: GaloisRing) -> Tuple[List[List[GrElement]], Tuple[int, ...]]:
    K = GF(k.p)
    dm = DomainMatrix([[K(int(c)) for c in row] for row in mat], (len(mat), len(mat[0])), K)
    reduced, pivots = dm.rref()
    return [[k.from_int(int(c)) for c in row] for row in reduced.to_Matrix().tolist()], tuple(pivots)


def rref(rows: Sequence[Sequence[GrElement]], k: GaloisRing) -> Tuple[List[List[GrElement]], Tuple[int, ...]]:
    """
    Reduced row echelon form over the field k = GR(p, 1, n). Prime fields go through
    sympy's DomainMatrix over GF(p); extensions are reduced here.

    Args:
        rows: Matrix rows of equal length.
        k (GaloisRing): A ring with a = 1.

    Returns:
        (rows, pivots): the reduced matrix and its pivot columns in order.
    """
    if k.a != 1:
        raise ValueError("row reduction requires a residue field")
    mat = [list(r) for r in rows]
    if not mat or not mat[0]:
        return mat, ()
    if k.n == 1:
        return _rref_prime_field(mat, k)
    n_cols = len(mat[0])
    pivots = []
    r = 0
    for j in range(n_cols):
        if r >= len(mat):
            break
        found = next((i for i in range(r, len(mat)) if not mat[i][j].is_zero()), None)
        if found is None:
            continue
        mat[r], mat[found] = mat[found], mat[r]
        inv = mat[r][j].inv()
        mat[r] = [c * inv for c in mat[r]]
        for i in range(len(mat)):
            if i != r and not mat[i][j].is_zero():
                factor = mat[i][j]
                mat[i] = [c - factor * d for c, d in zip(mat[i], mat[r])]
        pivots.append(j)
        r += 1
    return mat, tuple(pivots)


def solve(A: Sequence[Sequence[GrElement]], b: Sequence[GrElement], k: GaloisRing) -> LinearSolution:
    """Solve A z = b, setting free variables to zero."""
    n_cols = len(A[0]) if A else 0
    augmented = [list(row) + [rhs] for row, rhs in zip(A, b)]
    reduced, pivots = rref(augmented, k)
    if n_cols in pivots:
        rank = len(pivots) - 1
        return LinearSolution(None, rank, tuple(p for p in pivots if p < n_cols), False)
    z = [k.zero() for _ in range(n_cols)]
    for row, col in zip(reduced, pivots):
        z[col] = row[n_cols]
    return LinearSolution(z, len(pivots), pivots, len(pivots) == n_cols)


def pivot_columns(A: Sequence[Sequence[GrElement]], k: GaloisRing) -> Tuple[int, ...]:
    """Indices of the columns that carry pivots, i.e. a maximal independent column set."""
    _, pivots = rref(A, k)
    return pivots


def restrict_columns(A: Sequence[Sequence[GrElement]], cols: Sequence[int]) -> List[List[GrElement]]:
    return [[row[j] for j in cols] for row in A]
