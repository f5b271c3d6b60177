# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

"""
Classifying maps for staged deformations.

Stage 0 is solved by successive approximation in the maximal-ideal filtration. The unknowns
are the images w_i of u_1 .. u_(h-1) and the coefficients b_j of phi, and the equation is

    phi(F_0(x, y)) = G_w(phi(x), phi(y))

with G_w the versal law pushed along u_i -> w_i. Modulo the maximal ideal the equation is
linear in the degree-k corrections, with a matrix over k that does not depend on k. Columns
that are dependent on earlier ones at this truncation are fixed to zero, which makes every
step's solution unique. Later stages extend f through the localizations and complete.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Tuple

import bittensor as bt

from chromapipe.coeff.galois import GrElement
from chromapipe.coeff.linalg import pivot_columns, restrict_columns, solve
from chromapipe.fgl.laws import FGL, check_star, conjugate, pushforward
from chromapipe.fgl.series import Series, at_stage, from_coefficients, make_series, substitute, variable
from chromapipe.moduli.coordinates import extend_map
from chromapipe.moduli.deformation import (
    StagedDeformation,
    declared_heights,
    gamma,
    residue,
    validate_deformation,
    versal,
)
from chromapipe.staged.element import ideal_degree
from chromapipe.staged.maps import StagedMap, staged_map
from chromapipe.staged.ring import StagedRing
from chromapipe.types import HeightMismatch, NonLiftable, PrecisionExhausted

Row = Tuple[int, int]


@dataclass(frozen=True)
class Linearization:
    """The degree-independent linear step over k: rows are x^i y^j, columns w_1.. then b_1.."""
    rows: Tuple[Row, ...]
    labels: Tuple[str, ...]
    matrix: Tuple[Tuple[GrElement, ...], ...]
    pivots: Tuple[int, ...]

    @property
    def free_columns(self) -> Tuple[str, ...]:
        return tuple(label for i, label in enumerate(self.labels) if i not in self.pivots)

    @property
    def free_degrees(self) -> Tuple[int, ...]:
        """x-degrees j whose b_j is held at zero."""
        return tuple(int(label[1:]) for label in self.free_columns if label.startswith("b"))


@dataclass(frozen=True)
class SolveStep:
    """One graded step: the I-adic degree, how many u-monomials it solved, and the rank used."""
    degree: int
    monomials: int
    rank: int
    unique: bool


@dataclass(frozen=True)
class ClassifyingMap:
    """f_s: X_s -> R_s and phi_s with phi_s(F_s(x, y)) = (f_s G_s)(phi_s(x), phi_s(y))."""
    maps: Tuple[StagedMap, ...]
    phis: Tuple[Series, ...]
    steps: Tuple[SolveStep, ...]
    free_columns: Tuple[str, ...]

    def image(self, s: int, g: int):
        return self.maps[s].image_of(g)


def _partial(F: Series, i: int) -> Series:
    terms = {}
    for e, c in F.terms:
        if e[i]:
            d = list(e)
            d[i] -= 1
            terms[tuple(d)] = c * e[i]
    return make_series(F.ring, F.stage, F.nvars, F.nx, terms)


def _residue_column(S: Series, rows: Tuple[Row, ...]) -> List[GrElement]:
    return [residue(S.coefficient(r)) for r in rows]


@lru_cache(maxsize=None)
def linearization(ring: StagedRing) -> Linearization:
    """Derivative of phi(F(x, y)) - G_w(phi(x), phi(y)) at w = 0, phi = x, reduced to k."""
    spec = ring.spec
    nx = spec.profile.N_x
    k = spec.R.residue_field()
    rows = tuple((i, d - i) for d in range(1, nx) for i in range(d, -1, -1))
    G0 = versal(ring, 0)
    Gam = gamma(ring).F
    x, y = variable(ring, 0, 2, 0, nx), variable(ring, 0, 2, 1, nx)
    Gx, Gy = _partial(Gam, 0), _partial(Gam, 1)
    columns: List[List[GrElement]] = []
    labels: List[str] = []
    for g in range(1, spec.h):
        unit = tuple(1 if i == g - 1 else 0 for i in range(spec.n_gens))
        col = []
        for r in rows:
            c = G0.F.coefficient(r).term_dict().get(unit, spec.R.zero())
            col.append(-c.residue())
        columns.append(col)
        labels.append(f"w{g}")
    for j in range(1, nx):
        S = Gam ** j - Gx * x ** j - Gy * y ** j
        columns.append(_residue_column(S, rows))
        labels.append(f"b{j}")
    matrix = tuple(tuple(col[r] for col in columns) for r in range(len(rows)))
    pivots = pivot_columns(matrix, k)
    lin = Linearization(rows=rows, labels=tuple(labels), matrix=matrix, pivots=pivots)
    bt.logging.debug(f"linearization over {spec.label()}: rank {len(pivots)}, free {lin.free_columns}")
    return lin


def _residual(F0: FGL, G: FGL, phi: Series) -> Series:
    ring, nx = F0.ring, F0.nx
    x, y = variable(ring, 0, 2, 0, nx), variable(ring, 0, 2, 1, nx)
    lhs = substitute(phi, [F0.F])
    rhs = substitute(G.F, [substitute(phi, [x]), substitute(phi, [y])])
    return lhs - rhs


def _graded_rhs(residual: Series, lin: Linearization, k_deg: int) -> Dict[Tuple[int, Tuple[int, ...]], List[GrElement]]:
    """Degree-k_deg part of the residual, grouped by (p-power, u-exponent)."""
    ring = residual.ring
    k = ring.spec.R.residue_field()
    a = ring.spec.profile.a
    out: Dict[Tuple[int, Tuple[int, ...]], List[GrElement]] = {}
    for r, row in enumerate(lin.rows):
        for exp, c in residual.coefficient(row).terms:
            j = k_deg - sum(exp)
            if j < 0 or j >= a:
                continue
            d = c.digit(j)
            if d.is_zero():
                continue
            out.setdefault((j, exp), [k.zero() for _ in lin.rows])[r] = d
    return out


def _solve_stage_zero(F0: FGL, lin: Linearization) -> Tuple[StagedMap, Series, List[SolveStep]]:
    ring = F0.ring
    spec = ring.spec
    R, k = spec.R, spec.R.residue_field()
    nx = spec.profile.N_x
    n_w = spec.n_gens
    w = [ring.zero() for _ in range(n_w)]
    b = [ring.zero(), ring.one()] + [ring.zero() for _ in range(2, nx)]
    A = restrict_columns(lin.matrix, lin.pivots)
    steps: List[SolveStep] = []
    top = spec.window_cap(spec.h)

    def current():
        f = staged_map(ring, ring, {g: w[g - 1] for g in range(1, n_w + 1)}, 0, 0, name="f0")
        return f, from_coefficients(ring, 0, b, nx)

    for k_deg in range(1, top + 1):
        f, phi = current()
        res = _residual(F0, pushforward(versal(ring, 0), f), phi)
        if res.is_zero():
            break
        for _, c in res.terms:
            if ideal_degree(c, spec.h) < k_deg:
                raise NonLiftable(f"residual {c} lies below degree {k_deg}", stage=0)
        pieces = _graded_rhs(res, lin, k_deg)
        rank, unique = len(lin.pivots), True
        for (j, exp), rhs in sorted(pieces.items()):
            sol = solve(A, [-c for c in rhs], k)
            if not sol.consistent:
                raise NonLiftable(f"degree {k_deg} step at p^{j} u^{exp} has no solution", stage=0)
            rank, unique = sol.rank, unique and sol.unique
            for col, z in zip(lin.pivots, sol.z):
                if z.is_zero():
                    continue
                delta = ring.element({exp: z.lift_to(R) * R.from_int(spec.p ** j)}, 0)
                if col < n_w:
                    w[col] = w[col] + delta
                else:
                    b[col - n_w + 1] = b[col - n_w + 1] + delta
        steps.append(SolveStep(degree=k_deg, monomials=len(pieces), rank=rank, unique=unique))
    f, phi = current()
    if not _residual(F0, pushforward(versal(ring, 0), f), phi).is_zero():
        raise NonLiftable("successive approximation did not close at the truncation", stage=0)
    return f, phi, steps


def _verify(F: FGL, f: StagedMap, phi: Series, s: int) -> None:
    pulled = pushforward(versal(F.ring, s), f)
    if conjugate(pulled, phi).F != F.F:
        raise NonLiftable(f"phi_{s} is not an isomorphism onto f_{s} G_{s}", stage=s)


def classify(D: StagedDeformation) -> ClassifyingMap:
    """
    The classifying maps f_s and isomorphisms phi_s of a staged deformation.

    Raises:
        HeightMismatch: a stage's law does not have its declared height.
        NonLiftable: D is not a deformation of the fixed law at this truncation.
        PrecisionExhausted: N_x cannot see x^(p^(h_s)).
    """
    ring = D.ring
    report = validate_deformation(D)
    if not report.ok:
        if report.detail.startswith("height"):
            raise HeightMismatch(report.detail, stage=report.index)
        raise NonLiftable(report.detail, stage=report.index)
    expected = declared_heights(ring)
    if D.heights != expected:
        s = next(i for i, (a, b) in enumerate(zip(D.heights, expected)) if a != b)
        raise HeightMismatch(f"declared height {D.heights[s]} but the ring has {expected[s]}", stage=s)
    lin = linearization(ring)
    f, phi, steps = _solve_stage_zero(D.fgls[0], lin)
    _verify(D.fgls[0], f, phi, 0)
    maps, phis = [f], [phi]
    for s in range(1, D.n_stages + 1):
        t = D.heights[s]
        n = ring.spec.p ** t
        if n >= D.fgls[s].nx:
            raise PrecisionExhausted(f"N_x={D.fgls[s].nx} cannot see x^{n}", stage=s)
        star = check_star(D.fgls[s], t, n)
        if not star.ok:
            raise HeightMismatch(star.describe(), stage=s)
        maps.append(extend_map(maps[-1], s))
        phis.append(at_stage(phis[-1], s))
        _verify(D.fgls[s], maps[-1], phis[-1], s)
    bt.logging.info(f"classified {D.name} over {ring.spec.label()} in {len(steps)} steps")
    return ClassifyingMap(maps=tuple(maps), phis=tuple(phis), steps=tuple(steps), free_columns=lin.free_columns)
