# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

"""
Acceptance suites at full trial counts.

Every suite is a generator of per-trial booleans; the runner counts trials and failures
and stops a suite at its first domain error, which counts as one more failure.
"""

from dataclasses import dataclass
from math import comb
from typing import Callable, Dict, Iterator, List, Optional, Sequence

import bittensor as bt

from chromapipe.coeff.galois import galois_ring
from chromapipe.fgl import (
    check_lt_coordinate,
    check_star,
    conjugate,
    fgl_validate,
    from_coefficients,
    hazewinkel_deformation,
    height,
    honda,
    multiplicative,
    p_series,
)
from chromapipe.moduli import (
    change_coordinates,
    classify,
    linearization,
    random_twist,
    tautological_deformation,
    twisted_deformation,
)
from chromapipe.portrait import GOLDENS, IdealSpec, closure, export_graph, golden_portrait, portrait_example
from chromapipe.portrait.graph import base_level
from chromapipe.staged import apply_staged_map, build_staged, is_unit, make_spec, try_invert, weierstrass_split
from chromapipe.tower import check_product, clog_example, include_level, is_bijective_at, realize, sample_diagrams, sample_pairs
from chromapipe.types import DomainError
from chromapipe.utils.sampling import random_series, random_staged, random_unit, rng_for

Trials = Iterator[bool]


@dataclass(frozen=True)
class SuiteResult:
    name: str
    trials: int
    failures: int
    error: str = ""

    @property
    def ok(self) -> bool:
        return self.failures == 0


def _ring(p, h, heights=(), **kw):
    return build_staged(make_spec(p, h, heights, **kw))


def fgl_axioms(cfg: "bt.Config") -> Trials:
    for p in (2, 3):
        for h in (1, 2):
            flat = _ring(p, 1, (), a=1, N_x=p ** h + 2)
            yield fgl_validate(honda(flat, h)).ok
        yield fgl_validate(multiplicative(_ring(p, 1, (), a=3, N_x=p + 2))).ok
    for p, h in ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)):
        yield fgl_validate(hazewinkel_deformation(_ring(p, h, (), a=1, D=4, M=4))).ok


def p_series_identities(cfg: "bt.Config") -> Trials:
    for p in (2, 3):
        for a in (1, 3):
            ring = _ring(p, 1, (), a=a, N_x=p + 2)
            binomial = [0] + [comb(p, i) for i in range(1, p + 1)]
            yield p_series(multiplicative(ring)) == from_coefficients(ring, 0, binomial, p + 2)
        for h in (1, 2):
            ring = _ring(p, 1, (), a=1, N_x=p ** h + 2)
            yield p_series(honda(ring, h)) == from_coefficients(ring, 0, [0] * p ** h + [1], p ** h + 2)


def lubin_tate(cfg: "bt.Config") -> Trials:
    for p, h in ((2, 2), (2, 3), (3, 2), (3, 3)):
        G = hazewinkel_deformation(_ring(p, h, (), a=1, D=4, M=4))
        for t in range(1, h + 1):
            yield check_lt_coordinate(G, t).ok


def _star_cases():
    E2 = _ring(2, 2, (1,), a=1, D=4, M=4)
    return [
        (multiplicative(_ring(2, 1, (), a=2, N_x=4)), 1, 2, 1),
        (honda(_ring(2, 1, (), a=1), 1), 1, 2, 1),
        (hazewinkel_deformation(E2), 2, 4, 2),
        (hazewinkel_deformation(E2, stage=1), 1, 2, 1),
    ]


def star_preserved(cfg: "bt.Config") -> Trials:
    rng = rng_for(cfg.selftest.seed, "star")
    for F, t, n, _ in _star_cases():
        for _ in range(cfg.selftest.trials):
            G = conjugate(F, random_series(rng, F.ring, F.stage))
            yield check_star(G, t, n).ok


def height_invariance(cfg: "bt.Config") -> Trials:
    rng = rng_for(cfg.selftest.seed, "height")
    for F, _, _, h in _star_cases()[1:] + [(honda(_ring(2, 1, (), a=1, N_x=6), 2), 2, 4, 2)]:
        expected = height(F, h)
        for _ in range(cfg.selftest.trials):
            yield height(conjugate(F, random_series(rng, F.ring, F.stage)), h) == expected


def coordinate_change(cfg: "bt.Config") -> Trials:
    rng = rng_for(cfg.selftest.seed, "coordinates")
    TW = _ring(2, 2, (1,), a=2, D=6, M=8)
    H3 = _ring(2, 3, (2, 1), a=2, D=8, M=8)
    twists = [
        (TW, {1: TW.generator(1) + TW.from_int(2)}),
        (H3, {1: H3.generator(1) + H3.from_int(2) * H3.generator(2), 2: H3.generator(2) + H3.from_int(2)}),
    ]
    for ring, v in twists:
        change = change_coordinates(ring, v)
        for _ in range(cfg.selftest.trials):
            s = int(rng.integers(0, ring.n_stages + 1))
            x = random_staged(rng, ring, s, terms=3, max_exp=1, max_denom=1)
            fwd, bwd = change.forward[s], change.backward[s]
            yield apply_staged_map(fwd, apply_staged_map(bwd, x)) == x and apply_staged_map(bwd, apply_staged_map(fwd, x)) == x


def classify_round_trip(cfg: "bt.Config") -> Trials:
    TW = _ring(2, 2, (1,), a=2, D=6, M=8)
    C = classify(tautological_deformation(TW))
    yield all(C.image(s, 1) == TW.generator(1, s) for s in range(TW.n_stages + 1))
    rng = rng_for(cfg.selftest.seed, "classify")
    free = linearization(TW).free_degrees
    for _ in range(max(1, cfg.selftest.trials // 5)):
        twist, phi = random_twist(rng, TW, free=free)
        C = classify(twisted_deformation(TW, twist, phi))
        yield C.image(0, 1) == twist[1] and C.phis[0] == phi and all(step.unique for step in C.steps)


def geometric_inverse(cfg: "bt.Config") -> Trials:
    for p, a, N in ((2, 4, 4), (3, 3, 3)):
        ring = _ring(p, 2, (1,), a=a, D=12, M=12, N=(N,))
        expected = ring.zero(1)
        for j in range(N):
            expected = expected + ring.monomial([-1 - j], (-p) ** j, 1)
        yield try_invert(ring.generator(1, 1) + ring.from_int(p, 1)) == expected


def weierstrass(cfg: "bt.Config") -> Trials:
    """Random Laurent elements of k((y))[[x]] with x = u1 and y = u2 split and reassemble."""
    KYX = _ring(2, 3, (2,), a=1, D=8, M=8, N=(4,))
    rng = rng_for(cfg.selftest.seed, "weierstrass")
    for _ in range(2 * cfg.selftest.trials):
        x = random_staged(rng, KYX, 1, terms=5, max_exp=3, max_denom=2, max_val=0)
        if x.is_zero():
            continue
        order, found = weierstrass_split(x, 1)
        lowest = min(exp[0] for exp, _ in x.terms)
        yield order == lowest and is_unit(found) and KYX.gen_power(1, order, 1) * found == x


def portrait_goldens(cfg: "bt.Config") -> Trials:
    for name in GOLDENS:
        golden = golden_portrait(name)
        if golden.edges is None:
            got = {n.label(): base_level(n, 2) for n in closure(IdealSpec(golden.ring, golden.factors), 4)}
            yield got == golden.nodes
        else:
            yield portrait_example(name, 4).signature() == (golden.nodes, golden.edges)
    yield export_graph(portrait_example("kxx", 4), "dot") == export_graph(portrait_example("kxx", 4), "dot")


def clog(cfg: "bt.Config") -> Trials:
    F2 = galois_ring(2, 1, 1)
    for depth in range(1, 7):
        ex = clog_example(F2, depth)
        yield ex.bijective and ex.kernel_nonzero


def realization_algebra(cfg: "bt.Config") -> Trials:
    for X, Y in sample_pairs(20, depth_bound=3):
        yield check_product(X, Y, 3).ok
    for X in sample_diagrams(0, 3):
        for m in (0, 1):
            inc = include_level(X, m)
            yield realize(inc.diagram, 3).ring.size == realize(X, 3).ring.size and is_bijective_at(inc.comparison, 3)


def unit_round_trip(cfg: "bt.Config") -> Trials:
    rings = [
        _ring(2, 2, (1,), a=4, D=12, M=12, N=(4,)),
        _ring(3, 2, (1,), a=3, D=12, M=12, N=(3,)),
        _ring(2, 3, (2,), a=2, D=8, M=8, N=(4,)),
        _ring(2, 3, (2, 1), a=2, D=8, M=8, N=(4, 2)),
        _ring(2, 2, (1, 0), a=3, D=12, M=12, N=(3, 3)),
    ]
    rng = rng_for(cfg.selftest.seed, "units")
    for i in range(cfg.selftest.units):
        ring = rings[i % len(rings)]
        x = random_unit(rng, ring, ring.n_stages)
        yield (x * try_invert(x)).is_one()


SUITES: Dict[str, Callable[["bt.Config"], Trials]] = {
    "fgl_axioms": fgl_axioms,
    "p_series": p_series_identities,
    "lubin_tate": lubin_tate,
    "star_preserved": star_preserved,
    "height_invariance": height_invariance,
    "coordinate_change": coordinate_change,
    "classify_round_trip": classify_round_trip,
    "geometric_inverse": geometric_inverse,
    "weierstrass": weierstrass,
    "portrait_goldens": portrait_goldens,
    "clog": clog,
    "realization_algebra": realization_algebra,
    "unit_round_trip": unit_round_trip,
}


def run_suite(name: str, cfg: "bt.Config") -> SuiteResult:
    trials = failures = 0
    error = ""
    try:
        for passed in SUITES[name](cfg):
            trials += 1
            failures += 0 if passed else 1
    except DomainError as e:
        trials += 1
        failures += 1
        error = e.label
    bt.logging.info(f"selftest {name}: trials={trials} failures={failures}")
    return SuiteResult(name, trials, failures, error)


def run_selftest(cfg: "bt.Config", names: Optional[Sequence[str]] = None) -> List[SuiteResult]:
    """
    Raises:
        KeyError: a requested suite does not exist.
    """
    names = list(names) if names else list(SUITES)
    for name in names:
        if name not in SUITES:
            raise KeyError(name)
    return [run_suite(name, cfg) for name in names]


def render_table(results: Sequence[SuiteResult]) -> str:
    lines = [f"{'suite':<22}{'trials':>8}{'failures':>10}  status"]
    for r in results:
        status = "pass" if r.ok else f"FAIL {r.error}".rstrip()
        lines.append(f"{r.name:<22}{r.trials:>8}{r.failures:>10}  {status}")
    return "\n".join(lines) + "\n"
