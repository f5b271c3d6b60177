import unittest

from hypothesis import assume, given, settings, strategies as st

from chromapipe.staged import (
    apply_staged_map,
    build_staged,
    check_continuous,
    check_realization,
    compose,
    elem_pow,
    identity_map,
    ideal_degree,
    is_unit,
    localization_diagram,
    make_spec,
    realize_staged,
    staged_map,
    try_invert,
    weierstrass_split,
)
from chromapipe.types import (
    BadHeights,
    DepthExceeded,
    IdealEscape,
    MapUndefined,
    MixedRings,
    NoSplit,
    NotAUnit,
    PrecisionExhausted,
)
from chromapipe.utils.sampling import random_staged, random_unit, rng_for

# Laurent profiles wide enough that nothing is truncated in the property checks. The
# p-inverted stage is exact only while numerators stay well below p^a/2.
AXIOM_RINGS = [
    build_staged(make_spec(2, 3, (2,), a=4, D=4, M=4, N=(7,))),
    build_staged(make_spec(2, 3, (2, 1), a=4, D=4, M=4, N=(7, 4))),
    build_staged(make_spec(2, 2, (1, 0), a=20, D=4, M=4)),
]

UNIT_RINGS = [
    build_staged(make_spec(2, 2, (1,), a=4, D=12, M=12, N=(4,))),
    build_staged(make_spec(3, 2, (1,), a=3, D=12, M=12, N=(3,))),
    build_staged(make_spec(2, 3, (2,), a=2, D=8, M=8, N=(4,))),
    build_staged(make_spec(2, 3, (2, 1), a=2, D=8, M=8, N=(4, 2))),
    build_staged(make_spec(2, 2, (1, 0), a=3, D=12, M=12, N=(3, 3))),
]

# k((y))[[x]] with x = u1 and y = u2.
KYX = build_staged(make_spec(2, 3, (2,), a=1, D=8, M=8, N=(4,)))


@st.composite
def staged_elements(draw, ring, stage, count=1):
    spec = ring.spec
    n_inv = len(spec.inverted(stage))
    # signed coordinates stay small once p is inverted
    coord = st.integers(-3, 3) if spec.is_rational(stage) else st.integers(0, spec.R.modulus - 1)
    out = []
    for _ in range(count):
        terms = {}
        for _ in range(draw(st.integers(0, 3))):
            exp = tuple(draw(st.lists(st.integers(0, 1), min_size=spec.n_gens, max_size=spec.n_gens)))
            coords = draw(st.lists(coord, min_size=spec.R.n, max_size=spec.R.n))
            c = spec.R.element(coords) * spec.R.from_int(spec.p ** draw(st.integers(0, 1)))
            terms[exp] = terms[exp] + c if exp in terms else c
        denoms = draw(st.lists(st.integers(0, 1), min_size=n_inv, max_size=n_inv))
        out.append(ring.element(terms, stage, denoms))
    return out


@st.composite
def axiom_triples(draw):
    ring = draw(st.sampled_from(AXIOM_RINGS))
    stage = draw(st.integers(0, ring.n_stages))
    return draw(staged_elements(ring, stage, 3))


@st.composite
def laurent_elements(draw):
    """Nonzero elements of k((y))[[x]] with several x-orders and y-denominators."""
    one = KYX.spec.R.one()
    terms = {}
    for _ in range(draw(st.integers(1, 5))):
        terms[(draw(st.integers(0, 3)), draw(st.integers(0, 3)))] = one
    return KYX.element(terms, 1, [draw(st.integers(0, 2))])


class TestBuild(unittest.TestCase):
    def test_height_one_has_no_generators(self):
        ring = build_staged(make_spec(2, 1, (), a=3))
        self.assertEqual(ring.spec.n_gens, 0)
        self.assertEqual(ring.from_int(3) * ring.from_int(5), ring.from_int(7))

    def test_laurent_stage(self):
        ring = build_staged(make_spec(2, 2, (1,), a=3))
        u1 = ring.generator(1, 1)
        self.assertTrue((u1 * ring.monomial([-1], 1, 1)).is_one())

    def test_rational_stage_inverts_p(self):
        ring = build_staged(make_spec(2, 2, (1, 0), a=3))
        self.assertEqual(ring.spec.inverted(2), (1, 0))
        self.assertTrue((ring.from_int(2, 2) * ring.gen_power(0, -1, 2)).is_one())

    def test_p_powers_in_rational_stage(self):
        ring = build_staged(make_spec(2, 2, (1, 0), a=3))
        p, p_inv = ring.generator(0, 2), ring.gen_power(0, -1, 2)
        self.assertTrue((p_inv * p_inv * p_inv * (p * p * p)).is_one())
        self.assertTrue((p_inv * (p_inv * (p_inv * p) * p) * p).is_one())
        self.assertEqual(p + p, p * p)
        self.assertTrue((p_inv + p_inv).is_one())
        self.assertEqual(ring.from_int(-2, 2), -p)
        self.assertEqual(str(-p), "-p")

    def test_p_powers_survive_low_precision(self):
        ring = build_staged(make_spec(2, 2, (1, 0), a=2))
        square = ring.generator(0, 2) * ring.generator(0, 2)
        self.assertFalse(square.is_zero())
        self.assertEqual(square, ring.gen_power(0, 2, 2))
        self.assertEqual(str(square), "p^2")
        self.assertEqual(ring.from_int(8, 2), ring.gen_power(0, 3, 2))
        self.assertEqual(try_invert(ring.gen_power(0, -2, 2)), square)

    def test_bad_heights(self):
        with self.assertRaises(BadHeights):
            make_spec(2, 2, (1, 2))
        with self.assertRaises(BadHeights):
            make_spec(2, 2, (3,))

    def test_denominator_cap(self):
        ring = build_staged(make_spec(2, 2, (1,), a=4, D=4, M=2))
        with self.assertRaises(PrecisionExhausted) as ctx:
            ring.monomial([-3], 1, 1)
        self.assertEqual(ctx.exception.label, "PrecisionExhausted@stage1")

    def test_mixed_rings(self):
        A = build_staged(make_spec(2, 2, (1,), a=3))
        B = build_staged(make_spec(2, 2, (1,), a=3, D=5))
        with self.assertRaises(MixedRings):
            A.one() + B.one()

    def test_lower_stage_is_promoted(self):
        ring = build_staged(make_spec(2, 2, (1,), a=3))
        total = ring.generator(1, 0) + ring.monomial([-1], 1, 1)
        self.assertEqual(total.stage, 1)
        self.assertEqual(total, ring.stage_map(ring.generator(1, 0), 1) + ring.monomial([-1], 1, 1))


class TestArithmetic(unittest.TestCase):
    def test_completion_kills_square(self):
        killed = build_staged(make_spec(2, 2, (1,), a=3, N=(2,)))
        x = killed.monomial([-1], 2, 1)
        self.assertTrue((x * x).is_zero())
        kept = build_staged(make_spec(2, 2, (1,), a=3, N=(3,)))
        y = kept.monomial([-1], 2, 1)
        self.assertEqual(y * y, kept.monomial([-2], 4, 1))

    def test_coefficients_reduced_by_completion(self):
        ring = build_staged(make_spec(2, 2, (1,), a=3, N=(2,)))
        self.assertEqual(ring.monomial([-1], 5, 1), ring.monomial([-1], 1, 1))

    def test_difference_of_squares_in_kyx(self):
        xy = KYX.monomial([1, -1], 1, 1)
        one = KYX.one(1)
        self.assertEqual((one + xy) * (one - xy), one - KYX.monomial([2, -2], 1, 1))

    def test_rendering(self):
        ring = build_staged(make_spec(2, 2, (1,), a=4))
        self.assertEqual(str(ring.zero(1)), "0")
        self.assertEqual(str(ring.generator(1, 1) + 2), "2 + u1")
        self.assertEqual(str(ring.one(1) - ring.generator(1, 1)), "1 - u1")
        self.assertEqual(str(ring.monomial([-1], 1, 1)), "u1^-1")
        rational = build_staged(make_spec(2, 2, (1, 0), a=3))
        self.assertEqual(str(rational.gen_power(0, -1, 2)), "p^-1")

    @settings(deadline=None, max_examples=300)
    @given(axiom_triples())
    def test_ring_axioms(self, triple):
        x, y, z = triple
        self.assertEqual(x + y, y + x)
        self.assertEqual(x * y, y * x)
        self.assertEqual((x + y) + z, x + (y + z))
        self.assertEqual((x * y) * z, x * (y * z))
        self.assertEqual(x * (y + z), x * y + x * z)
        self.assertTrue((x - x).is_zero())
        self.assertEqual(x * 1, x)


class TestIdealDegree(unittest.TestCase):
    def setUp(self):
        self.ring = build_staged(make_spec(2, 2, (1,), a=4, D=4, N=(4,)))

    def test_examples(self):
        ring = self.ring
        p, u1 = ring.from_int(2), ring.generator(1)
        self.assertEqual(ideal_degree(p * p * u1, 2), 3)
        self.assertEqual(ideal_degree(ring.monomial([-1], 2, 1), 1), 1)
        self.assertEqual(ideal_degree(p + u1, 2), 1)
        self.assertEqual(ideal_degree(p + u1, 1), 0)

    def test_zero_returns_cap(self):
        self.assertEqual(ideal_degree(self.ring.zero(0), 2), 4 + 4)
        self.assertEqual(ideal_degree(self.ring.zero(1), 1), 4)

    @settings(deadline=None, max_examples=300)
    @given(axiom_triples(), st.integers(0, 3))
    def test_filtration(self, triple, t):
        x, y, _ = triple
        spec = x.ring.spec
        assume(t <= spec.h)
        cap = spec.degree_cap(x.stage, t)
        dx, dy = ideal_degree(x, t), ideal_degree(y, t)
        self.assertGreaterEqual(ideal_degree(x * y, t), min(cap, dx + dy))
        self.assertGreaterEqual(ideal_degree(x + y, t), min(dx, dy))


class TestInversion(unittest.TestCase):
    def test_geometric_series(self):
        ring = build_staged(make_spec(2, 2, (1,), a=4, D=4, M=4, N=(4,)))
        x = ring.generator(1, 1) + 2
        expected = (
            ring.monomial([-1], 1, 1)
            + ring.monomial([-2], -2, 1)
            + ring.monomial([-3], 4, 1)
            + ring.monomial([-4], -8, 1)
        )
        self.assertEqual(try_invert(x), expected)

    def test_one_and_non_units(self):
        ring = build_staged(make_spec(2, 2, (1,), a=4))
        self.assertTrue(try_invert(ring.one(1)).is_one())
        with self.assertRaises(NotAUnit):
            try_invert(ring.from_int(2, 1))
        with self.assertRaises(NotAUnit):
            try_invert(ring.zero(1))
        with self.assertRaises(NotAUnit):
            try_invert(ring.generator(1, 0))

    def test_p_inverse_after_rationalization(self):
        ring = build_staged(make_spec(2, 2, (1, 0), a=3))
        inv = try_invert(ring.from_int(2, 2))
        self.assertEqual(inv, ring.gen_power(0, -1, 2))

    def test_negative_powers(self):
        ring = build_staged(make_spec(2, 2, (1,), a=4, D=12, M=12, N=(4,)))
        x = ring.generator(1, 1) + 2
        self.assertTrue((elem_pow(x, -2) * x * x).is_one())

    def test_round_trip_on_random_units(self):
        for i, ring in enumerate(UNIT_RINGS):
            rng = rng_for(7, f"units-{i}")
            stage = ring.n_stages
            for _ in range(125):
                x = random_unit(rng, ring, stage)
                self.assertTrue((x * try_invert(x)).is_one(), str(x))


class TestWeierstrass(unittest.TestCase):
    def test_examples(self):
        x = KYX.monomial([2, 0], 1, 1) + KYX.monomial([3, -1], 1, 1)
        e, unit = weierstrass_split(x, 1)
        self.assertEqual(e, 2)
        self.assertEqual(unit, KYX.one(1) + KYX.monomial([1, -1], 1, 1))
        self.assertEqual(weierstrass_split(KYX.one(1), 1), (0, KYX.one(1)))
        e, unit = weierstrass_split(KYX.monomial([1, 1], 1, 1), 1)
        self.assertEqual((e, unit), (1, KYX.generator(2, 1)))

    def test_zero_has_no_split(self):
        with self.assertRaises(NoSplit):
            weierstrass_split(KYX.zero(1), 1)

    def test_unit_part_with_y_denominator(self):
        unit = KYX.monomial([0, -1], 1, 1) + KYX.one(1)
        x = KYX.gen_power(1, 3, 1) * unit
        self.assertEqual(weierstrass_split(x, 1), (3, unit))
        self.assertTrue(is_unit(unit))
        # y/(1 + y) needs every power of y
        with self.assertRaises(PrecisionExhausted):
            try_invert(unit)

    def test_is_unit_follows_leading_coefficient(self):
        self.assertTrue(is_unit(KYX.monomial([0, -2], 1, 1) + KYX.generator(1, 1)))
        self.assertFalse(is_unit(KYX.generator(1, 1) + KYX.monomial([2, -1], 1, 1)))
        self.assertFalse(is_unit(KYX.zero(1)))

    @settings(deadline=None, max_examples=200)
    @given(laurent_elements())
    def test_split_reassembles(self, x):
        order, found = weierstrass_split(x, 1)
        self.assertEqual(order, min(exp[0] for exp, _ in x.terms))
        self.assertTrue(is_unit(found))
        self.assertEqual(KYX.gen_power(1, order, 1) * found, x)


class TestStagedMaps(unittest.TestCase):
    def setUp(self):
        self.ring = build_staged(make_spec(2, 2, (1,), a=4, D=12, M=12, N=(4,)))
        ring = self.ring
        self.phi = staged_map(ring, ring, {1: ring.generator(1, 1) + 2}, 1, 1, name="phi")
        self.psi = staged_map(ring, ring, {1: ring.generator(1, 1) - 2}, 1, 1, name="psi")

    def test_inverse_generator_goes_to_series(self):
        ring = self.ring
        image = apply_staged_map(self.phi, ring.monomial([-1], 1, 1))
        self.assertEqual(image, try_invert(ring.generator(1, 1) + 2))

    def test_map_to_p_is_undefined(self):
        ring = self.ring
        bad = staged_map(ring, ring, {1: ring.from_int(2, 1)}, 1, 1)
        with self.assertRaises(MapUndefined) as ctx:
            apply_staged_map(bad, ring.monomial([-1], 1, 1))
        self.assertEqual(ctx.exception.label, "MapUndefined@stage1")

    def test_identity(self):
        ring = AXIOM_RINGS[1]
        rng = rng_for(11, "identity")
        for stage in range(ring.n_stages + 1):
            ident = identity_map(ring, stage)
            for _ in range(70):
                x = random_staged(rng, ring, stage)
                self.assertEqual(apply_staged_map(ident, x), x)

    def test_coordinate_change_round_trip(self):
        rng = rng_for(13, "coordinates")
        for _ in range(100):
            x = random_staged(rng, self.ring, 1)
            self.assertEqual(apply_staged_map(self.psi, apply_staged_map(self.phi, x)), x)
        both = compose(self.psi, self.phi)
        self.assertEqual(both.images[0], self.ring.generator(1, 1))

    def test_continuity(self):
        ring = self.ring
        check_continuous(staged_map(ring, ring, {1: ring.generator(1) + 2}))
        with self.assertRaises(IdealEscape):
            check_continuous(staged_map(ring, ring, {1: ring.generator(1) + 1}))


class TestRealizeStaged(unittest.TestCase):
    def setUp(self):
        self.spec = make_spec(2, 2, (1,), a=2, D=2, M=2, N=(2,))

    def test_laurent_window_size(self):
        self.assertEqual(realize_staged(self.spec, 1, 2).size, 64)
        self.assertEqual(realize_staged(self.spec, 0, 2).size, 16)

    def test_agrees_with_tower(self):
        for s in (0, 1):
            for depth in (1, 2):
                report = check_realization(self.spec, s, depth)
                self.assertTrue(report.ok, report.describe())

    def test_two_stage_tower(self):
        spec = make_spec(2, 3, (2, 1), a=1, D=1, M=1, N=(1, 1))
        for s in (0, 1, 2):
            report = check_realization(spec, s, 2)
            self.assertTrue(report.ok, report.describe())

    def test_depth_bounds(self):
        with self.assertRaises(DepthExceeded):
            realize_staged(self.spec, 1, 0)
        with self.assertRaises(DepthExceeded):
            realize_staged(self.spec, 1, 4)

    def test_rational_stage(self):
        spec = make_spec(2, 2, (1, 0), a=2, D=2, M=2, N=(2, 2))
        ring = build_staged(spec)
        window = realize_staged(spec, 2, 2)
        self.assertIn(ring.gen_power(0, -1, 2), window)
        self.assertIn(ring.one(2), window)
        with self.assertRaises(ValueError):
            localization_diagram(spec, 2, 2)


if __name__ == "__main__":
    unittest.main()
