import dataclasses
import unittest

from hypothesis import given, settings, strategies as st

from chromapipe.fgl import conjugate, from_coefficients, variable
from chromapipe.fgl.laws import FGL
from chromapipe.moduli import (
    change_coordinates,
    check_lubin_tate,
    classify,
    extend_map,
    height_mismatch_fixture,
    linearization,
    random_twist,
    tautological_deformation,
    twisted_deformation,
    validate_deformation,
)
from chromapipe.staged import apply_staged_map, build_staged, identity_map, make_spec, staged_map, try_invert
from chromapipe.types import HeightMismatch, IdealEscape, MapUndefined, NotLubinTate
from chromapipe.moduli.coordinates import _versal_lt_failure
from chromapipe.utils.sampling import random_staged, rng_for

E2 = build_staged(make_spec(2, 2, (1,), a=1, D=4, M=4))
TW = build_staged(make_spec(2, 2, (1,), a=2, D=6, M=8))
H3 = build_staged(make_spec(2, 3, (2, 1), a=2, D=8, M=8))
KXY = build_staged(make_spec(2, 3, (2,), a=1, D=4, M=4))


class TestValidation(unittest.TestCase):
    def test_tautological_passes(self):
        for ring in (E2, TW):
            self.assertTrue(validate_deformation(tautological_deformation(ring)).ok)

    def test_conjugated_stage_breaks_pushforward(self):
        D = tautological_deformation(E2)
        phi = from_coefficients(E2, 1, [0, 1, 0, 1], 6)
        bent = FGL(conjugate(D.fgls[1], phi).F, "bent")
        report = validate_deformation(dataclasses.replace(D, fgls=(D.fgls[0], bent)))
        self.assertFalse(report.ok)
        self.assertEqual(report.index, 1)
        self.assertIn("pushforward", report.detail)

    def test_wrong_declared_height(self):
        D = dataclasses.replace(tautological_deformation(E2), heights=(2, 2))
        report = validate_deformation(D)
        self.assertFalse(report.ok)
        self.assertEqual(report.index, 1)
        self.assertIn("height", report.detail)


class TestClassify(unittest.TestCase):
    def test_free_columns(self):
        self.assertEqual(linearization(E2).free_columns, ("b2", "b4"))
        self.assertEqual(linearization(E2).free_degrees, (2, 4))

    def test_tautological_is_identity(self):
        C = classify(tautological_deformation(E2))
        for s in (0, 1):
            self.assertEqual(C.image(s, 1), E2.generator(1, s))
            self.assertEqual(C.phis[s], variable(E2, s, 1, 0, 6))
        self.assertTrue(all(step.unique for step in C.steps))

    def test_twist_round_trip(self):
        u1 = TW.generator(1)
        twist = {1: u1 + TW.from_int(2)}
        _, phi = random_twist(rng_for(7, "twist"), TW, free=linearization(TW).free_degrees)
        C = classify(twisted_deformation(TW, twist, phi))
        self.assertEqual(C.image(0, 1), twist[1])
        self.assertEqual(C.phis[0], phi)
        self.assertEqual(C.phis[1].stage, 1)
        self.assertTrue(all(step.unique for step in C.steps))

    @settings(deadline=None, max_examples=5)
    @given(st.integers(0, 2 ** 32))
    def test_random_twist_round_trip(self, seed):
        twist, phi = random_twist(rng_for(seed, "twist"), TW, free=linearization(TW).free_degrees)
        C = classify(twisted_deformation(TW, twist, phi))
        self.assertEqual(C.image(0, 1), twist[1])
        self.assertEqual(C.phis[0], phi)

    def test_height_mismatch(self):
        with self.assertRaises(HeightMismatch) as ctx:
            classify(height_mismatch_fixture(E2))
        self.assertEqual(ctx.exception.label, "HeightMismatch@stage1")


class TestExtendMap(unittest.TestCase):
    def test_identity_extends(self):
        m = extend_map(identity_map(E2, 0), 1)
        self.assertEqual(m.image_of(1), E2.generator(1, 1))
        x = E2.gen_power(1, -1, 1)
        self.assertEqual(apply_staged_map(m, x), x)

    def test_twist_matches_coordinate_change(self):
        u1 = TW.generator(1)
        f = staged_map(TW, TW, {1: u1 + TW.from_int(2)}, 0, 0, name="twist")
        ext = extend_map(f, 1)
        change = change_coordinates(TW, {1: u1 + TW.from_int(2)})
        inv_u1 = TW.gen_power(1, -1, 1)
        expected = inv_u1 - TW.from_int(2, 1) * TW.gen_power(1, -2, 1)
        self.assertEqual(apply_staged_map(ext, inv_u1), expected)
        self.assertEqual(apply_staged_map(change.forward[1], inv_u1), expected)
        self.assertEqual(expected, try_invert(TW.generator(1, 1) + TW.from_int(2, 1)))

    def test_non_unit_image(self):
        f = staged_map(TW, TW, {1: TW.from_int(2)}, 0, 0, name="f")
        with self.assertRaises(MapUndefined) as ctx:
            extend_map(f, 1)
        self.assertEqual(ctx.exception.label, "MapUndefined@stage1")

    def test_ideal_escape(self):
        u1, u2 = KXY.generator(1), KXY.generator(2)
        f = staged_map(KXY, KXY, {1: u1 + u2}, 0, 0, name="f")
        with self.assertRaises(IdealEscape):
            extend_map(f, 1)


class TestChangeCoordinates(unittest.TestCase):
    def test_identity_system(self):
        change = change_coordinates(E2, {})
        for s, m in enumerate(change.forward):
            self.assertEqual(m.image_of(1), E2.generator(1, s))
            self.assertEqual(change.backward[s].image_of(1), E2.generator(1, s))

    def test_not_lubin_tate(self):
        with self.assertRaises(NotLubinTate):
            change_coordinates(TW, {1: TW.generator(1) + TW.one()})

    def test_versal_check_is_shared_across_coordinates(self):
        u1, u2 = H3.generator(1), H3.generator(2)
        p = H3.from_int(2)
        check_lubin_tate(H3, {1: u1, 2: u2 + p})
        before = _versal_lt_failure.cache_info().hits
        check_lubin_tate(H3, {1: u1 + p * u2, 2: u2})
        self.assertEqual(_versal_lt_failure.cache_info().hits, before + 1)
        with self.assertRaises(NotLubinTate):
            check_lubin_tate(H3, {1: u1 + H3.one(), 2: u2})

    def test_inverse_coordinates(self):
        u1, u2 = H3.generator(1), H3.generator(2)
        p = H3.from_int(2)
        change = change_coordinates(H3, {1: u1 + p * u2, 2: u2 + p})
        self.assertEqual(change.backward[0].image_of(1), u1 - p * u2)
        self.assertEqual(change.backward[0].image_of(2), u2 - p)
        self.assertEqual(len(change.forward), 3)

    @settings(deadline=None, max_examples=10)
    @given(st.integers(0, 2 ** 32))
    def test_composites_are_identity(self, seed):
        u1, u2 = H3.generator(1), H3.generator(2)
        p = H3.from_int(2)
        change = change_coordinates(H3, {1: u1 + p * u2, 2: u2 + p})
        rng = rng_for(seed, "coords")
        for s in range(3):
            fwd, bwd = change.forward[s], change.backward[s]
            for _ in range(3):
                x = random_staged(rng, H3, s, terms=3, max_exp=1, max_denom=1)
                self.assertEqual(apply_staged_map(fwd, apply_staged_map(bwd, x)), x)
                self.assertEqual(apply_staged_map(bwd, apply_staged_map(fwd, x)), x)


if __name__ == "__main__":
    unittest.main()
