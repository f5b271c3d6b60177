import math
import unittest

from hypothesis import given, settings, strategies as st

from chromapipe.fgl import (
    additive,
    comp_inverse,
    compose,
    conjugate,
    fgl_validate,
    from_coefficients,
    hazewinkel_deformation,
    hazewinkel_law,
    height,
    honda,
    make_series,
    multiplicative,
    p_series,
    pushforward,
    reduce_fraction,
    reduce_mod_ideal,
    standard_fgl,
    substitute,
    variable,
    check_lt_coordinate,
    check_star,
)
from chromapipe.fgl.laws import FGL
from chromapipe.coeff import galois_ring
from chromapipe.staged import build_staged, identity_map, make_spec
from chromapipe.types import IntegralityFailure, NotAUnit, PrecisionExhausted
from chromapipe.utils.sampling import random_coefficient, random_staged, rng_for

Z32 = build_staged(make_spec(2, 1, (), a=5, N_x=6))
Z8 = build_staged(make_spec(2, 1, (), a=3, N_x=6))
Z4 = build_staged(make_spec(2, 1, (), a=2, N_x=4))
Z9 = build_staged(make_spec(3, 1, (), a=2, N_x=5))
F2 = build_staged(make_spec(2, 1, (), a=1))
F4 = build_staged(make_spec(2, 2, (), a=1, n=2))
E2 = build_staged(make_spec(2, 2, (1,), a=1, D=4, M=4))
E3 = build_staged(make_spec(2, 3, (), a=1, D=4, M=4))


def random_phi(ring, seed, stage=0):
    """x-series with a unit linear coefficient and small higher terms."""
    rng = rng_for(seed, "phi")
    nx = ring.spec.profile.N_x
    coeffs = [ring.zero(stage), ring.constant(random_coefficient(rng, ring.spec.R, unit=True), stage)]
    for _ in range(2, nx):
        coeffs.append(random_staged(rng, ring, stage, terms=2, max_exp=1, max_denom=0, max_val=1))
    return from_coefficients(ring, stage, coeffs, nx)


class TestSeries(unittest.TestCase):
    def test_compose_binomial(self):
        f = from_coefficients(Z32, 0, [0, 0, 1], 6)
        g = from_coefficients(Z32, 0, [0, 1, 1], 6)
        self.assertEqual(compose(f, g), from_coefficients(Z32, 0, [0, 0, 1, 2, 1], 6))

    def test_compose_with_x(self):
        f = from_coefficients(Z32, 0, [0, 3, 5, 7], 6)
        x = variable(Z32, 0, 1, 0, 6)
        self.assertEqual(compose(f, x), f)
        self.assertEqual(compose(x, f), f)

    def test_catalan_inverse(self):
        f = from_coefficients(Z32, 0, [0, 1, 1], 6)
        expected = from_coefficients(Z32, 0, [0, 1, -1, 2, -5, 14], 6)
        self.assertEqual(comp_inverse(f), expected)

    def test_inverse_of_x(self):
        x = variable(Z8, 0, 1, 0, 6)
        self.assertEqual(comp_inverse(x), x)

    def test_non_unit_linear_term(self):
        f = from_coefficients(Z8, 0, [0, 2, 1], 6)
        with self.assertRaises(NotAUnit):
            comp_inverse(f)

    def test_constant_term_rejected(self):
        f = from_coefficients(Z8, 0, [1, 1], 6)
        with self.assertRaises(ValueError):
            comp_inverse(f)

    @settings(deadline=None, max_examples=50)
    @given(st.integers(0, 2 ** 32))
    def test_inverse_both_sides(self, seed):
        for ring in (Z8, E2):
            f = random_phi(ring, seed)
            g = comp_inverse(f)
            x = variable(ring, 0, 1, 0, ring.spec.profile.N_x)
            self.assertEqual(compose(f, g), x)
            self.assertEqual(compose(g, f), x)

    @settings(deadline=None, max_examples=25)
    @given(st.integers(0, 2 ** 32))
    def test_composition_associative(self, seed):
        f, g, h = (random_phi(E2, seed + k) for k in range(3))
        self.assertEqual(compose(compose(f, g), h), compose(f, compose(g, h)))


class TestLaws(unittest.TestCase):
    def test_standard_laws_validate(self):
        for ring in (Z8, Z9, F2, E2):
            for F in (additive(ring), multiplicative(ring)):
                self.assertTrue(fgl_validate(F).ok, F)

    def test_broken_unit_reported(self):
        one = Z8.one()
        F = FGL(make_series(Z8, 0, 2, 6, {(1, 0): one, (0, 1): one, (2, 0): one}), "broken")
        report = fgl_validate(F)
        self.assertFalse(report.ok)
        self.assertEqual(report.index, 2)
        self.assertIn("F(x,0) = x", report.detail)

    def test_rendering(self):
        self.assertEqual(str(multiplicative(Z8).F), "x + y + x*y")
        self.assertEqual(str(additive(Z8).F), "x + y")

    def test_standard_fgl_kinds(self):
        self.assertEqual(standard_fgl("multiplicative", Z8).F, multiplicative(Z8).F)
        self.assertEqual(standard_fgl("honda", F2, h=1).F, honda(F2, 1).F)
        with self.assertRaises(ValueError):
            standard_fgl("elliptic", Z8)

    def test_additive_p_series(self):
        self.assertEqual(p_series(additive(Z9)), from_coefficients(Z9, 0, [0, 3], 5))

    def test_multiplicative_p_series(self):
        self.assertEqual(p_series(multiplicative(Z9)), from_coefficients(Z9, 0, [0, 3, 3, 1], 5))
        self.assertEqual(p_series(multiplicative(F2)), from_coefficients(F2, 0, [0, 0, 1], 4))
        self.assertEqual(p_series(multiplicative(Z8), 3), from_coefficients(Z8, 0, [0, 3, 3, 1], 6))

    def test_p_series_leading_coefficient(self):
        for F in (multiplicative(Z8), hazewinkel_deformation(E2), hazewinkel_deformation(E3)):
            self.assertEqual(p_series(F).coefficient(1), F.ring.from_int(F.ring.spec.p))

    def test_p_series_rejects_zero(self):
        with self.assertRaises(ValueError):
            p_series(additive(Z8), 0)


class TestHazewinkel(unittest.TestCase):
    def test_rational_law_height_one(self):
        law = hazewinkel_law(2, 1, 4, deform=True)
        flat = {ij: c[()] for ij, c in law.items()}
        self.assertEqual(flat, {(1, 0): (1, 1), (0, 1): (1, 1), (1, 1): (-1, 1), (2, 1): (1, 1), (1, 2): (1, 1)})

    def test_height_one_deformation(self):
        ring = build_staged(make_spec(2, 1, (), a=3, N_x=4))
        G = hazewinkel_deformation(ring)
        self.assertTrue(fgl_validate(G).ok)
        self.assertEqual(p_series(G), from_coefficients(ring, 0, [0, 2, -1, 2], 4))
        self.assertTrue(check_lt_coordinate(G, 1).ok)

    def test_lubin_tate_height_two(self):
        G = hazewinkel_deformation(E2)
        self.assertTrue(fgl_validate(G).ok)
        self.assertTrue(check_lt_coordinate(G, 1).ok)
        self.assertTrue(check_lt_coordinate(G, 2).ok)
        # [2](x) = 2x - u1 x^2 + ... over Z/2.
        self.assertEqual(p_series(G).coefficient(2), E2.generator(1))

    def test_lubin_tate_height_three(self):
        G = hazewinkel_deformation(E3)
        for t in (1, 2, 3):
            self.assertTrue(check_lt_coordinate(G, t).ok, t)

    def test_lubin_tate_height_three_at_three(self):
        G = hazewinkel_deformation(build_staged(make_spec(3, 3, (), a=1, D=4, M=4)))
        self.assertTrue(fgl_validate(G).ok)
        for t in (1, 2, 3):
            self.assertTrue(check_lt_coordinate(G, t).ok, t)

    def test_lubin_tate_fails_for_honda(self):
        F = honda(E2, 2)
        report = check_lt_coordinate(F, 1)
        self.assertFalse(report.ok)
        self.assertEqual(report.index, 2)

    def test_reduction_is_honda(self):
        G = hazewinkel_deformation(E2)
        self.assertEqual(reduce_mod_ideal(G, 2).F, honda(E2, 2).F)

    def test_pushforward_identity(self):
        G = hazewinkel_deformation(E2)
        self.assertEqual(pushforward(G, identity_map(E2, 0)).F, G.F)

    def test_precision_guard(self):
        small = build_staged(make_spec(2, 2, (), a=1, N_x=4))
        with self.assertRaises(PrecisionExhausted):
            hazewinkel_deformation(small)
        with self.assertRaises(PrecisionExhausted):
            honda(F2, 2)

    def test_reduce_fraction(self):
        R = galois_ring(3, 2)
        self.assertEqual(reduce_fraction(1, 2, R), R.from_int(5))
        with self.assertRaises(IntegralityFailure):
            reduce_fraction(1, 3, R)


class TestHeight(unittest.TestCase):
    def test_multiplicative_height_one(self):
        self.assertEqual(height(multiplicative(F2), 1), 1)
        self.assertEqual(height(multiplicative(Z9), 1), 1)

    def test_honda_heights(self):
        self.assertEqual(p_series(honda(F2, 1)), from_coefficients(F2, 0, [0, 0, 1], 4))
        self.assertEqual(height(honda(F2, 1), 1), 1)
        F = honda(F4, 2)
        self.assertEqual(p_series(F), from_coefficients(F4, 0, [0, 0, 0, 0, 1], 6))
        self.assertEqual(height(F, 2), 2)

    def test_additive_has_no_finite_height(self):
        self.assertEqual(height(additive(F2), 1), math.inf)

    def test_deformation_heights(self):
        self.assertEqual(height(hazewinkel_deformation(E2), 2), 2)
        self.assertEqual(height(hazewinkel_deformation(E2, stage=1), 2), 1)

    def test_bound_too_large(self):
        with self.assertRaises(PrecisionExhausted):
            height(multiplicative(Z4), 2)


class TestConjugation(unittest.TestCase):
    def test_conjugate_by_x(self):
        F = multiplicative(Z8)
        self.assertEqual(conjugate(F, variable(Z8, 0, 1, 0, 6)).F, F.F)

    def test_conjugate_additive(self):
        phi = from_coefficients(Z32, 0, [0, 1, 1], 6)
        F = conjugate(additive(Z32), phi)
        x, y = variable(Z32, 0, 2, 0, 6), variable(Z32, 0, 2, 1, 6)
        direct = substitute(comp_inverse(phi), [substitute(phi, [x]) + substitute(phi, [y])])
        self.assertEqual(F.F, direct)
        self.assertTrue(fgl_validate(F).ok)

    def test_check_star_examples(self):
        self.assertTrue(check_star(honda(F2, 1), 1, 2).ok)
        self.assertTrue(check_star(multiplicative(Z4), 1, 2).ok)
        report = check_star(multiplicative(Z8), 1, 3)
        self.assertFalse(report.ok)
        self.assertEqual(report.index, 2)

    @settings(deadline=None, max_examples=10)
    @given(st.integers(0, 2 ** 32))
    def test_conjugate_keeps_star_and_height(self, seed):
        cases = [(multiplicative(Z4), 1, 2, 1), (hazewinkel_deformation(E2), 2, 4, 2)]
        for F, t, n, h in cases:
            phi = random_phi(F.ring, seed)
            G = conjugate(F, phi)
            self.assertTrue(fgl_validate(G).ok)
            self.assertTrue(check_star(G, t, n).ok)
            self.assertEqual(height(G, h), height(F, h))

    @settings(deadline=None, max_examples=20)
    @given(st.integers(0, 2 ** 32))
    def test_p_series_transport(self, seed):
        F = multiplicative(Z8)
        phi = random_phi(Z8, seed)
        G = conjugate(F, phi)
        self.assertEqual(p_series(G), compose(comp_inverse(phi), compose(p_series(F), phi)))

    @settings(deadline=None, max_examples=10)
    @given(st.integers(0, 2 ** 32))
    def test_conjugation_functorial(self, seed):
        F = hazewinkel_deformation(E2)
        phi = random_phi(E2, seed)
        psi = random_phi(E2, seed + 1)
        self.assertEqual(conjugate(conjugate(F, phi), psi).F, conjugate(F, compose(phi, psi)).F)


if __name__ == "__main__":
    unittest.main()
