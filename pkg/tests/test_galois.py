import unittest

from hypothesis import given, settings, strategies as st

from chromapipe.coeff import galois_ring, default_modulus, gr_mul, gr_inv, gr_val, solve
from chromapipe.coeff.linalg import rref
from chromapipe.types import MixedRings, NotAUnit

SAMPLE_RINGS = [
    galois_ring(2, 3, 1),
    galois_ring(3, 2, 1),
    galois_ring(2, 2, 2),
    galois_ring(3, 2, 2),
    galois_ring(2, 3, 3),
]


@st.composite
def ring_and_elements(draw, count=3, unit=False):
    R = draw(st.sampled_from(SAMPLE_RINGS))
    out = []
    for _ in range(count):
        coords = draw(st.lists(st.integers(0, R.modulus - 1), min_size=R.n, max_size=R.n))
        if unit and all(c % R.p == 0 for c in coords):
            coords[0] += 1
        out.append(R.element(coords))
    return R, out


class TestGaloisRing(unittest.TestCase):
    def test_default_modulus_is_least_irreducible(self):
        self.assertEqual(default_modulus(2, 1), (0, 1))
        self.assertEqual(default_modulus(2, 2), (1, 1, 1))
        self.assertEqual(default_modulus(3, 2), (1, 0, 1))

    def test_reducible_modulus_rejected(self):
        with self.assertRaises(ValueError):
            galois_ring(2, 1, 2, f=[1, 0, 1])

    def test_integer_product(self):
        R = galois_ring(2, 3, 1)
        self.assertEqual(R.from_int(3) * R.from_int(5), R.from_int(7))

    def test_product_uses_defining_relation(self):
        R = galois_ring(2, 1, 2, f=[1, 1, 1])
        t = R.t()
        self.assertEqual((t * t).coeffs, (1, 1))

    def test_product_matches_schoolbook(self):
        R = galois_ring(3, 2, 2, f=[1, 0, 1])
        t = R.t()
        # t^2 = -1, so (t + 1)(t - 1) = -2
        self.assertEqual(((t + 1) * (t - 1)).coeffs, (7, 0))
        self.assertEqual((t + 1) * (t - 1), t * t - 1)

    def test_mixed_rings_rejected(self):
        R = galois_ring(2, 3, 1)
        S = galois_ring(2, 2, 1)
        with self.assertRaises(MixedRings):
            gr_mul(R.one(), S.one(), R)
        with self.assertRaises(MixedRings):
            R.one() + S.one()

    def test_inverse_examples(self):
        R = galois_ring(2, 3, 1)
        self.assertEqual(gr_inv(R.from_int(3), R), R.from_int(3))
        F3 = galois_ring(3, 1, 1)
        self.assertEqual(gr_inv(F3.from_int(2), F3), F3.from_int(2))

    def test_inverse_of_t_matches_brute_force(self):
        R = galois_ring(2, 2, 2)
        t = R.t()
        y = gr_inv(t, R)
        self.assertTrue((t * y).is_one())
        candidates = [z for z in R.elements() if (t * z).is_one()]
        self.assertEqual(candidates, [y])

    def test_inverse_of_non_unit_raises(self):
        R = galois_ring(2, 3, 1)
        with self.assertRaises(NotAUnit):
            gr_inv(R.from_int(6), R)

    def test_valuation_examples(self):
        R = galois_ring(2, 3, 1)
        self.assertEqual(gr_val(R.zero(), R), 3)
        self.assertEqual(gr_val(R.from_int(6), R), 1)
        S = galois_ring(3, 2, 2)
        self.assertEqual(gr_val(S.element([6, 3]), S), 1)

    def test_div_p_and_digits(self):
        R = galois_ring(3, 2, 1)
        x = R.from_int(6)
        self.assertEqual(x.div_p(), R.from_int(2))
        self.assertEqual(R.from_int(-3).div_p(), R.from_int(2))
        self.assertEqual(R.from_int(-3).div_p(balanced=True), R.from_int(-1))
        self.assertEqual(R.from_int(3).div_p(balanced=True), R.one())
        self.assertEqual(x.digit(1).coeffs, (2,))
        self.assertEqual(x.digit(0).coeffs, (0,))

    def test_prime_field_rref(self):
        F3 = galois_ring(3, 1, 1)
        rows = [[F3.from_int(c) for c in row] for row in ((1, 2, 1), (2, 1, 0))]
        reduced, pivots = rref(rows, F3)
        self.assertEqual(pivots, (0, 2))
        self.assertEqual(reduced, [[F3.one(), F3.from_int(2), F3.zero()], [F3.zero(), F3.zero(), F3.one()]])
        A = [row[:2] for row in rows]
        self.assertFalse(solve(A, [F3.one(), F3.zero()], F3).consistent)
        sol = solve(A, [F3.one(), F3.from_int(2)], F3)
        self.assertEqual((sol.rank, sol.unique), (1, False))
        self.assertEqual(sol.z, [F3.one(), F3.zero()])

    def test_solve_over_residue_field(self):
        k = galois_ring(2, 1, 2)
        t = k.t()
        A = [[k.one(), t], [k.zero(), k.one()]]
        b = [k.zero(), k.one()]
        sol = solve(A, b, k)
        self.assertTrue(sol.unique)
        self.assertEqual(sol.z, [t, k.one()])
        bad = solve([[k.one()], [k.one()]], [k.zero(), k.one()], k)
        self.assertFalse(bad.consistent)

    @settings(deadline=None, max_examples=200)
    @given(ring_and_elements())
    def test_ring_axioms(self, data):
        R, (x, y, z) = data
        self.assertEqual((x * y) * z, x * (y * z))
        self.assertEqual((x + y) + z, x + (y + z))
        self.assertEqual(x * (y + z), x * y + x * z)
        self.assertEqual(x * y, y * x)
        self.assertEqual(x + y, y + x)
        self.assertEqual(x - x, R.zero())
        self.assertEqual(x * R.one(), x)

    @settings(deadline=None, max_examples=200)
    @given(ring_and_elements(count=1, unit=True))
    def test_inverse_round_trip(self, data):
        R, (x,) = data
        self.assertTrue(gr_mul(x, gr_inv(x, R), R).is_one())

    @settings(deadline=None, max_examples=200)
    @given(ring_and_elements(count=2))
    def test_valuation_is_additive_in_chain_ring(self, data):
        R, (x, y) = data
        self.assertEqual(gr_val(x * y, R), min(gr_val(x, R) + gr_val(y, R), R.a))


if __name__ == "__main__":
    unittest.main()
