import unittest

from chromapipe.coeff import galois_ring
from chromapipe.tower import (
    RigidPresentation,
    check_cofine,
    check_commutes,
    check_fine,
    check_product,
    clog_example,
    cofineify0,
    constant_diagram,
    from_galois,
    include_level,
    integer_tower,
    integers_mod,
    is_bijective_at,
    is_ring_map,
    power_series_tower,
    quotient_ind_system,
    realize,
    rigid_quotient,
    rigid_tower,
    sample_diagrams,
    sample_pairs,
    shift_ind_system,
    zero_inclusion_system,
    zero_map_system,
)
from chromapipe.types import BadLevel, DepthExceeded, NotRigid

F2 = galois_ring(2, 1, 1)
F3 = galois_ring(3, 1, 1)


class TestRealization(unittest.TestCase):
    def test_constant_diagram_realizes_to_its_ring(self):
        X = constant_diagram(from_galois(F2), 0, 4)
        r = realize(X, 2)
        self.assertEqual(r.ring.size, 2)
        self.assertTrue(r.stabilized)

    def test_integer_tower_is_not_stable(self):
        r = realize(integer_tower(2, 4), 3)
        self.assertEqual(r.ring.size, 8)
        self.assertFalse(r.stabilized)

    def test_clog_q0_realizes_to_truncated_series(self):
        ex = clog_example(F2, 4)
        r = realize(ex.q0, 4)
        self.assertEqual(r.ring.size, 16)
        self.assertEqual(len(r.ring.elements[0]), 4)

    def test_depth_outside_bound_raises(self):
        with self.assertRaises(DepthExceeded):
            realize(integer_tower(2, 3), 4)
        with self.assertRaises(DepthExceeded):
            realize(integer_tower(2, 3), 0)

    def test_structure_maps_commute(self):
        self.assertTrue(check_commutes(shift_ind_system(F2, 3), 3).ok)
        self.assertTrue(check_commutes(clog_example(F2, 2).q0, 3).ok)

    def test_realization_commutes_with_products(self):
        pairs = sample_pairs(20, depth_bound=3)
        self.assertEqual(len(pairs), 20)
        for X, Y in pairs:
            report = check_product(X, Y, 3)
            self.assertTrue(report.ok, report.describe())


class TestFineCofine(unittest.TestCase):
    def test_zero_pipes_are_fine(self):
        self.assertTrue(check_fine(integer_tower(2, 4), 3).ok)

    def test_multiplication_by_x_is_fine(self):
        self.assertTrue(check_fine(shift_ind_system(F2, 3), 3).ok)

    def test_ind_quotient_is_not_fine(self):
        report = check_fine(quotient_ind_system(3), 2)
        self.assertFalse(report.ok)
        self.assertEqual(report.index, (0, 0))

    def test_cofine_examples(self):
        self.assertTrue(check_cofine(constant_diagram(from_galois(F2), 0, 4), 3).ok)
        for d in (1, 2, 3):
            self.assertTrue(check_cofine(integer_tower(2, 4), d).ok)

    def test_inclusion_of_zero_is_not_cofine(self):
        report = check_cofine(zero_inclusion_system(4), 2)
        self.assertFalse(report.ok)
        self.assertEqual(report.index, (0,))


class TestEventualImage(unittest.TestCase):
    def test_constant_system_is_its_own_eventual_image(self):
        out = cofineify0(constant_diagram(integers_mod(2, 2), 0, 4), 3)
        self.assertTrue(out.stabilized)
        self.assertEqual([out.diagram.leaf((a,)).size for a in range(3)], [4, 4, 4])

    def test_zero_maps_give_zero_ring(self):
        out = cofineify0(zero_map_system(2, 4), 3)
        self.assertTrue(out.stabilized)
        self.assertEqual([out.diagram.leaf((a,)).size for a in range(3)], [1, 1, 1])

    def test_surjective_tower_unchanged_and_cofine(self):
        out = cofineify0(integer_tower(2, 5), 3)
        self.assertEqual([out.diagram.leaf((a,)).size for a in range(3)], [2, 4, 8])
        self.assertTrue(check_cofine(out.diagram, 3).ok)
        self.assertTrue(is_bijective_at(out.inclusion, 3))

    def test_window_must_leave_room(self):
        with self.assertRaises(DepthExceeded):
            cofineify0(integer_tower(2, 3), 3)


class TestLevelInclusion(unittest.TestCase):
    def test_i0_of_constant_is_constant(self):
        ring = from_galois(F2)
        inc = include_level(constant_diagram(ring, 0, 3), 0)
        self.assertEqual(inc.diagram.length, 1)
        for idx in inc.diagram.indices(3):
            self.assertIs(inc.diagram.leaf(idx), ring)

    def test_reindexing_formulas(self):
        X = power_series_tower(F2, 4)
        q0 = include_level(X, 0).diagram
        q1 = include_level(X, 1).diagram
        for b, g, d in q0.indices(4):
            self.assertIs(q0.leaf((b, g, d)), X.leaf((d,)))
            self.assertIs(q1.leaf((b, g, d)), X.leaf((b,)))

    def test_realization_preserved(self):
        for length, levels in ((0, (0, 1)), (1, (0, 1, 2))):
            for X in sample_diagrams(length, 3):
                for m in levels:
                    inc = include_level(X, m)
                    self.assertEqual(realize(inc.diagram, 3).ring.size, realize(X, 3).ring.size)
                    self.assertTrue(is_bijective_at(inc.comparison, 3))

    def test_bad_level(self):
        X = integer_tower(2, 3)
        with self.assertRaises(BadLevel):
            include_level(X, 2)
        with self.assertRaises(BadLevel):
            include_level(X, -1)


class TestClog(unittest.TestCase):
    def test_clog_realizes_to_bijection_with_nonzero_kernel(self):
        for depth in range(1, 7):
            ex = clog_example(F2, depth)
            self.assertTrue(ex.bijective, depth)
            self.assertTrue(ex.kernel_nonzero, depth)
            self.assertEqual(len(ex.kernel), depth)

    def test_kernel_stages_are_powers_of_x(self):
        ex = clog_example(F2, 4)
        for n, stage in enumerate(ex.kernel, start=1):
            self.assertEqual(stage.size, 2 ** (5 - n))
            for element in stage.elements:
                self.assertTrue(all(c.is_zero() for c in element[:n]))

    def test_clog_over_f3(self):
        ex = clog_example(F3, 2)
        self.assertTrue(ex.bijective)
        self.assertEqual([stage.size for stage in ex.kernel], [9, 3])

    def test_depth_one_has_single_stage(self):
        ex = clog_example(F2, 1)
        self.assertEqual(len(ex.kernel), 1)
        self.assertEqual(ex.kernel[0].name, "(x^1)")


class TestRigidQuotient(unittest.TestCase):
    def setUp(self):
        self.R = galois_ring(2, 2, 1)
        self.S = rigid_tower(self.R, 3)

    def test_pro_maps_are_ring_maps(self):
        X = self.S.diagram
        self.assertTrue(is_ring_map(X.step(0, (2,)), X.leaf((2,)), X.leaf((1,))))

    def test_zero_ideal_gives_zero_diagram(self):
        Q = rigid_quotient(self.S, [0])
        for j in range(3):
            self.assertEqual(Q.diagram.leaf((j,)).size, 1)

    def test_unit_ideal_gives_same_diagram(self):
        Q = rigid_quotient(self.S, [1])
        for j in range(3):
            self.assertEqual(Q.diagram.leaf((j,)).elements, self.S.diagram.leaf((j,)).elements)

    def test_p_times_each_stage(self):
        Q = rigid_quotient(self.S, [2])
        for j in range(3):
            A = self.S.diagram.leaf((j,))
            expected = {tuple(c * 2 for c in a) for a in A.elements}
            self.assertEqual(set(Q.diagram.leaf((j,)).elements), expected)
        self.assertTrue(check_commutes(Q.diagram, 3).ok)

    def test_non_rigid_rejected(self):
        plain = RigidPresentation(base="F2", diagram=power_series_tower(F2, 3), act=self.S.act)
        with self.assertRaises(NotRigid):
            rigid_quotient(plain, [1])


if __name__ == "__main__":
    unittest.main()
