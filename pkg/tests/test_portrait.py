import json
import unittest

from chromapipe.portrait import (
    GENERIC,
    GOLDENS,
    POINT,
    PRIME,
    IdealSpec,
    PortraitNode,
    closure,
    complete_action,
    divides,
    export_digest,
    export_graph,
    golden_portrait,
    localize_action,
    portrait_example,
)
from chromapipe.portrait.graph import base_level
from chromapipe.types import NotFactored, UnknownExample, UnknownFormat


def closure_signature(J):
    return {n.label(): base_level(n, 2) for n in closure(J, 4)}


class TestGoldens(unittest.TestCase):
    def test_example_portraits(self):
        for name in ("kxx", "kx_laurent", "kxy", "kxy_inv_y_hat_x"):
            golden = golden_portrait(name)
            nodes, edges = portrait_example(name, 4).signature()
            self.assertEqual(nodes, golden.nodes, name)
            self.assertEqual(edges, golden.edges, name)

    def test_plane_edge_count(self):
        self.assertEqual(len(portrait_example("kxy", 4).edges), 70)

    def test_closure_patterns(self):
        for name in ("closure_y3", "closure_x3_xy2_y"):
            golden = golden_portrait(name)
            J = IdealSpec(golden.ring, golden.factors)
            self.assertEqual(closure_signature(J), golden.nodes, name)

    def test_every_golden_resolves(self):
        for name in GOLDENS:
            self.assertTrue(golden_portrait(name).nodes)

    def test_unknown_names(self):
        with self.assertRaises(UnknownExample):
            golden_portrait("nope")
        with self.assertRaises(UnknownExample):
            portrait_example("k[[z]]")


class TestClosure(unittest.TestCase):
    def test_unit_ideal_is_empty(self):
        self.assertEqual(closure(IdealSpec("kxy")), frozenset())

    def test_zero_ideal_is_everything(self):
        G = portrait_example("kxy", 4)
        self.assertEqual(closure(IdealSpec("kxy", zero=True), 4), frozenset(G.nodes))

    def test_depth_caps_point_powers(self):
        nodes = closure(IdealSpec("kxy", (("x", 3), ("y", 3))), 4)
        self.assertIn(PortraitNode(POINT, "x,y", 4), nodes)
        self.assertNotIn(PortraitNode(POINT, "x,y", 5), nodes)

    def test_higher_order_factor(self):
        (node,) = [n for n in closure(IdealSpec("kxy", (("x^2+y^3", 1),))) if n.kind == PRIME]
        self.assertEqual(node.order, 2)
        self.assertEqual(node.label(), "(x^2+y^3)")

    def test_monotone(self):
        pairs = [
            (IdealSpec("kxy", (("x", 1),)), IdealSpec("kxy", (("x", 2), ("y", 1)))),
            (IdealSpec("kxy", (("y", 2),)), IdealSpec("kxy", (("x+y", 1), ("y", 3)))),
            (IdealSpec("kxy"), IdealSpec("kxy", (("x", 1),))),
            (IdealSpec("kxx", (("x", 1),)), IdealSpec("kxx", (("x", 4),))),
        ]
        for J, K in pairs:
            self.assertTrue(divides(J, K))
            self.assertTrue(closure(J) <= closure(K))

    def test_completion_absorbs_units(self):
        ring = "kxy_inv_y_hat_x"
        mixed = IdealSpec(ring, (("x", 2), ("x+y", 3), ("y", 2)))
        self.assertEqual(closure(mixed), closure(IdealSpec(ring, (("x", 2),))))
        self.assertEqual({n.label() for n in closure(mixed)}, {"(x)", "(x^2)"})

    def test_localization_drops_point(self):
        nodes = closure(IdealSpec("kxy_inv_y", (("x", 2), ("y", 1))))
        self.assertEqual({n.label() for n in nodes}, {"(x)", "(x^2)"})

    def test_not_factored(self):
        bad = [
            IdealSpec("kxy", (("x*y", 1),)),
            IdealSpec("kxy", (("x^2+y^2", 1),)),
            IdealSpec("kxy", (("x+1", 1),)),
            IdealSpec("kxy", (("x", 0),)),
            IdealSpec("kxy", (("x", 1), ("x", 2))),
            IdealSpec("kxx", (("y", 1),)),
            IdealSpec("kxy", (("x+", 1),)),
            IdealSpec("kxy", (("1", 1),)),
        ]
        for J in bad:
            with self.assertRaises(NotFactored, msg=str(J.factors)):
                closure(J)


class TestActions(unittest.TestCase):
    def test_line_localized_is_laurent(self):
        G = localize_action(portrait_example("kxx", 4), "x")
        self.assertEqual(G.signature(), portrait_example("kx_laurent", 4).signature())

    def test_plane_localized_at_y(self):
        before = portrait_example("kxy", 4)
        after = localize_action(before, "y")
        labels = {n.label() for n in after.nodes}
        self.assertFalse(any(n.kind == POINT for n in after.nodes))
        self.assertFalse(labels & {"(y)", "(y^2)", "(y^3)", "(y^4)"})
        kept = {n.label() for n in before.nodes if n.kind != POINT and not (n.kind == PRIME and n.prime == "y")}
        self.assertEqual(labels, kept)
        for n in after.nodes:
            self.assertEqual(after.level_of(n), before.level_of(n) + 1)

    def test_idempotent(self):
        G = portrait_example("kxy", 4)
        once = localize_action(G, "y")
        self.assertEqual(localize_action(once, "y"), once)
        done = complete_action(once, "x")
        self.assertEqual(complete_action(done, "x"), done)

    def test_actions_commute(self):
        G = portrait_example("kxy", 4)
        a = complete_action(localize_action(G, "y"), "x")
        b = localize_action(complete_action(G, "x"), "y")
        self.assertEqual(a, b)
        self.assertEqual(a.signature(), portrait_example("kxy_inv_y_hat_x", 4).signature())

    def test_bad_generator(self):
        with self.assertRaises(ValueError):
            localize_action(portrait_example("kxx", 4), "y")

    def test_levels_never_rise_along_edges(self):
        for name in ("kxx", "kx_laurent", "kxy", "kxy_inv_y", "kxy_inv_y_hat_x"):
            G = portrait_example(name, 5)
            for a, b in G.edges:
                self.assertLessEqual(G.level_of(b), G.level_of(a), name)

    def test_filtration(self):
        G = portrait_example("kxy", 3)
        low = G.filtration(-1)
        self.assertTrue(all(n.kind == POINT for n in low.nodes))
        self.assertEqual(len(low.nodes), 3)
        self.assertIn(PortraitNode(GENERIC), G.filtration(1).nodes)


class TestExport(unittest.TestCase):
    def test_laurent_dot(self):
        expected = (
            'digraph "kxx[1/x]" {\n'
            "\trankdir=BT;\n"
            "\tnode [shape=circle];\n"
            "\t{\n"
            "\t\trank = same;\n"
            '\t\tn0 [label="(0)@1"];\n'
            "\t}\n"
            "}\n"
        )
        self.assertEqual(export_graph(portrait_example("kx_laurent", 4), "dot"), expected.encode("utf-8"))

    def test_line_dot_is_stable(self):
        first = export_graph(portrait_example("kxx", 4), "dot")
        second = export_graph(portrait_example("kxx", 4), "dot")
        self.assertEqual(first, second)
        self.assertEqual(export_digest(first), export_digest(second))
        text = first.decode("utf-8")
        self.assertIn('n0 [label="(x)@-1"];', text)
        self.assertIn('n4 [label="(0)@0"];', text)
        self.assertIn("\tn1 -> n0;\n", text)
        self.assertIn("\tn4 -> n3;\n", text)
        self.assertEqual(text.count("->"), 10)

    def test_json_mirror(self):
        data = json.loads(export_graph(portrait_example("kxy_inv_y_hat_x", 4), "json"))
        self.assertEqual(data["name"], "kxy[1/y]^x")
        self.assertEqual([n["level"] for n in data["nodes"]], [1, 1, 1, 1, 2])
        self.assertEqual(len(data["edges"]), 10)

    def test_unknown_format(self):
        with self.assertRaises(UnknownFormat):
            export_graph(portrait_example("kxx", 4), "svg")


if __name__ == "__main__":
    unittest.main()
