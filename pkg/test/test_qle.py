import unittest

from hoprep.cholparser import parse_problem
from hoprep.qle import encode_qle, find_quasipure_set, is_quasipure, run_ple, run_qle


def read(path):
    with open(path, mode="rb") as f:
        return parse_problem(f.read())


class IsQuasipureTests(unittest.TestCase):
    def setUp(self):
        _, self.n = read("test/test_data/ex_ple.chol")

    def test_both_symbols(self):
        self.assertTrue(is_quasipure({"p", "q"}, {"p": True, "q": False}, self.n))

    def test_single_symbols(self):
        self.assertTrue(is_quasipure({"p"}, {"p": True}, self.n))
        self.assertFalse(is_quasipure({"q"}, {"q": False}, self.n), "q a X needs p")

    def test_wrong_polarity(self):
        self.assertFalse(is_quasipure({"q"}, {"q": True}, self.n))
        self.assertFalse(is_quasipure({"p", "q"}, {"p": False, "q": False}, self.n))

    def test_deep_occurrence(self):
        _, n = read("test/test_data/ex_sle_ii.chol")

        self.assertFalse(is_quasipure({"p"}, {"p": True}, n))
        self.assertTrue(is_quasipure({"p", "q"}, {"p": True, "q": False}, n))


class EncodingTests(unittest.TestCase):
    def test_families(self):
        _, n = read("test/test_data/ex_ple.chol")

        encoding = encode_qle(n)

        self.assertEqual(encoding.legend, {"p": (1, 2), "q": (3, 4)})
        self.assertEqual(encoding.problem.num_vars, 4)
        self.assertEqual(
            encoding.problem.clauses,
            ((-2, 3), (1, -4), (-2,), (-3,), (-1, -2), (-3, -4), (1, 2, 3, 4)),
        )

    def test_self_resolving_clause(self):
        _, n = read("test/test_data/ex_sle_i.chol")

        clauses = encode_qle(n).problem.clauses

        self.assertIn((-1, 1), clauses)
        self.assertIn((2, -2), clauses)
        self.assertIn((-2,), clauses)

    def test_deep_occurrence(self):
        _, n = read("test/test_data/ex_sle_ii.chol")

        clauses = encode_qle(n).problem.clauses

        self.assertIn((-1, 2, 4), clauses)
        self.assertIn((-2, 2, 4), clauses)

    def test_custom_order(self):
        _, n = read("test/test_data/ex_ple.chol")

        encoding = encode_qle(n, ["q", "p"])

        self.assertEqual(encoding.legend, {"q": (1, 2), "p": (3, 4)})


class FindQuasipureSetTests(unittest.TestCase):
    def test_maximal(self):
        _, n = read("test/test_data/ex_ple.chol")

        result = find_quasipure_set(n)

        self.assertEqual(result.symbols, frozenset({"p", "q"}))
        self.assertEqual(str(result), "{p:+, q:-}")

    def test_none(self):
        _, n = parse_problem(
            "(sym a o) (clause (vars) (pos a)) (clause (vars) (neg a))"
        )

        self.assertIsNone(find_quasipure_set(n))

    def test_any_order(self):
        _, n = read("test/test_data/ex_sle_ii.chol")

        for order in (["p", "q"], ["q", "p"]):
            result = find_quasipure_set(n, order)

            self.assertEqual(str(result), "{p:+, q:-}")


class RunQleTests(unittest.TestCase):
    def test_quasipure_example(self):
        _, n = read("test/test_data/ex_ple.chol")

        result, stats = run_qle(n)

        self.assertEqual(len(result), 0)
        self.assertEqual(str(stats), "qle removed 3 clauses in 2 rounds, 4 literals")

    def test_self_resolving(self):
        _, n = read("test/test_data/ex_sle_i.chol")

        result, _ = run_qle(n)

        self.assertEqual(len(result), 0)

    def test_deep_occurrence(self):
        _, n = read("test/test_data/ex_sle_ii.chol")

        result, _ = run_qle(n)

        self.assertEqual(len(result), 0)

    def test_contradiction_stays(self):
        _, n = parse_problem(
            "(sym a o) (sym b o)"
            "(clause (vars) (pos a)) (clause (vars) (neg a))"
            "(clause (vars) (pos b) (pos a))"
        )

        result, stats = run_qle(n)

        self.assertEqual(list(result.clauses), list(n.clauses[:2]))
        self.assertEqual(stats.clauses_removed, 1)

    def test_seeded(self):
        _, n = read("test/test_data/ex_ple.chol")

        for seed in range(10):
            result, _ = run_qle(n, seed=seed)

            self.assertEqual(len(result), 0, seed)


class RunPleTests(unittest.TestCase):
    def test_pure_example(self):
        _, n = read("test/test_data/ex_ple.chol")

        result, stats = run_ple(n)

        self.assertEqual(len(result), 0)
        self.assertEqual(stats.rounds, 2)

    def test_both_polarities(self):
        _, n = read("test/test_data/ex_sle_i.chol")

        result, _ = run_ple(n)

        self.assertEqual(result, n)

    def test_deep_occurrence(self):
        _, n = read("test/test_data/ex_sle_ii.chol")

        result, _ = run_ple(n)

        self.assertEqual(result, n)
