import unittest

from hoprep.bce import binary_flat_l_resolvent, is_blocked, run_bce
from hoprep.cholparser import parse_problem
from hoprep.core import Clause, UsageError, neg, pos


def read(path):
    with open(path, mode="rb") as f:
        return parse_problem(f.read())


class ResolventTests(unittest.TestCase):
    def setUp(self):
        self.sig, self.n = read("test/test_data/ex_blocked.chol")
        self.p, self.q = self.sig.const("p"), self.sig.const("q")

    def test_propositional(self):
        c, d, _ = self.n.clauses

        resolvent = binary_flat_l_resolvent(c, neg(self.p), d, pos(self.p))

        self.assertEqual(resolvent, Clause([pos(self.q), neg(self.q)]))

    def test_keeps_other_literals(self):
        c, _, e = self.n.clauses
        r = self.sig.const("r")

        resolvent = binary_flat_l_resolvent(c, pos(self.q), e, neg(self.q))

        self.assertEqual(resolvent, Clause([neg(self.p), pos(r)]))

    def test_same_polarity(self):
        c = self.n.clauses[0]

        self.assertIsNone(binary_flat_l_resolvent(c, neg(self.p), c, neg(self.p)))


class IsBlockedTests(unittest.TestCase):
    def setUp(self):
        self.sig, self.n = read("test/test_data/ex_blocked.chol")
        self.p, self.q = self.sig.const("p"), self.sig.const("q")

    def test_blocked(self):
        clause = self.n.clauses[0]

        blocked, certificate = is_blocked(clause, neg(self.p), self.n)

        self.assertTrue(blocked)
        self.assertEqual(certificate.clause_index, 0)
        self.assertEqual(certificate.literal, neg(self.p))
        self.assertEqual([index for index, _, _ in certificate.resolvents], [1])
        self.assertEqual(str(certificate), "¬p ∨ q blocked by ¬p (1 resolvents)")

    def test_not_blocked(self):
        clause = self.n.clauses[0]

        self.assertEqual(is_blocked(clause, pos(self.q), self.n), (False, None))

    def test_disequation_resolvent_is_not_valid(self):
        sig, n = parse_problem(
            "(type i 0) (sym a i) (sym p (-> i o))"
            "(clause (vars) (pos (app p a)))"
            "(clause (vars) (neg (app p a)))"
        )
        clause = n.clauses[0]

        self.assertFalse(is_blocked(clause, clause[0], n)[0])

    def test_equation_literal(self):
        _, n = read("test/test_data/ex_choice.chol")
        clause = n.clauses[4]

        with self.assertRaises(UsageError):
            is_blocked(clause, clause[1], n)

    def test_occurs_deep(self):
        _, n = read("test/test_data/ex_choice.chol")
        clause = n.clauses[1]

        self.assertFalse(is_blocked(clause, clause[0], n)[0])


class RunBceTests(unittest.TestCase):
    def test_removes_blocked_clauses(self):
        _, n = read("test/test_data/ex_blocked.chol")

        result, stats = run_bce(n)

        self.assertEqual(len(result), 0)
        self.assertEqual(len(stats.certificates), 3)
        self.assertEqual(stats.certificates[0].clause, n.clauses[0])

    def test_choice_instance(self):
        _, n = read("test/test_data/ex_choice.chol")

        result, stats = run_bce(n)

        self.assertEqual(list(result.clauses), list(n.clauses[:3]))
        self.assertEqual(stats.clauses_removed, 2)
        self.assertEqual(str(stats), "bce removed 2 clauses in 1 rounds, 3 literals")

    def test_contradiction_stays(self):
        sig, n = parse_problem(
            "(type i 0) (sym a i) (sym p (-> i o))"
            "(clause (vars) (pos (app p a)))"
            "(clause (vars) (neg (app p a)))"
        )

        result, stats = run_bce(n)

        self.assertEqual(result, n)
        self.assertEqual(stats.certificates, [])

    def test_order_independent(self):
        for path in ("test/test_data/ex_blocked.chol", "test/test_data/ex_choice.chol"):
            _, n = read(path)
            expected, _ = run_bce(n)

            for seed in range(10):
                result, _ = run_bce(n, seed=seed)

                self.assertEqual(list(result.clauses), list(expected.clauses), seed)
