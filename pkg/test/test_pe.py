import math
import unittest

from hoprep.cholparser import parse_problem
from hoprep.core import (
    BOOL,
    NotApplicableError,
    TypeApp,
    UsageError,
    arrow,
    count_symbol,
)
from hoprep.pe import (
    GrowthMetrics,
    associated_definition,
    dpe,
    find_definition_set,
    flat_resolvent,
    growth_check,
    ppe,
    resolved_set,
    run_pe,
    spe,
)

I = TypeApp("i")

SIG = """
(type i 0)
(sym a i)
(sym b i)
(sym f (-> i i))
(sym p (-> i o))
(sym q (-> i o))
"""


def read(path):
    with open(path, mode="rb") as f:
        return parse_problem(f.read())


def clauses(text, sig=SIG):
    _, clause_set = parse_problem(sig + text)
    return list(clause_set.clauses)


def mentions(clause_set, symbol):
    return any(
        count_symbol(lit.left, symbol) or count_symbol(lit.right, symbol)
        for clause in clause_set
        for lit in clause
    )


class FlatResolventTests(unittest.TestCase):
    def test_arguments_become_disequations(self):
        _, n = read("test/test_data/ex_spe.chol")
        c, d = n.clauses

        resolvent = flat_resolvent(c, c[0], d, d[0])

        (expected,) = clauses(
            "(clause (vars (Z i)) (neq (app f Z) (app f a)) (pos (app q Z)))"
        )
        self.assertEqual(resolvent, expected)

    def test_wrong_polarities(self):
        _, n = read("test/test_data/ex_spe.chol")
        c, d = n.clauses

        with self.assertRaises(UsageError):
            flat_resolvent(d, d[0], c, c[0])

    def test_different_predicates(self):
        c, d = clauses("(clause (vars) (pos (app p a))) (clause (vars) (neg (app q a)))")

        with self.assertRaises(UsageError):
            flat_resolvent(c, c[0], d, d[0])


class ResolvedSetTests(unittest.TestCase):
    def test_single_step(self):
        m = clauses("(clause (vars) (pos (app p a)))")
        n = clauses("(clause (vars (X i)) (neg (app p X)) (pos (app q X)))")

        result = resolved_set(m, n, "p")

        expected = clauses("(clause (vars (X i)) (neq a X) (pos (app q X)))")
        self.assertEqual(list(result.clauses), expected)
        self.assertEqual(result.steps, 1)

    def test_repeated_literals(self):
        m = clauses("(clause (vars) (pos (app p a)))")
        n = clauses("(clause (vars (X i) (Y i)) (neg (app p X)) (neg (app p Y)) (pos (app q X)))")

        result = resolved_set(m, n, "p")

        expected = clauses("(clause (vars (X i) (Y i)) (neq a Y) (neq a X) (pos (app q X)))")
        self.assertEqual(list(result.clauses), expected)
        self.assertEqual(result.steps, 2)

    def test_no_partner(self):
        n = clauses("(clause (vars) (neg (app p a)) (pos (app q a))) (clause (vars) (pos (app q b)))")

        result = resolved_set([], n, "p")

        self.assertEqual(list(result.clauses), n[1:])

    def test_partners_must_be_singular(self):
        m = clauses("(clause (vars) (pos (app p a)) (pos (app p b)))")

        with self.assertRaises(UsageError):
            resolved_set(m, [], "p")


class GrowthTests(unittest.TestCase):
    def test_tolerance(self):
        before = GrowthMetrics(10, 4, 5)
        after = GrowthMetrics(12, 4, 7)

        self.assertFalse(growth_check(before, after, 0))
        self.assertTrue(growth_check(before, after, 3))
        self.assertTrue(growth_check(before, after, math.inf))

    def test_fewer_variables(self):
        self.assertTrue(growth_check(GrowthMetrics(10, 4, 5), GrowthMetrics(20, 3, 20), 0))

    def test_metrics(self):
        _, n = read("test/test_data/ex_spe.chol")

        self.assertEqual(GrowthMetrics.of(n), GrowthMetrics(3, 1, 2))


class SpeTests(unittest.TestCase):
    def test_eliminates(self):
        _, n = read("test/test_data/ex_spe.chol")

        result = spe(n, "p")

        expected = clauses(
            "(clause (vars (Z i)) (neq (app f Z) (app f a)) (pos (app q Z)))"
        )
        self.assertEqual(list(result.clauses), expected)
        self.assertFalse(result.signature.has_symbol("p"))
        self.assertTrue(result.signature.has_symbol("q"))

    def test_not_singular(self):
        _, n = read("test/test_data/ex_sle_i.chol")

        with self.assertRaises(NotApplicableError):
            spe(n, "p")

    def test_occurs_deep(self):
        _, n = read("test/test_data/ex_sle_ii.chol")

        with self.assertRaises(NotApplicableError):
            spe(n, "p")


class DefinitionTests(unittest.TestCase):
    def setUp(self):
        _, self.n = read("test/test_data/ex_definition.chol")

    def test_found(self):
        definition = find_definition_set(self.n, "p")

        self.assertEqual(definition.symbol, "p")
        self.assertEqual(set(definition.clauses), set(self.n.clauses[:3]))
        self.assertEqual(definition.instance(()).ty, arrow(I, I, BOOL))
        self.assertEqual(associated_definition(definition).ty, BOOL)

    def test_not_a_definition(self):
        self.assertIsNone(find_definition_set(self.n, "q"), "rest mentions Y")

    def test_satisfiable_environment(self):
        _, n = read("test/test_data/ex_ple.chol")

        self.assertIsNone(find_definition_set(n, "p"))

    def test_dpe(self):
        definition = find_definition_set(self.n, "p")

        result = dpe(self.n, "p", definition)

        expected = clauses(
            "(clause (vars) (pos s))"
            "(clause (vars (X i) (Y i)) (neq a X) (neq b Y) (pos (app q X)) (pos (app r Y)))",
            sig=self.n_sig(),
        )
        self.assertEqual(list(result.clauses), expected)
        self.assertFalse(result.signature.has_symbol("p"))
        self.assertFalse(mentions(result, "p"))

    def test_clause_with_two_literals_left_out(self):
        with open("test/test_data/ex_definition.chol", mode="rb") as f:
            text = f.read() + b"(clause (vars (X i) (Y i)) (pos (app p X Y)) (neg (app p Y X)))\n"
        _, n = parse_problem(text)

        definition = find_definition_set(n, "p")

        self.assertIsNotNone(definition)
        self.assertEqual(set(definition.clauses), set(n.clauses[:3]))

        result = dpe(n, "p", definition)

        self.assertFalse(result.signature.has_symbol("p"))
        self.assertFalse(mentions(result, "p"))

    def test_dpe_wrong_symbol(self):
        definition = find_definition_set(self.n, "p")

        with self.assertRaises(UsageError):
            dpe(self.n, "q", definition)

    def n_sig(self):
        return """
        (type i 0)
        (sym a i)
        (sym b i)
        (sym q (-> i o))
        (sym r (-> i o))
        (sym s o)
        """


class PpeTests(unittest.TestCase):
    def test_prefers_definitions(self):
        _, n = read("test/test_data/ex_definition.chol")

        outcome = ppe(n, "p")

        self.assertEqual(outcome.branch, "dpe")
        self.assertEqual(len(outcome.clauses), 2)

    def test_falls_back_to_singular(self):
        _, n = read("test/test_data/ex_definition.chol")

        self.assertEqual(ppe(n, "q").branch, "spe")
        self.assertEqual(ppe(n, "p", branches=("spe",)).branch, "spe")

    def test_disabled_branches(self):
        _, n = read("test/test_data/ex_definition.chol")

        self.assertIsNone(ppe(n, "q", branches=("dpe",)))

    def test_growth_guard(self):
        atoms = ["a%d" % k for k in range(5)] + ["b%d" % k for k in range(5)]
        text = "(sym p o)" + "".join("(sym %s o)" % name for name in atoms)
        text += "".join("(clause (vars) (pos p) (pos a%d))" % k for k in range(5))
        text += "".join("(clause (vars) (neg p) (pos b%d))" % k for k in range(5))
        _, n = parse_problem(text)

        self.assertIsNone(ppe(n, "p", ktol=10))

        outcome = ppe(n, "p", ktol=math.inf)

        self.assertEqual(outcome.branch, "spe")
        self.assertEqual(len(outcome.clauses), 25)
        self.assertTrue(all(len(c) == 2 for c in outcome.clauses))


class RunPeTests(unittest.TestCase):
    def test_eliminates_everything(self):
        _, n = read("test/test_data/ex_ple.chol")

        result, stats = run_pe(n)

        self.assertEqual(len(result), 0)
        self.assertEqual(stats.predicates_eliminated, ["p", "q"])
        self.assertEqual(stats.branches, ["spe", "spe"])
        self.assertEqual(stats.clauses_removed, 3)

    def test_definition_first(self):
        _, n = read("test/test_data/ex_definition.chol")

        result, stats = run_pe(n, max_passes=1)

        self.assertEqual(stats.predicates_eliminated, ["p"])
        self.assertEqual(stats.branches, ["dpe"])
        self.assertEqual(stats.rounds, 1)
        self.assertFalse(mentions(result, "p"))

    def test_nothing_to_do(self):
        _, n = read("test/test_data/ex_sle_i.chol")

        result, stats = run_pe(n, branches=("spe",), name="spe")

        self.assertEqual(result, n)
        self.assertEqual(stats.name, "spe")
        self.assertEqual(str(stats), "spe removed 0 clauses in 1 rounds")

