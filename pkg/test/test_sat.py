import random
import unittest

import pytest

from hoprep.core import UsageError
from hoprep.sat import SatAssignment, SatProblem, brute_force, solve
from test.generators import random_cnf


class SolveTests(unittest.TestCase):
    def test_contradiction(self):
        self.assertIsNone(solve(SatProblem(1, [[1], [-1]])))

    def test_satisfiable(self):
        model = solve(SatProblem(2, [[1, 2], [-1, 2]]))

        self.assertIsNotNone(model)
        self.assertTrue(model[2], "variable 2 is true")

    def test_empty_clause(self):
        self.assertIsNone(solve(SatProblem(1, [[1], []])))

    def test_no_clauses(self):
        model = solve(SatProblem(3, []))

        self.assertEqual(model.values, (False, False, False))

    def test_deterministic(self):
        problem = SatProblem(4, [[1, 2, 3], [-1, -2], [2, 4], [-3, -4]])

        self.assertEqual(solve(problem), solve(problem))

    def test_model_satisfies_every_clause(self):
        rng = random.Random(1)

        for _ in range(200):
            problem = random_cnf(rng, rng.randint(1, 12), rng.randint(1, 30))
            model = solve(problem)

            if model is not None:
                self.assertTrue(all(model.satisfies(c) for c in problem.clauses))

    def test_agrees_with_brute_force(self):
        rng = random.Random(2)

        for _ in range(300):
            problem = random_cnf(rng, rng.randint(1, 10), rng.randint(1, 40))

            self.assertEqual(
                solve(problem) is None, brute_force(problem) is None, problem.to_dimacs()
            )

    def test_agrees_with_pysat(self):
        solvers = pytest.importorskip("pysat.solvers")
        rng = random.Random(3)

        for _ in range(300):
            problem = random_cnf(rng, rng.randint(1, 16), rng.randint(1, 70))
            with solvers.Glucose3() as solver:
                solver.append_formula([list(c) for c in problem.clauses])
                expected = solver.solve()

            self.assertEqual(solve(problem) is not None, expected, problem.to_dimacs())


class SatProblemTests(unittest.TestCase):
    def test_literal_out_of_range(self):
        with self.assertRaises(UsageError):
            SatProblem(2, [[1, 3]])

        with self.assertRaises(UsageError):
            SatProblem(2, [[0]])

    def test_dimacs(self):
        problem = SatProblem(3, [[1, -2], [2, 3], [-1]])

        text = problem.to_dimacs()

        self.assertEqual(text, "p cnf 3 3\n1 -2 0\n2 3 0\n-1 0\n")
        self.assertEqual(SatProblem.from_dimacs("c comment\n" + text), problem)

    def test_dimacs_without_header(self):
        with self.assertRaises(UsageError):
            SatProblem.from_dimacs("1 2 0\n")

    def test_assignment(self):
        assignment = SatAssignment((True, False))

        self.assertTrue(assignment[1])
        self.assertTrue(assignment.satisfies([-2]))
        self.assertFalse(assignment.satisfies([-1, 2]))
