import json
import unittest

from hoprep.cholparser import parse_problem
from hoprep.report import Report, TechniqueStats, emit_report

PROBLEM = """
(sym a o)
(sym b o)
(clause (vars) (pos a) (pos b))
(clause (vars) (neg a))
(clause (vars) (pos b))
"""


class ReportTests(unittest.TestCase):
    def setUp(self):
        _, self.n = parse_problem(PROBLEM)

    def test_empty_report(self):
        self.assertEqual(emit_report(Report()), b"0 pipeline rounds in 0.000 s\n")

    def test_stats(self):
        stats = TechniqueStats("hlbe", self.n)
        stats.rounds = 2
        stats.finish(self.n.clauses[1:])

        self.assertEqual(stats.clauses_removed, 1)
        self.assertEqual(stats.literals_removed, 2)
        self.assertEqual(str(stats), "hlbe removed 1 clauses in 2 rounds, 2 literals")

    def test_merge(self):
        first = TechniqueStats("ppe", self.n)
        first.rounds = 1
        first.finish(self.n.clauses[1:])
        second = TechniqueStats("ppe", self.n.clauses[1:])
        second.rounds = 1
        second.predicates_eliminated.append("a")
        second.branches.append("spe")
        second.finish(self.n.clauses[2:])

        report = Report()
        report.add(first)
        report.add(second)

        self.assertEqual(report["ppe"].clauses_before, 3)
        self.assertEqual(report["ppe"].clauses_after, 1)
        self.assertEqual(report["ppe"].rounds, 2)
        self.assertEqual(
            str(report["ppe"]), "ppe removed 2 clauses in 2 rounds, 3 literals, eliminated a (spe)"
        )

    def test_text(self):
        report = Report()
        stats = TechniqueStats("qle", self.n)
        stats.rounds = 1
        report.add(stats)
        report.rounds = 1
        report.oracle = "agree"

        self.assertEqual(
            emit_report(report).decode("utf-8").splitlines(),
            ["qle removed 0 clauses in 1 rounds", "1 pipeline rounds in 0.000 s", "oracle: agree"],
        )

    def test_json(self):
        report = Report()
        stats = TechniqueStats("bce", self.n)
        stats.finish(self.n.clauses[:1])
        report.add(stats)
        report.rounds = 1
        report.wall_time = 0.25

        data = json.loads(emit_report(report, "json"))

        self.assertEqual(data["rounds"], 1)
        self.assertEqual(data["wall_time"], 0.25)
        self.assertIsNone(data["oracle"])
        self.assertEqual(len(data["techniques"]), 1)
        self.assertEqual(data["techniques"][0]["name"], "bce")
        self.assertEqual(data["techniques"][0]["clauses_removed"], 2)
        self.assertEqual(data["techniques"][0]["literals_after"], 2)

    def test_unknown_format(self):
        with self.assertRaises(ValueError):
            emit_report(Report(), "xml")
