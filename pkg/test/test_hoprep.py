import math
import time
import unittest

from hoprep import hoprep
from hoprep.cholparser import parse_problem
from hoprep.core import UsageError


def read(path):
    with open(path, mode="rb") as f:
        return parse_problem(f.read())


def wait_for(key, timeout=30.0):
    deadline = time.monotonic() + timeout
    while not hoprep.all_done(key) and time.monotonic() < deadline:
        time.sleep(0.05)


class PipelineConfigTests(unittest.TestCase):
    def test_defaults(self):
        config = hoprep.PipelineConfig()

        self.assertEqual(config.techniques, ("hlbe", "ppe", "bce", "qle"))
        self.assertEqual(config.ktol, 10)
        self.assertEqual(config.hlbe_depth, 8)
        self.assertEqual(config.max_rounds, 3)

    def test_all(self):
        self.assertEqual(
            hoprep.PipelineConfig(techniques=("all",)).techniques, hoprep.DEFAULT_TECHNIQUES
        )
        self.assertEqual(
            hoprep.PipelineConfig(techniques=("ple", "all")).techniques,
            ("ple",) + hoprep.DEFAULT_TECHNIQUES,
        )

    def test_infinite_tolerance(self):
        self.assertTrue(math.isinf(hoprep.PipelineConfig(ktol=math.inf).ktol))

    def test_invalid(self):
        for kwargs in (
            {"techniques": ("blocked",)},
            {"techniques": ()},
            {"max_rounds": 0},
            {"hlbe_depth": 0},
            {"ktol": -1},
            {"ktol": math.nan},
            {"stats": "xml"},
        ):
            with self.assertRaises(UsageError, msg=str(kwargs)):
                hoprep.PipelineConfig(**kwargs)


class RunTechniquesTests(unittest.TestCase):
    def test_stops_when_nothing_is_left(self):
        _, n = read("test/test_data/ex_ple.chol")

        result, report = hoprep.run_techniques(n, hoprep.PipelineConfig())

        self.assertEqual(len(result), 0)
        self.assertEqual(report.rounds, 1)
        self.assertEqual(list(report.techniques), ["hlbe", "ppe", "bce", "qle"])
        self.assertEqual(report["ppe"].predicates_eliminated, ["p", "q"])

    def test_stops_when_nothing_changes(self):
        _, n = read("test/test_data/ex_sle_i.chol")

        result, report = hoprep.run_techniques(n, hoprep.PipelineConfig(techniques=("ple",)))

        self.assertEqual(result, n)
        self.assertEqual(report.rounds, 1)

    def test_order(self):
        _, n = read("test/test_data/ex_choice.chol")
        config = hoprep.PipelineConfig(techniques=("bce", "ple"), max_rounds=5)

        result, report = hoprep.run_techniques(n, config)

        self.assertEqual(list(result.clauses), list(n.clauses[:3]))
        self.assertEqual(list(report.techniques), ["bce", "ple"])
        self.assertEqual(report.rounds, 2)

    def test_technique_names(self):
        _, n = read("test/test_data/ex_definition.chol")
        config = hoprep.PipelineConfig(techniques=("dpe",))

        _, stats = hoprep.apply_technique("dpe", n, config)

        self.assertEqual(stats.name, "dpe")
        self.assertEqual(stats.branches[0], "dpe")

        with self.assertRaises(UsageError):
            hoprep.apply_technique("vivify", n, config)


class PreprocessTests(unittest.TestCase):
    def test_file(self):
        result = hoprep.preprocess(file="test/test_data/ex_ple.chol", techniques=["qle"])

        self.assertEqual(len(result.clauses), 0)
        self.assertEqual(result.report["qle"].clauses_removed, 3)
        self.assertTrue(result.signature.has_symbol("p"))

    def test_string_content(self):
        with open("test/test_data/ex_hidden.chol", mode="rb") as f:
            string_content = f.read()

        result = hoprep.preprocess(string_content=string_content, techniques=["hlbe"])

        self.assertEqual(len(result.clauses), 3)
        self.assertEqual(result.report["hlbe"].literals_removed, 2)

    def test_no_problem(self):
        with self.assertRaises(IOError):
            hoprep.preprocess()

    def test_request_data(self):
        key = "request-data"

        hoprep.request_data(key, {"file": "test/test_data/ex_blocked.chol"})

        self.assertTrue(hoprep.all_done(key), "request is finished")
        self.assertEqual(len(hoprep.latest_result(key).clauses), 0)

    def test_failed_request(self):
        key = "failed"

        hoprep.request_data(key, {"file": "test/test_data/unbalanced.chol"})

        self.assertIsNone(hoprep.latest_result(key))

    def test_async(self):
        key = "async"

        hoprep.preprocess_async(key, file="test/test_data/ex_ple.chol", techniques=["ple"])
        hoprep.preprocess_async(key, file="test/test_data/ex_sle_i.chol", techniques=["ple"])

        wait_for(key)

        self.assertTrue(hoprep.all_done(key), "requests are finished")
        self.assertEqual(len(hoprep.latest_result(key).clauses), 2, "the later request wins")
