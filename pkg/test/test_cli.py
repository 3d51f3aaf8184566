import io
import os
import tempfile
import unittest
from unittest import mock

import pook
import urllib3

from hoprep import cli
from hoprep.cholparser import parse_problem
from hoprep.core import InvariantViolation
from hoprep.report import Report


class CliTests(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.output = os.path.join(self.tmp.name, "out.chol")
        self.stdout = io.BytesIO()
        self.stderr = io.BytesIO()

    def tearDown(self):
        self.tmp.cleanup()

    def run_main(self, *argv, **kwargs):
        return cli.main(list(argv), stdout=self.stdout, stderr=self.stderr, **kwargs)

    def test_output_file(self):
        code = self.run_main("--techniques=qle", "--output", self.output, "test/test_data/ex_ple.chol")

        self.assertEqual(code, cli.EXIT_OK)
        with open(self.output, "rb") as f:
            self.assertEqual(
                f.read(),
                b"(type i 0)\n(sym a i)\n(sym f (-> i i))\n(sym p (-> i o))\n(sym q (-> i i o))\n",
            )
        self.assertTrue(
            self.stdout.getvalue().startswith(b"qle removed 3 clauses in 2 rounds"),
            "report goes to stdout when the problem goes to a file",
        )
        self.assertEqual(self.stderr.getvalue(), b"")

    def test_problem_on_stdout(self):
        code = self.run_main("--techniques=hlbe", "test/test_data/ex_hidden.chol")

        self.assertEqual(code, cli.EXIT_OK)
        _, clauses = parse_problem(self.stdout.getvalue())
        self.assertEqual(len(clauses), 3)
        self.assertIn(b"hlbe removed 0 clauses", self.stderr.getvalue())

    def test_json_stats(self):
        code = self.run_main("--stats=json", "--techniques=bce,ple", "test/test_data/ex_blocked.chol")

        self.assertEqual(code, cli.EXIT_OK)
        self.assertIn(b'"name": "bce"', self.stderr.getvalue())

    def test_check_ground(self):
        code = self.run_main("--check-ground", "test/test_data/ex_contradiction.chol")

        self.assertEqual(code, cli.EXIT_OK)
        self.assertEqual(self.stdout.getvalue(), b"(clause (vars))\n")
        self.assertIn(b"oracle: agree", self.stderr.getvalue())

    def test_check_ground_skipped(self):
        code = self.run_main("--check-ground", "test/test_data/ex_ple.chol")

        self.assertEqual(code, cli.EXIT_OK)
        self.assertIn(b"oracle: skipped", self.stderr.getvalue())

    def test_oracle_mismatch(self):
        def drop_everything(clauses, config):
            return clauses.replace([]), Report()

        with mock.patch.object(cli, "run_techniques", side_effect=drop_everything):
            code = self.run_main(
                "--check-ground", "--output", self.output, "test/test_data/ex_contradiction.chol"
            )

        self.assertEqual(code, cli.EXIT_MISMATCH)
        self.assertFalse(os.path.exists(self.output), "no output on failure")

    def test_invariant_violation(self):
        with mock.patch.object(cli, "run_techniques", side_effect=InvariantViolation("broken")):
            code = self.run_main("--output", self.output, "test/test_data/ex_ple.chol")

        self.assertEqual(code, cli.EXIT_INVARIANT)
        self.assertFalse(os.path.exists(self.output))

    def test_parse_error(self):
        code = self.run_main("--output", self.output, "test/test_data/unbalanced.chol")

        self.assertEqual(code, cli.EXIT_ERROR)
        self.assertFalse(os.path.exists(self.output), "no output on failure")

    def test_missing_file(self):
        code = self.run_main("test/test_data/missing.chol")

        self.assertEqual(code, cli.EXIT_ERROR)
        self.assertEqual(self.stdout.getvalue(), b"")

    def test_unknown_technique(self):
        with self.assertRaises(SystemExit) as cm:
            self.run_main("--techniques=vivify", "test/test_data/ex_ple.chol")

        self.assertEqual(cm.exception.code, cli.EXIT_ERROR)

    def test_bad_rounds(self):
        code = self.run_main("--max-rounds", "0", "test/test_data/ex_ple.chol")

        self.assertEqual(code, cli.EXIT_ERROR)

    def test_ktol(self):
        args = cli.build_parser().parse_args(["--ktol", "inf", "x.chol"])

        self.assertEqual(args.ktol, float("inf"))
        self.assertEqual(args.techniques, ("all",))

    @pook.on
    def test_url_input(self):
        url = "https://problems.example.org/ex_ple.chol"

        with open("test/test_data/ex_ple.chol", "rb") as file:
            body = file.read()

        pook.get(url, reply=200, response_body=body)

        code = self.run_main("--techniques=ple", url)

        self.assertEqual(code, cli.EXIT_OK)
        self.assertIn(b"ple removed 3 clauses", self.stderr.getvalue())

    def test_unwritable_output(self):
        output = os.path.join(self.tmp.name, "missing", "out.chol")

        code = self.run_main("--output", output, "test/test_data/ex_ple.chol")

        self.assertEqual(code, cli.EXIT_ERROR)
        self.assertFalse(os.path.exists(output))
        self.assertEqual(self.stdout.getvalue(), b"")

    def test_unreachable_url(self):
        url = "https://problems.example.org/ex_ple.chol"
        http = mock.Mock()
        http.request.side_effect = urllib3.exceptions.MaxRetryError(None, url)

        code = self.run_main(url, http=http)

        self.assertEqual(code, cli.EXIT_ERROR)
        self.assertEqual(self.stdout.getvalue(), b"")
