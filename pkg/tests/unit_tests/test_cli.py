"""Test suite for the command-line front end.

This module covers:
- Exit statuses for success, failure and usage errors
- Files written by verify and threshold
- Procedure and mode resolution
"""

import argparse
import csv
import json
import logging
import os
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from io import StringIO

from flagshare.cli import build_parser, main, positive_int, resolve_procedure, unit_float
from flagshare.commands.tables import census_rows
from flagshare.errors import ConfigError

# Configure logging for tests
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class CliTestCase(unittest.TestCase):
    """End-to-end runs of main() in a temporary directory."""

    def setUp(self):
        logger.info("Setting up CLI tests")
        self.tmp = tempfile.TemporaryDirectory()
        self.out = os.path.join(self.tmp.name, "out")
        self.config_path = os.path.join(self.tmp.name, "config.json")
        with open(self.config_path, "w", encoding="utf-8") as f:
            json.dump({"logging": {"log_dir": os.path.join(self.tmp.name, "logs"), "level": "WARNING"}}, f)

    def tearDown(self):
        logging.getLogger("flagshare").handlers.clear()
        self.tmp.cleanup()

    def run_main(self, *argv):
        stdout = StringIO()
        with redirect_stdout(stdout):
            status = main(["--config", self.config_path, "--out", self.out, *argv])
        return status, stdout.getvalue()

    def test_codes(self):
        status, output = self.run_main("codes")
        self.assertEqual(status, 0)
        self.assertIn("shor913: [[9,1,3]]", output)
        self.assertIn("X_L1", output)

    def test_unknown_code_is_usage_error(self):
        with redirect_stderr(StringIO()), self.assertRaises(SystemExit) as ctx:
            self.run_main("verify", "--code", "golay")
        self.assertEqual(ctx.exception.code, 2)

    def test_zero_trials_is_usage_error(self):
        with redirect_stderr(StringIO()), self.assertRaises(SystemExit) as ctx:
            self.run_main("threshold", "--code", "422", "--trials", "0")
        self.assertEqual(ctx.exception.code, 2)

    def test_conflicting_mode(self):
        with redirect_stderr(StringIO()):
            status, _ = self.run_main("verify", "--code", "shor913", "--mode", "detect", "--procedure", "alg3")
        self.assertEqual(status, 2)

    def test_verify_422_parallel(self):
        status, output = self.run_main("verify", "--code", "422", "--scheme", "parallel")
        self.assertEqual(status, 0)
        self.assertIn("pass", output)
        folder = os.path.join(self.out, "verify")
        with open(os.path.join(folder, "422_parallel_detect_main0_wires.csv"), encoding="utf-8") as f:
            rows = list(csv.DictReader(f))
        self.assertEqual(len(rows), 32)
        with open(os.path.join(folder, "422_parallel_detect_certificate.json"), encoding="utf-8") as f:
            self.assertEqual(json.load(f)["verdict"], "pass")

    def test_uncertified_scheme_is_refused(self):
        status, _ = self.run_main("threshold", "--code", "steane713", "--scheme", "unflagged",
                                  "--procedure", "alg1", "--p", "0.001", "--trials", "10")
        self.assertEqual(status, 1)
        self.assertFalse(os.path.exists(os.path.join(self.out, "memory")))

    def test_threshold_grid(self):
        status, output = self.run_main("threshold", "--code", "422", "--scheme", "parallel",
                                       "--gamma", "0", "--p", "0.01", "0.02", "--trials", "50", "--seed", "9")
        self.assertEqual(status, 0)
        self.assertIn("seed 9", output)
        path = os.path.join(self.out, "memory", "422_parallel_detect_g0.csv")
        with open(path, encoding="utf-8") as f:
            self.assertEqual(len(list(csv.DictReader(f))), 2)

    def test_search_budget_violation(self):
        status, _ = self.run_main("search", "--code", "rm1513", "--group", "g1,g2,g3,g4")
        self.assertEqual(status, 1)

    def test_census_rows(self):
        rows = census_rows([("422", "flag"), ("422", "parallel")])
        totals = {(r["code"], r["scheme"]): r for r in rows if r["kind"] == "total"}
        self.assertEqual(totals[("422", "flag")]["computed"], 276)
        self.assertEqual(totals[("422", "flag")]["reference"], 276)
        self.assertEqual(len(rows), 14)


class ArgumentTestCase(unittest.TestCase):
    """Tests for argument types and procedure resolution."""

    def test_argument_types(self):
        self.assertEqual(positive_int("1e4"), 10000)
        with self.assertRaises(argparse.ArgumentTypeError):
            positive_int("0")
        with self.assertRaises(argparse.ArgumentTypeError):
            unit_float("1.5")

    def test_resolve_procedure(self):
        parser = build_parser()
        args = parser.parse_args(["verify", "--code", "shor913"])
        resolve_procedure(args)
        self.assertEqual((args.procedure, args.mode), ("alg3", "correct"))
        args = parser.parse_args(["verify", "--code", "422", "--scheme", "flag"])
        resolve_procedure(args)
        self.assertEqual((args.procedure, args.mode), ("detect", "detect"))
        args = parser.parse_args(["verify", "--code", "shor913", "--procedure", "detect", "--mode", "correct"])
        with self.assertRaises(ConfigError):
            resolve_procedure(args)


if __name__ == '__main__':
    unittest.main()
