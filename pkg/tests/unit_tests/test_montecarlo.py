"""Test suite for Monte Carlo estimation.

This module covers:
- Per-trial seeding and independence from chunking and workers
- Wilson intervals and adaptive trial counts
- Pseudo-threshold search and report files
"""

import json
import logging
import math
import tempfile
import unittest
from dataclasses import dataclass

from flagshare.errors import ConfigError, UndefinedRateError
from flagshare.faults import NoiseParams
from flagshare.montecarlo import (RateEstimate, TrialOutcome, TrialSpec, Verdict, _interpolate, adaptive_estimate,
                                  estimate_rate, find_pseudothreshold, sweep, trial_rng, write_report)

# Configure logging for tests
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuadraticTrial:
    """Fails with probability scale * p**2; the crossing sits at 1 / scale."""

    target: str = "memory"
    code: str = "toy"
    scheme: str = "toy"
    procedure: str = "alg1"
    scale: float = 100.0

    def __call__(self, params, rng):
        failed = rng.random() < min(1.0, self.scale * params.p ** 2)
        return TrialOutcome(Verdict.LOGICAL_FAILURE if failed else Verdict.SUCCESS)


@dataclass(frozen=True)
class DiscardAboveTrial(QuadraticTrial):
    """QuadraticTrial that discards every trial once p exceeds limit."""

    limit: float = 0.02

    def __call__(self, params, rng):
        if params.p > self.limit:
            return TrialOutcome(Verdict.DISCARDED)
        return super().__call__(params, rng)


def coin(params, rng):
    return TrialOutcome(Verdict.LOGICAL_FAILURE if rng.random() < 0.5 else Verdict.SUCCESS)


def never(params, rng):
    return TrialOutcome(Verdict.SUCCESS)


def always_discard(params, rng):
    return TrialOutcome(Verdict.DISCARDED)


class SeedingTestCase(unittest.TestCase):
    """Tests for reproducibility."""

    def setUp(self):
        logger.info("Setting up seeding tests")

    def test_trial_rng(self):
        self.assertEqual(trial_rng(7, 3).random(), trial_rng(7, 3).random())
        self.assertNotEqual(trial_rng(7, 3).random(), trial_rng(7, 4).random())
        self.assertNotEqual(trial_rng(7, 3).random(), trial_rng(8, 3).random())

    def test_chunking_does_not_matter(self):
        params = NoiseParams(0.01, 1.0)
        whole = estimate_rate(coin, params, 3000, seed=5, chunk=3000)
        pieces = estimate_rate(coin, params, 3000, seed=5, chunk=250)
        self.assertEqual(whole, pieces)

    def test_workers_do_not_matter(self):
        spec = TrialSpec("memory", "422", "parallel", "detect")
        params = NoiseParams(0.02, 1.0)
        serial = estimate_rate(spec, params, 400, seed=11, workers=1, chunk=400)
        parallel = estimate_rate(spec, params, 400, seed=11, workers=2, chunk=100)
        self.assertEqual(serial, parallel)
        self.assertLess(serial.accepted, serial.trials)


class EstimateTestCase(unittest.TestCase):
    """Tests for rate estimates."""

    def test_interval_contains_rate(self):
        estimate = estimate_rate(coin, NoiseParams(0.01), 2000, seed=1)
        self.assertLessEqual(estimate.low, estimate.rate)
        self.assertLessEqual(estimate.rate, estimate.high)
        self.assertAlmostEqual(estimate.rate, 0.5, delta=0.05)
        self.assertEqual(estimate.acceptance, 1.0)

    def test_invalid_trial_count(self):
        with self.assertRaises(ConfigError):
            estimate_rate(coin, NoiseParams(0.01), 0)

    def test_all_discarded(self):
        with self.assertRaises(UndefinedRateError):
            estimate_rate(always_discard, NoiseParams(0.01), 10)

    def test_noiseless_schemes(self):
        for spec in (TrialSpec("memory", "shor913", "parallel", "alg3"),
                     TrialSpec("exrec", "422", "parallel", "detect")):
            estimate = estimate_rate(spec, NoiseParams(0.0, 1.0), 20)
            self.assertEqual(estimate.failures, 0)
            self.assertEqual(estimate.accepted, 20)

    def test_adaptive_growth(self):
        estimate = adaptive_estimate(coin, NoiseParams(0.01), 100, 10 ** 5, seed=2)
        self.assertEqual(estimate.trials, 400)
        capped = adaptive_estimate(never, NoiseParams(0.01), 100, 1000)
        self.assertEqual((capped.trials, capped.failures), (1000, 0))

    def test_trial_spec_validation(self):
        with self.assertRaises(ConfigError):
            TrialSpec("teleport", "422", "parallel", "detect")
        with self.assertRaises(ConfigError):
            TrialSpec("memory", "422", "parallel", "detect", rounds=0)
        self.assertEqual(TrialSpec("memory", "422", "parallel", "detect").mode, "detect")


class ThresholdTestCase(unittest.TestCase):
    """Tests for the pseudo-threshold search."""

    def test_interpolation(self):
        lo = RateEstimate(1e-3, 100, 0, 100, 5e-4, 0.0, 0.0)
        hi = RateEstimate(4e-3, 100, 0, 100, 8e-3, 0.0, 0.0)
        self.assertAlmostEqual(_interpolate(lo, hi), 1e-3 * 4 ** (1 / 9), places=9)

    def test_crossing_found(self):
        report = find_pseudothreshold(QuadraticTrial(), 1.0, p_range=(1e-3, 1e-1), points=5,
                                      trials=2000, max_trials=20000, budget=400000, seed=3)
        self.assertEqual(report.verdict, "crossing")
        self.assertTrue(5e-3 <= report.crossing <= 2e-2, report.crossing)
        lo, hi = report.bracket
        self.assertLess(lo, hi)
        self.assertEqual([e.p for e in report.grid], sorted(e.p for e in report.grid))
        self.assertTrue(math.isnan(report.reference))

    def test_no_crossing(self):
        report = find_pseudothreshold(QuadraticTrial(scale=1e-6), 1.0, p_range=(1e-3, 1e-1), points=3,
                                      trials=200, max_trials=200, seed=3)
        self.assertEqual(report.verdict, "below")
        self.assertIsNone(report.crossing)

    def test_discarded_grid_point_is_kept(self):
        report = find_pseudothreshold(DiscardAboveTrial(), 1.0, p_range=(1e-3, 5e-2), points=5,
                                      trials=2000, max_trials=20000, budget=400000, seed=3)
        self.assertNotEqual(report.verdict, "undefined")
        last = report.grid[-1]
        self.assertAlmostEqual(last.p, 5e-2)
        self.assertEqual((last.accepted, last.acceptance), (0, 0.0))
        self.assertFalse(last.defined)
        self.assertTrue(math.isnan(last.rate))
        self.assertEqual(report.rows()[-1]["logical_rate"], "nan")

    def test_every_point_discarded(self):
        report = find_pseudothreshold(DiscardAboveTrial(limit=0.0), 1.0, p_range=(1e-3, 1e-2), points=3,
                                      trials=50, max_trials=50, seed=3)
        self.assertEqual(report.verdict, "undefined")
        self.assertIsNone(report.crossing)
        self.assertEqual(len(report.grid), 3)
        self.assertTrue(all(e.accepted == 0 for e in report.grid))

    def test_sweep_keeps_discarded_points(self):
        report = sweep(DiscardAboveTrial(), 1.0, [0.01, 0.05], trials=100, seed=4)
        self.assertEqual([e.defined for e in report.grid], [True, False])

    def test_write_report(self):
        report = sweep(QuadraticTrial(), 1.0, [0.05, 0.01], trials=200, seed=4)
        with tempfile.TemporaryDirectory() as tmp:
            csv_path, json_path = write_report(report, tmp)
            self.assertEqual(csv_path.name, "toy_toy_alg1_g1.csv")
            self.assertEqual(csv_path.parent.name, "memory")
            with open(json_path, encoding="utf-8") as f:
                data = json.load(f)
            with open(csv_path, encoding="utf-8") as f:
                lines = f.read().splitlines()
        self.assertEqual(data["verdict"], "grid")
        self.assertIsNone(data["reference"])
        self.assertEqual([row["p"] for row in data["grid"]], ["1.000000e-02", "5.000000e-02"])
        self.assertEqual(len(lines), 3)


if __name__ == '__main__':
    unittest.main()
