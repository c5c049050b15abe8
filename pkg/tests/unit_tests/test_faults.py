"""Test suite for the noise model and samplers.

This module covers:
- Per-location fault sets and their probabilities
- Exhaustive single-fault enumeration
- Sampling frequencies (chi-square against the uniform Pauli mix)
- Fault sources used by the round driver
"""

import collections
import gc
import logging
import unittest

import numpy as np
from scipy.stats import chisquare

from flagshare import faults
from flagshare.circuit import GateKind, LocationKind, build_flagged, build_unflagged
from flagshare.errors import ConfigError
from flagshare.faults import (FaultEvent, InjectedFault, NoFaults, NoiseParams, SampledFaults,
                              enumerate_single_faults, fault_set, rate_multiple, sample_faults)
from flagshare.pauli import PauliOperator

# Configure logging for tests
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class FaultSetTestCase(unittest.TestCase):
    """Tests for fault_set and enumeration."""

    def setUp(self):
        logger.info("Setting up fault set tests")
        self.circuit = build_flagged(PauliOperator.from_label("Z1 Z2 Z3 Z4", 4), "g2")

    def _first(self, kind):
        return next(loc for loc in self.circuit.locations if loc.kind is kind)

    def test_probabilities_sum_to_rate_multiple(self):
        for kind, count in ((LocationKind.CNOT, 15), (LocationKind.PREP, 3), (LocationKind.IDLE, 3),
                            (LocationKind.MEAS_Z, 1)):
            events = fault_set(self._first(kind), self.circuit.num_qubits, gamma=0.5)
            self.assertEqual(len(events), count)
            self.assertAlmostEqual(sum(share for _, share in events), rate_multiple(kind, 0.5))

    def test_cnot_effects_are_distinct(self):
        events = fault_set(self._first(LocationKind.CNOT), self.circuit.num_qubits)
        self.assertEqual(len({event.effect for event, _ in events}), 15)

    def test_enumeration_size(self):
        # 2 preps x 3, 6 CNOTs x 15, 24 idles x 3, 2 measurement flips
        self.assertEqual(len(enumerate_single_faults(self.circuit)), 170)

    def test_event_validation(self):
        loc = self._first(LocationKind.CNOT)
        with self.assertRaises(ValueError):
            FaultEvent(loc)
        with self.assertRaises(ValueError):
            FaultEvent(loc, PauliOperator.identity(self.circuit.num_qubits))

    def test_noise_params_range(self):
        with self.assertRaises(ConfigError):
            NoiseParams(1.5)
        with self.assertRaises(ConfigError):
            NoiseParams(0.1, gamma=-0.1)
        self.assertAlmostEqual(NoiseParams(0.01, 0.5).idle_rate, 0.005)


class SamplingTestCase(unittest.TestCase):
    """Tests for sample_faults."""

    def setUp(self):
        logger.info("Setting up sampling tests")
        self.circuit = build_flagged(PauliOperator.from_label("Z1 Z2 Z3 Z4", 4), "g2")
        self.rng = np.random.default_rng(1234)

    def test_zero_noise(self):
        self.assertEqual(sample_faults(self.circuit, NoiseParams(0.0), self.rng), [])

    def test_certain_failure_without_idles(self):
        events = sample_faults(self.circuit, NoiseParams(1.0, gamma=0.0), self.rng)
        kinds = collections.Counter(e.location.kind for e in events)
        self.assertEqual(kinds[LocationKind.PREP], 2)
        self.assertEqual(kinds[LocationKind.CNOT], 6)
        self.assertEqual(kinds[LocationKind.IDLE], 0)

    def test_mean_fault_count(self):
        params = NoiseParams(0.01, 1.0)
        trials = 20000
        counts = [len(sample_faults(self.circuit, params, self.rng)) for _ in range(trials)]
        expected = 0.01 * (2 + 6 + 2 * 2 / 3 + 24)
        self.assertLess(abs(np.mean(counts) - expected), 5 * np.sqrt(expected / trials))

    def test_table_cache_follows_circuit(self):
        c = build_unflagged(PauliOperator.from_label("Z1 Z2", 2), "g")
        sample_faults(c, NoiseParams(0.1), self.rng)
        key = id(c)
        self.assertIn(key, faults._TABLES)
        del c
        gc.collect()
        self.assertNotIn(key, faults._TABLES)

    def test_cnot_paulis_are_uniform(self):
        c = build_unflagged(PauliOperator.from_label("Z1 Z2", 2), "g")
        first = next(loc for loc in c.locations if loc.gate.kind is GateKind.CNOT)
        frequencies = collections.Counter()
        for _ in range(15000):
            for event in sample_faults(c, NoiseParams(1.0, 0.0), self.rng):
                if event.location == first:
                    frequencies[event.effect] += 1
        self.assertEqual(len(frequencies), 15)
        self.assertGreater(chisquare(list(frequencies.values())).pvalue, 1e-3)


class FaultSourceTestCase(unittest.TestCase):
    """Tests for fault sources."""

    def test_injected_fault_only_in_its_slot(self):
        c = build_unflagged(PauliOperator.from_label("Z1 Z2", 2), "g")
        fault = enumerate_single_faults(c)[0]
        source = InjectedFault("main0", fault)
        self.assertEqual(source.faults_for("main0", c), (fault,))
        self.assertEqual(source.faults_for("main1", c), ())
        self.assertEqual(NoFaults().faults_for("main0", c), ())

    def test_sampled_source_counts(self):
        c = build_unflagged(PauliOperator.from_label("Z1 Z2", 2), "g")
        source = SampledFaults(NoiseParams(1.0, 0.0), np.random.default_rng(0))
        events = source.faults_for("main0", c)
        self.assertEqual(source.count, len(events))
        self.assertGreaterEqual(source.count, 3)


if __name__ == '__main__':
    unittest.main()
