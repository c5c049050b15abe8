"""Test suite for the CSS code catalog.

This module covers:
- Catalog parameters and distance verification
- Residual classification
- Minimum-weight LOOKUP(0) correction
- Loading codes from JSON definitions
"""

import json
import logging
import os
import tempfile
import unittest

from flagshare.codes import (CATALOG_NAMES, CssCode, ResidualClass, catalog, classify_residual, load_code,
                             min_weight_correction)
from flagshare.errors import CodeDefinitionError, UnknownCodeError
from flagshare.pauli import PauliOperator

# Configure logging for tests
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class CatalogTestCase(unittest.TestCase):
    """Tests for catalog codes."""

    def test_parameters(self):
        expected = {"422": (4, 2, 2), "steane713": (7, 1, 3), "shor913": (9, 1, 3), "rm1513": (15, 1, 3)}
        self.assertEqual(set(CATALOG_NAMES), set(expected))
        for name, params in expected.items():
            code = catalog(name)
            self.assertEqual((code.n, code.k, code.d), params)
            self.assertTrue(code.has_logicals)

    def test_422_generators(self):
        code = catalog("422")
        self.assertEqual([g.label() for g in code.generators], ["X1 X2 X3 X4", "Z1 Z2 Z3 Z4"])

    def test_logicals_pair_up(self):
        for name in CATALOG_NAMES:
            code = catalog(name)
            for i, lx in enumerate(code.logical_x):
                for j, lz in enumerate(code.logical_z):
                    self.assertEqual(lx.commutes(lz), i != j, f"{name} L{i} L{j}")
                for g in code.generators:
                    self.assertTrue(lx.commutes(g))

    def test_rm1513_types(self):
        code = catalog("rm1513")
        self.assertEqual(len(code.z_indices), 10)
        self.assertEqual(len(code.x_indices), 4)
        self.assertEqual(code.generator("g11").label(), "X1 X3 X5 X7 X9 X11 X13 X15")

    def test_unknown_code(self):
        with self.assertRaises(UnknownCodeError):
            catalog("surface17")
        with self.assertRaises(KeyError):
            catalog("surface17")

    def test_unknown_generator(self):
        with self.assertRaises(UnknownCodeError):
            catalog("shor913").generator("g9")


class ResidualTestCase(unittest.TestCase):
    """Tests for classify_residual and min_weight_correction."""

    def setUp(self):
        logger.info("Setting up residual tests")
        self.code422 = catalog("422")
        self.steane = catalog("steane713")

    def test_classification_on_422(self):
        label = lambda t: PauliOperator.from_label(t, 4)
        self.assertIs(classify_residual(PauliOperator.identity(4), self.code422), ResidualClass.TRIVIAL)
        self.assertIs(classify_residual(label("X1 X2 X3 X4"), self.code422), ResidualClass.STABILIZER)
        self.assertIs(classify_residual(label("Z1 Z2 Z3 Z4"), self.code422), ResidualClass.STABILIZER)
        self.assertIs(classify_residual(label("X1 X2"), self.code422), ResidualClass.LOGICAL)
        self.assertIs(classify_residual(label("X1"), self.code422), ResidualClass.DETECTABLE)

    def test_single_errors_are_corrected_on_steane(self):
        for q in range(7):
            for kind in "XYZ":
                e = PauliOperator.single(kind, q, 7)
                correction, complete = min_weight_correction(self.steane.syndrome(e), self.steane)
                self.assertTrue(complete)
                self.assertTrue(self.steane.in_stabilizer_group(e * correction), e.label())

    def test_shor_equivalence(self):
        shor = catalog("shor913")
        z1, z2 = PauliOperator.from_label("Z1", 9), PauliOperator.from_label("Z2", 9)
        self.assertTrue(shor.equivalent(z1, z2))
        self.assertFalse(shor.equivalent(z1, PauliOperator.from_label("Z4", 9)))

    def test_zero_syndrome_gives_identity(self):
        correction, complete = min_weight_correction(self.steane.syndrome(PauliOperator.identity(7)), self.steane)
        self.assertTrue(correction.is_identity)
        self.assertTrue(complete)


class LoadCodeTestCase(unittest.TestCase):
    """Tests for JSON code definitions."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.path = os.path.join(self.tmp.name, "code.json")

    def tearDown(self):
        self.tmp.cleanup()

    def _write(self, data):
        with open(self.path, "w", encoding="utf-8") as f:
            json.dump(data, f)

    def test_load_finds_distance(self):
        self._write({"name": "d4", "n": 4, "k": 2, "generators": ["X1 X2 X3 X4", "Z1 Z2 Z3 Z4"],
                     "generator_names": ["sx", "sz"]})
        code = load_code(self.path)
        self.assertEqual(code.d, 2)
        self.assertEqual(code.generator("sx").label(), "X1 X2 X3 X4")

    def test_missing_key(self):
        self._write({"name": "bad", "n": 4, "generators": ["X1 X2"]})
        with self.assertRaises(CodeDefinitionError):
            load_code(self.path)

    def test_anticommuting_generators(self):
        with self.assertRaises(CodeDefinitionError):
            CssCode("bad", 2, 0, 0, (PauliOperator.from_label("X1", 2), PauliOperator.from_label("Z1", 2)))


if __name__ == '__main__':
    unittest.main()
