"""Test suite for Pauli operators, syndromes and GF(2) spans.

This module covers:
- Index-notation parsing and rendering
- Products, commutation and weights
- Syndrome computation against generator lists
- BinarySpan reduction cross-checked with galois ranks
"""

import itertools
import logging
import unittest

import galois
import numpy as np

from flagshare.errors import DimensionError
from flagshare.gf2 import BinarySpan, rank
from flagshare.pauli import PauliOperator, Syndrome, commutes, multiply, syndrome_of, weight

# Configure logging for tests
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class PauliTestCase(unittest.TestCase):
    """Tests for PauliOperator and syndrome_of."""

    def setUp(self):
        logger.info("Setting up Pauli tests")
        self.n = 9

    def test_label_round_trip(self):
        for text in ("X2 X4 X6", "Z1 Z2", "X1 Y2 Z3", "I"):
            self.assertEqual(PauliOperator.from_label(text, self.n).label(), text)
        self.assertEqual(PauliOperator.from_label("Z1Z2", 4).label(compact=True), "Z1Z2")

    def test_repeated_index_multiplies(self):
        self.assertEqual(PauliOperator.from_label("X1 Z1", 2), PauliOperator.single("Y", 0, 2))

    def test_bad_labels(self):
        with self.assertRaises(ValueError):
            PauliOperator.from_label("Q1", 3)
        with self.assertRaises(DimensionError):
            PauliOperator.from_label("X4", 3)

    def test_weight_of_mixed_operator(self):
        self.assertEqual(PauliOperator.from_label("X1 Y2 Z3", 3).weight, 3)
        self.assertEqual(weight(PauliOperator.identity(5)), 0)

    def test_product_and_commutation(self):
        x1x2 = PauliOperator.from_label("X1 X2", 3)
        z2 = PauliOperator.from_label("Z2", 3)
        z1z2 = PauliOperator.from_label("Z1 Z2", 3)
        self.assertFalse(commutes(x1x2, z2))
        self.assertTrue(commutes(x1x2, z1z2))
        self.assertEqual(multiply(x1x2, x1x2), PauliOperator.identity(3))
        self.assertEqual((x1x2 * z2).label(), "X1 Y2")

    def test_register_mismatch(self):
        with self.assertRaises(DimensionError):
            PauliOperator.identity(2) * PauliOperator.identity(3)

    def test_restrict_and_embed_are_inverse(self):
        e = PauliOperator.from_label("X1 Z3", 4)
        placed = e.embed(8, range(4, 8))
        self.assertEqual(placed.label(), "X5 Z7")
        self.assertEqual(placed.restrict(range(4, 8)), e)

    def test_syndrome_against_shor_x_generators(self):
        gens = [PauliOperator.from_label(t, 9) for t in ("X1 X2 X3 X4 X5 X6", "X4 X5 X6 X7 X8 X9")]
        self.assertEqual(syndrome_of(PauliOperator.from_label("Z5", 9), gens).bits, (1, 1))
        self.assertEqual(syndrome_of(PauliOperator.from_label("Z1", 9), gens).bits, (1, 0))
        self.assertEqual(syndrome_of(PauliOperator.from_label("X1", 9), gens).bits, (0, 0))

    def test_syndrome_xor(self):
        self.assertEqual((Syndrome.from_string("101") ^ Syndrome.from_string("110")).bits, (0, 1, 1))
        self.assertTrue(Syndrome.zeros(4).is_zero)
        with self.assertRaises(ValueError):
            Syndrome.from_string("102")


class BinarySpanTestCase(unittest.TestCase):
    """Tests for GF(2) spans."""

    def setUp(self):
        logger.info("Setting up BinarySpan tests")
        self.rows = [0b1111000, 0b0110011, 0b1001011]
        self.span = BinarySpan(self.rows, 7)

    def test_dimension_matches_galois_rank(self):
        gf = galois.GF(2)
        matrix = gf(np.array([[(m >> j) & 1 for j in range(7)] for m in self.rows]))
        self.assertEqual(self.span.dimension, int(np.linalg.matrix_rank(matrix)))
        self.assertEqual(rank(self.rows, 7), self.span.dimension)

    def test_every_combination_is_a_member(self):
        for r in range(len(self.rows) + 1):
            for subset in itertools.combinations(self.rows, r):
                mask = 0
                for row in subset:
                    mask ^= row
                self.assertIn(mask, self.span)

    def test_reduce_is_a_coset_invariant(self):
        outside = 0b0000001
        self.assertNotIn(outside, self.span)
        self.assertEqual(self.span.reduce(outside), self.span.reduce(outside ^ self.rows[0]))
        self.assertIn(outside, self.span.extended(outside))


if __name__ == '__main__':
    unittest.main()
