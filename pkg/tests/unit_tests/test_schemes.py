"""Test suite for the shipped schemes and the ex-Rec census."""

import logging
import math
import unittest

from flagshare.circuit import census
from flagshare.decode import Procedure
from flagshare.errors import ConfigError, UnknownCodeError
from flagshare.ftcheck import hook_collisions
from flagshare.reference import CENSUS_REFERENCE, threshold_reference
from flagshare.schemes import (build_exrec_cnot, build_followups, build_scheme, certified, check_procedure,
                               exrec_census)

# Configure logging for tests
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class SchemeTestCase(unittest.TestCase):
    """Tests for scheme construction."""

    def setUp(self):
        logger.info("Setting up scheme tests")

    def test_unknown_names(self):
        with self.assertRaises(ConfigError):
            build_scheme("422", "teleport")
        with self.assertRaises(UnknownCodeError):
            build_scheme("golay", "flag")

    def test_shor_parallel_layout(self):
        scheme = build_scheme("shor913", "parallel")
        part_b, part_a = scheme.gadgets
        self.assertEqual(part_b.syndrome_tags, ("g7", "g8"))
        self.assertEqual(part_b.flag_tags, ("f1",))
        self.assertEqual(part_a.syndrome_tags, ("g1", "g2", "g3", "g4", "g5", "g6"))
        self.assertEqual(part_a.flag_tags, ())
        self.assertEqual(census(part_a).cnot, 12)
        self.assertTrue(scheme.pure_type)
        self.assertEqual(scheme.side("X"), (0,))

    def test_flag_scheme_skips_weight_two(self):
        scheme = build_scheme("shor913", "flag")
        flagged = [c for c in scheme.gadgets if c.flag_tags]
        self.assertEqual(len(flagged), 2)
        self.assertEqual(len(scheme.gadgets), 8)
        for c in flagged:
            self.assertEqual(hook_collisions(c, scheme.code), [], c.name)

    def test_steane_parallel_layout(self):
        scheme = build_scheme("steane713", "parallel")
        self.assertEqual([c.syndrome_tags for c in scheme.gadgets], [("g1", "g2", "g3"), ("g4", "g5", "g6")])
        self.assertTrue(all(c.mutual_flags for c in scheme.gadgets))
        self.assertFalse(scheme.pure_type)
        self.assertEqual(scheme.side("mixed"), (0, 1))

    def test_followups(self):
        followups = build_followups(build_scheme("steane713", "flag").code)
        self.assertEqual(len(followups["X"]), 3)
        self.assertEqual(len(followups["Z"]), 3)
        self.assertEqual(len(followups["complete"]), 6)

    def test_detection_schemes(self):
        self.assertTrue(build_scheme("422", "flag").detection)
        self.assertTrue(build_scheme("422", "parallel").detection)
        self.assertFalse(build_scheme("shor913", "parallel").detection)


class ProcedureCheckTestCase(unittest.TestCase):
    """Tests for check_procedure."""

    def test_detection_scheme_needs_detect(self):
        with self.assertRaises(ConfigError):
            check_procedure(build_scheme("422", "parallel"), Procedure.ALG1)
        check_procedure(build_scheme("422", "parallel"), Procedure.DETECT)

    def test_unavailable_procedure(self):
        with self.assertRaises(ConfigError):
            check_procedure(build_scheme("shor913", "unflagged"), Procedure.ALG3)
        with self.assertRaises(ConfigError):
            check_procedure(build_scheme("shor913", "ed-parallel"), Procedure.ALG1)

    def test_mixed_gadgets_accept_every_procedure(self):
        scheme = build_scheme("steane713", "parallel")
        for procedure in (Procedure.ALG1, Procedure.ALG3, Procedure.ALG4, Procedure.ALG4_COMPLETE):
            check_procedure(scheme, procedure)

    def test_certified_is_cached(self):
        first = certified("422", "parallel", Procedure.DETECT)
        self.assertIs(first, certified("422", "parallel", Procedure.DETECT))
        self.assertTrue(first.passed)


class CensusTestCase(unittest.TestCase):
    """Tests for the ex-Rec location census."""

    def test_422_flag_matches_reference(self):
        computed = exrec_census(build_scheme("422", "flag"))
        self.assertEqual(computed, CENSUS_REFERENCE[("422", "flag")])

    def test_422_parallel(self):
        computed = exrec_census(build_scheme("422", "parallel"))
        reference = CENSUS_REFERENCE[("422", "parallel")]
        self.assertEqual(computed.cnot, 36)
        self.assertEqual(computed.swap, 8)
        self.assertEqual((computed.prep, computed.meas_x, computed.meas_z),
                         (reference.prep, reference.meas_x, reference.meas_z))

    def test_exrec_layout(self):
        scheme = build_scheme("422", "parallel")
        c = build_exrec_cnot(scheme)
        self.assertEqual(c.n_data, 8)
        self.assertEqual(c.num_qubits, 12)
        self.assertEqual(c.depth, 2 * scheme.gadgets[0].depth + 1)

    def test_conditional_extractions_counted(self):
        scheme = build_scheme("shor913", "parallel")
        base = exrec_census(scheme)
        extended = exrec_census(scheme, include_conditional_unflagged=True)
        self.assertEqual(extended.cnot - base.cnot, 8 * scheme.followup_census("complete").cnot)

    def test_threshold_reference(self):
        self.assertAlmostEqual(threshold_reference("memory", "shor913", "parallel", "alg3", 0), 9.82e-3)
        self.assertAlmostEqual(threshold_reference("memory", "steane713", "flag", "alg1", 0), 8.31e-4)
        self.assertAlmostEqual(threshold_reference("exrec", "steane713", "flag", "alg1", 1), 7.38e-6)
        self.assertTrue(math.isnan(threshold_reference("memory", "steane713", "flag", "alg3", 0)))
        self.assertNotEqual(threshold_reference("exrec", "422", "flag", "detect", 0),
                            threshold_reference("exrec", "422", "flag", "detect", 0))


if __name__ == '__main__':
    unittest.main()
