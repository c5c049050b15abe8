"""Test suite for Pauli-frame propagation.

This module covers:
- Data errors read out by extraction circuits (checked against syndrome_of)
- Hook faults and flag outcomes
- SWAP handling in the [[4,2,2]] parallel circuit
- Backward propagation and determinism checks
"""

import logging
import unittest

from flagshare.circuit import GateKind, build_flagged, build_parallel_422, build_unflagged
from flagshare.codes import catalog
from flagshare.errors import CircuitError, DimensionError
from flagshare.faults import FaultEvent
from flagshare.pauli import PauliOperator, syndrome_of
from flagshare.propagate import check_deterministic, measured_observable, propagate, run_round

# Configure logging for tests
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class PropagateTestCase(unittest.TestCase):
    """Tests for forward propagation."""

    def setUp(self):
        logger.info("Setting up propagation tests")
        self.z4 = PauliOperator.from_label("Z1 Z2 Z3 Z4", 4)
        self.flagged = build_flagged(self.z4, "g2")

    def test_data_error_is_read_and_kept(self):
        c = build_unflagged(self.z4, "g")
        result = propagate(c, (), PauliOperator.from_label("X1", 4))
        self.assertEqual(result.outcomes["g"], 1)
        self.assertEqual(result.residual.label(), "X1")
        self.assertEqual(propagate(c, (), PauliOperator.from_label("Z2", 4)).outcomes["g"], 0)

    def test_hook_fault_raises_flag(self):
        ancilla = 4
        fault = FaultEvent.after_step(3, PauliOperator.single("Z", ancilla, self.flagged.num_qubits))
        result = propagate(self.flagged, [fault])
        self.assertEqual(result.residual.label(), "Z3 Z4")
        self.assertEqual(result.f, (1,))
        self.assertEqual(result.m, (0,))

    def test_measurement_flip(self):
        meas = next(loc for loc in self.flagged.measurements if loc.gate.tag == "g2")
        result = propagate(self.flagged, [FaultEvent(meas, flip=True)])
        self.assertEqual(result.m, (1,))
        self.assertEqual(result.f, (0,))
        self.assertTrue(result.residual.is_identity)

    def test_swaps_in_parallel_422(self):
        c = build_parallel_422()
        z4 = propagate(c, (), PauliOperator.from_label("Z4", 4))
        self.assertEqual((z4.outcomes["g1"], z4.outcomes["g2"]), (1, 0))
        self.assertEqual(z4.residual.label(), "Z4")
        x1 = propagate(c, (), PauliOperator.from_label("X1", 4))
        self.assertEqual((x1.outcomes["g1"], x1.outcomes["g2"]), (0, 1))

    def test_fault_outside_circuit(self):
        fault = FaultEvent.after_step(99, PauliOperator.single("X", 0, self.flagged.num_qubits))
        with self.assertRaises(CircuitError):
            propagate(self.flagged, [fault])

    def test_frame_register_mismatch(self):
        with self.assertRaises(DimensionError):
            propagate(self.flagged, (), PauliOperator.identity(7))


class RoundTestCase(unittest.TestCase):
    """Tests for run_round against the syndrome oracle."""

    def setUp(self):
        self.code = catalog("steane713")
        self.extraction = [build_unflagged(g, name) for name, g in zip(self.code.generator_names, self.code.generators)]

    def test_outcomes_match_syndrome_of(self):
        for q in range(7):
            for kind in "XYZ":
                e = PauliOperator.single(kind, q, 7)
                merged, frame = run_round(self.extraction, e)
                bits = tuple(merged.outcomes[name] for name in self.code.generator_names)
                self.assertEqual(bits, syndrome_of(e, self.code.generators).bits)
                self.assertEqual(frame, e)

    def test_duplicate_tag(self):
        with self.assertRaises(CircuitError):
            run_round([self.extraction[0], self.extraction[0]], PauliOperator.identity(7))


class DeterminismTestCase(unittest.TestCase):
    """Tests for backward propagation."""

    def test_shipped_circuits_are_deterministic(self):
        code422 = catalog("422")
        self.assertEqual(check_deterministic(build_parallel_422(), code422), [])
        self.assertEqual(check_deterministic(build_flagged(code422.generators[0], "g1"), code422), [])

    def test_non_stabilizer_is_reported(self):
        steane = catalog("steane713")
        c = build_unflagged(PauliOperator.from_label("Z1 Z2", 7), "bad")
        problems = check_deterministic(c, steane)
        self.assertEqual(len(problems), 1)
        self.assertIn("bad", problems[0])

    def test_observable_of_flag_is_fixed(self):
        c = build_flagged(PauliOperator.from_label("X1 X2 X3 X4", 4), "g1")
        flag = next(loc for loc in c.measurements if loc.gate.kind is GateKind.MEAS_Z)
        obs = measured_observable(c, flag)
        self.assertTrue(obs.fixed_by_preparation)
        self.assertTrue(obs.data.is_identity)


if __name__ == '__main__':
    unittest.main()
