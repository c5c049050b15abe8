"""Test suite for circuit construction.

This module covers:
- Flagged, unflagged and shared-flag builders
- The two-ancilla parallel circuit of the [[4,2,2]] code
- Mutual-flag parts and their link rules
- Location census and the text format
"""

import logging
import unittest

from flagshare.circuit import (Circuit, Gate, GateKind, LocationCensus, MutualMember, MutualSchedule, Qubit,
                               Role, build_flagged, build_mutual_part, build_parallel_422,
                               build_parallel_unflagged, build_sequence, build_shared_flag, build_unflagged,
                               census, place_side_by_side)
from flagshare.codes import catalog
from flagshare.errors import CircuitError, ScheduleConflictError
from flagshare.pauli import PauliOperator

# Configure logging for tests
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class BuilderTestCase(unittest.TestCase):
    """Tests for the extraction builders."""

    def setUp(self):
        logger.info("Setting up builder tests")
        self.z4 = PauliOperator.from_label("Z1 Z2 Z3 Z4", 4)
        self.x4 = PauliOperator.from_label("X1 X2 X3 X4", 4)

    def test_flagged_census(self):
        c = build_flagged(self.z4, "g2")
        self.assertEqual(census(c), LocationCensus(prep=2, meas_x=1, meas_z=1, cnot=6, idle=24))
        self.assertEqual(c.syndrome_tags, ("g2",))
        self.assertEqual(c.flag_tags, ("f1",))
        self.assertEqual(c.basis, "Z")

    def test_flag_measured_in_opposite_basis(self):
        c = build_flagged(self.x4, "g1")
        flag = c.qubits_with_role(Role.FLAG)[0]
        kinds = {loc.gate.kind for loc in c.measurements if loc.gate.qubits[0] == flag}
        self.assertEqual(kinds, {GateKind.MEAS_Z})

    def test_flag_couplings_follow_first_and_precede_last_data_cnot(self):
        c = build_flagged(self.z4, "g2")
        ancilla = c.qubits_with_role(Role.ANCILLA)[0]
        flag = c.qubits_with_role(Role.FLAG)[0]
        sequence = ["flag" if flag in loc.gate.qubits else "data"
                    for loc in c.locations if loc.gate.kind is GateKind.CNOT and ancilla in loc.gate.qubits]
        self.assertEqual(sequence, ["data", "flag", "data", "data", "flag", "data"])

    def test_weight_limits(self):
        with self.assertRaises(CircuitError):
            build_flagged(PauliOperator.from_label("Z1 Z2", 4), "g")
        with self.assertRaises(CircuitError):
            build_unflagged(PauliOperator.from_label("Z1", 4), "g")

    def test_order_must_permute_support(self):
        with self.assertRaises(ScheduleConflictError):
            build_unflagged(self.z4, "g", order=(0, 1, 2, 2))

    def test_shared_flag_rejects_mixed_group(self):
        with self.assertRaises(CircuitError):
            build_shared_flag([("a", self.z4, None), ("b", self.x4, None)])

    def test_shared_flag_on_shor_part(self):
        shor = catalog("shor913")
        group = [(tag, shor.generator(tag), None) for tag in ("g7", "g8")]
        c = build_shared_flag(group, flag_tag="f1")
        self.assertEqual(len(c.qubits_with_role(Role.ANCILLA)), 2)
        self.assertEqual(len(c.qubits_with_role(Role.FLAG)), 1)
        self.assertEqual(census(c).cnot, 12 + 4)

    def test_parallel_unflagged_pairs(self):
        shor = catalog("shor913")
        group = [(shor.generator_names[i], shor.generators[i], None) for i in shor.z_indices]
        c = build_parallel_unflagged(group)
        self.assertEqual(census(c).cnot, 12)
        self.assertEqual(c.depth, 4)


class Parallel422TestCase(unittest.TestCase):
    """Tests for the SWAP-based [[4,2,2]] circuit."""

    def setUp(self):
        self.circuit = build_parallel_422()

    def test_census(self):
        self.assertEqual(census(self.circuit), LocationCensus(prep=2, meas_x=1, meas_z=1, cnot=8, idle=16, swap=2))

    def test_every_outcome_is_a_flag(self):
        self.assertTrue(self.circuit.mutual_flags)
        self.assertEqual(self.circuit.syndrome_tags, ("g1", "g2"))


class MutualPartTestCase(unittest.TestCase):
    """Tests for mutual-flag parts."""

    def setUp(self):
        steane = catalog("steane713")
        self.members = tuple(
            MutualMember(tag, steane.generator(tag), steane.generator(tag).support) for tag in ("g1", "g2", "g3")
        )

    def _events(self, link):
        events = [(0, q) for q in self.members[0].order]
        for i in (1, 2):
            events.append(link(i))
            events += [(i, q) for q in self.members[i].order]
        return tuple(events)

    def test_links_run_from_x_to_z(self):
        schedule = MutualSchedule(self.members, self._events(lambda i: (0, -1 - i)))
        c = build_mutual_part(schedule)
        self.assertEqual(census(c).cnot, 14)
        self.assertEqual(schedule.links(), ((0, 1), (0, 2)))

    def test_reverse_link_rejected(self):
        schedule = MutualSchedule(self.members, self._events(lambda i: (i, -1)))
        with self.assertRaises(ScheduleConflictError):
            build_mutual_part(schedule)


class CircuitStructureTestCase(unittest.TestCase):
    """Tests for Circuit validation, composition and text round trips."""

    def test_qubit_used_twice_in_a_step(self):
        qubits = (Qubit(0, Role.DATA, "d1"), Qubit(1, Role.DATA, "d2"), Qubit(2, Role.ANCILLA, "a"))
        with self.assertRaises(ScheduleConflictError):
            Circuit("bad", qubits, ((Gate(GateKind.CNOT, (0, 2)), Gate(GateKind.IDLE, (2,))),))

    def test_text_round_trip(self):
        c = build_flagged(PauliOperator.from_label("X1 X3 X5 X7", 7), "g1")
        self.assertEqual(Circuit.from_text(c.to_text()), c)

    def test_malformed_text(self):
        with self.assertRaises(CircuitError):
            Circuit.from_text("circuit x\nstep CX 0\n")

    def test_sequence_and_side_by_side(self):
        z4 = PauliOperator.from_label("Z1 Z2 Z3 Z4", 4)
        x4 = PauliOperator.from_label("X1 X2 X3 X4", 4)
        block = build_sequence("ed", [build_flagged(x4, "g1"), build_flagged(z4, "g2")])
        self.assertEqual(block.num_qubits, 6)
        pair, maps = place_side_by_side("pair", [block, block])
        self.assertEqual(pair.n_data, 8)
        self.assertEqual(maps[1][0], 4)
        self.assertEqual(census(pair), census(block).scaled(2))


if __name__ == '__main__':
    unittest.main()
