"""
Pauli-frame propagation.

Inputs are codewords, circuits are Clifford and faults are Pauli, so every
measurement outcome is a deterministic function of the error frame. The frame
is two integers (X and Z masks over the circuit register) updated gate by gate.

Key Features:
    - propagate: one circuit, a list of faults, an optional incoming data error
    - run_round: chain circuits on one data register
    - measured_observable / check_deterministic: backward (Heisenberg)
      propagation proving that noiseless outcomes are fixed on the code space

Note:
    Outcome bit 0 means the +1 result. Preparation resets a qubit's frame, so
    reused ancillas need an explicit preparation.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .circuit import Circuit, GateKind, Location, MEASUREMENTS
from .codes import CssCode
from .errors import CircuitError, DimensionError
from .pauli import PauliOperator

# Initialize logger
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FrameResult:
    """
    Outcome of propagating faults through one or more circuits.

    Attributes:
        residual (PauliOperator): Error left on the data qubits
        outcomes (Mapping[str, int]): Measurement tag -> bit
        synd_tags (Tuple[str, ...]): Tags of ancilla measurements, in order
        flag_tags (Tuple[str, ...]): Tags of flag measurements, in order
    """

    residual: PauliOperator
    outcomes: Mapping[str, int]
    synd_tags: Tuple[str, ...]
    flag_tags: Tuple[str, ...]

    @property
    def m(self) -> Tuple[int, ...]:
        return tuple(self.outcomes[t] for t in self.synd_tags)

    @property
    def f(self) -> Tuple[int, ...]:
        return tuple(self.outcomes[t] for t in self.flag_tags)

    def bit(self, tag: str) -> int:
        return self.outcomes[tag]

    @property
    def any_fired(self) -> bool:
        return any(self.outcomes.values())


def propagate(c: Circuit, faults: Sequence = (), frame: Optional[PauliOperator] = None) -> FrameResult:
    """
    Push an incoming data error and a set of faults through a circuit.

    Args:
        c (Circuit): The circuit
        faults (Sequence[FaultEvent]): Faults on locations of c. A fault acts
            after every gate of its step; a fault on a measurement flips the outcome
        frame (Optional[PauliOperator]): Error on the data qubits before the circuit

    Returns:
        FrameResult: Residual data error and all outcomes

    Raises:
        CircuitError: If a fault names a step outside the circuit
        DimensionError: If frame or a fault acts on the wrong register
    """
    size = c.num_qubits
    x = z = 0
    if frame is not None:
        if frame.n != c.n_data:
            raise DimensionError(f"frame on {frame.n} qubits, circuit has {c.n_data} data qubits")
        x, z = frame.x, frame.z
    after: Dict[int, List[Tuple[int, int]]] = {}
    flips = set()
    for fault in faults:
        loc = fault.location
        if not 0 <= loc.step < c.depth:
            raise CircuitError(f"fault at step {loc.step} outside circuit {c.name}")
        if fault.flip:
            flips.add((loc.step, loc.gate.qubits[0]))
        else:
            if fault.effect.n != size:
                raise DimensionError(f"fault effect on {fault.effect.n} qubits, register has {size}")
            after.setdefault(loc.step, []).append((fault.effect.x, fault.effect.z))
    outcomes: Dict[str, int] = {}
    for s, ops in enumerate(c.program):
        for kind, a, b, tag in ops:
            if kind is GateKind.CNOT:
                if (x >> a) & 1:
                    x ^= 1 << b
                if (z >> b) & 1:
                    z ^= 1 << a
            elif kind is GateKind.IDLE:
                continue
            elif kind is GateKind.SWAP:
                xa, xb, za, zb = (x >> a) & 1, (x >> b) & 1, (z >> a) & 1, (z >> b) & 1
                if xa != xb:
                    x ^= (1 << a) | (1 << b)
                if za != zb:
                    z ^= (1 << a) | (1 << b)
            elif kind is GateKind.MEAS_Z:
                outcomes[tag] = ((x >> a) & 1) ^ ((s, a) in flips)
            elif kind is GateKind.MEAS_X:
                outcomes[tag] = ((z >> a) & 1) ^ ((s, a) in flips)
            else:
                mask = ~(1 << a)
                x &= mask
                z &= mask
        for fx, fz in after.get(s, ()):
            x ^= fx
            z ^= fz
    data_mask = (1 << c.n_data) - 1
    return FrameResult(
        residual=PauliOperator(c.n_data, x & data_mask, z & data_mask),
        outcomes=outcomes,
        synd_tags=c.syndrome_tags,
        flag_tags=c.flag_tags,
    )


def run_round(extraction: Sequence[Circuit], input_frame: PauliOperator,
              faults: Optional[Mapping[int, Sequence]] = None) -> Tuple[FrameResult, PauliOperator]:
    """
    Chain circuits on one data register.

    Args:
        extraction (Sequence[Circuit]): Circuits in execution order
        input_frame (PauliOperator): Data error entering the first circuit
        faults (Optional[Mapping[int, Sequence[FaultEvent]]]): Faults per circuit index

    Returns:
        Tuple[FrameResult, PauliOperator]: Merged result and the outgoing data error

    Raises:
        DimensionError: If circuits act on different data registers
        CircuitError: If two circuits report the same outcome tag
    """
    faults = faults or {}
    frame = input_frame
    outcomes: Dict[str, int] = {}
    synd: List[str] = []
    flags: List[str] = []
    for i, circuit in enumerate(extraction):
        if circuit.n_data != input_frame.n:
            raise DimensionError(f"{circuit.name} acts on {circuit.n_data} data qubits, expected {input_frame.n}")
        result = propagate(circuit, faults.get(i, ()), frame)
        for tag, bit in result.outcomes.items():
            if tag in outcomes:
                raise CircuitError(f"outcome tag {tag!r} reported twice in one round")
            outcomes[tag] = bit
        synd.extend(result.synd_tags)
        flags.extend(result.flag_tags)
        frame = result.residual
    merged = FrameResult(frame, outcomes, tuple(synd), tuple(flags))
    return merged, frame


@dataclass(frozen=True)
class Observable:
    """
    Backward image of a measured observable.

    Attributes:
        tag (str): Measurement tag
        data (PauliOperator): Part left on the data qubits at the circuit input
        fixed_by_preparation (bool): False if a preparation leaves it random
    """

    tag: str
    data: PauliOperator
    fixed_by_preparation: bool


def measured_observable(c: Circuit, loc: Location) -> Observable:
    """
    Conjugate a measured observable back to the start of the circuit.

    CNOT and SWAP are self-inverse, so the forward conjugation rules apply.
    At a preparation the qubit's component must be I or the prepared basis
    operator; anything else makes the outcome random.
    """
    if loc.gate.kind not in MEASUREMENTS:
        raise CircuitError(f"{loc} is not a measurement")
    q = loc.gate.qubits[0]
    x = (1 << q) if loc.gate.kind is GateKind.MEAS_X else 0
    z = (1 << q) if loc.gate.kind is GateKind.MEAS_Z else 0
    fixed = True
    for s in range(loc.step - 1, -1, -1):
        for kind, a, b, _ in c.program[s]:
            if kind is GateKind.CNOT:
                if (x >> a) & 1:
                    x ^= 1 << b
                if (z >> b) & 1:
                    z ^= 1 << a
            elif kind is GateKind.SWAP:
                xa, xb, za, zb = (x >> a) & 1, (x >> b) & 1, (z >> a) & 1, (z >> b) & 1
                if xa != xb:
                    x ^= (1 << a) | (1 << b)
                if za != zb:
                    z ^= (1 << a) | (1 << b)
            elif kind is GateKind.PREP_Z:
                fixed &= not (x >> a) & 1
                x &= ~(1 << a)
                z &= ~(1 << a)
            elif kind is GateKind.PREP_X:
                fixed &= not (z >> a) & 1
                x &= ~(1 << a)
                z &= ~(1 << a)
    data_mask = (1 << c.n_data) - 1
    if (x | z) & ~data_mask:
        fixed = False
    return Observable(loc.gate.tag, PauliOperator(c.n_data, x & data_mask, z & data_mask), bool(fixed))


def check_deterministic(c: Circuit, code: CssCode) -> List[str]:
    """
    List the measurements of c whose noiseless outcome is not fixed on the code space.

    Returns:
        List[str]: Problems, empty when every outcome is deterministic
    """
    problems = []
    for loc in c.measurements:
        obs = measured_observable(c, loc)
        if not obs.fixed_by_preparation:
            problems.append(f"{obs.tag}: randomized by an ancilla preparation")
        elif not obs.data.is_identity and not code.in_stabilizer_group(obs.data):
            problems.append(f"{obs.tag}: measures {obs.data}, not a stabilizer")
    if problems:
        logger.debug(f"{c.name}: {len(problems)} non-deterministic outcomes")
    return problems
