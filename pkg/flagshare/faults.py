"""
Circuit-level depolarizing noise.

Every location fails independently. Preparations and single-qubit gates
suffer X, Y or Z with probability p/3 each, idle qubits the same with rate
gamma*p, CNOT and SWAP gates one of the 15 non-identity two-qubit Paulis with
probability p/15 each, and measurements report a flipped outcome with
probability 2p/3. Faults act after gates and before measurements.

Key Features:
    - NoiseParams and FaultEvent value types
    - fault_set per location and exhaustive single-fault enumeration
    - Vectorized sampling with numpy Generators
    - Fault sources (none, sampled, one injected fault) consumed by decoders

Dependencies:
    - numpy: Random draws per location
"""

import logging
import weakref
from dataclasses import dataclass
from typing import Dict, List, Optional, Protocol, Sequence, Tuple

import numpy as np

from .circuit import Circuit, Gate, GateKind, Location, LocationKind, TWO_QUBIT
from .errors import ConfigError
from .pauli import PauliOperator

# Initialize logger
logger = logging.getLogger(__name__)

_SINGLE = ("X", "Y", "Z")
_PAIR = tuple((a, b) for a in "IXYZ" for b in "IXYZ" if (a, b) != ("I", "I"))


@dataclass(frozen=True)
class NoiseParams:
    """
    Noise strength.

    Attributes:
        p (float): Gate error rate
        gamma (float): Ratio of the idle error rate to p
    """

    p: float
    gamma: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.p <= 1.0:
            raise ConfigError(f"p must lie in [0, 1], got {self.p}")
        if not 0.0 <= self.gamma <= 1.0:
            raise ConfigError(f"gamma must lie in [0, 1], got {self.gamma}")

    @property
    def idle_rate(self) -> float:
        return self.gamma * self.p


@dataclass(frozen=True)
class FaultEvent:
    """
    A location failure: a Pauli applied after the location, or a flipped outcome.

    Attributes:
        location (Location): Where the fault happens
        effect (Optional[PauliOperator]): Pauli on the whole circuit register
        flip (bool): True for a measurement outcome flip
    """

    location: Location
    effect: Optional[PauliOperator] = None
    flip: bool = False

    def __post_init__(self) -> None:
        if self.flip == (self.effect is not None):
            raise ValueError("a fault is either a Pauli effect or a measurement flip")
        if self.effect is not None and self.effect.is_identity:
            raise ValueError("fault effect must not be the identity")

    @classmethod
    def after_step(cls, step: int, effect: PauliOperator) -> "FaultEvent":
        """Pauli error between step and step + 1, not tied to a gate of the circuit."""
        qubit = effect.support[0] if effect.support else 0
        return cls(Location(step, -1, Gate(GateKind.IDLE, (qubit,))), effect)

    def describe(self) -> str:
        what = "flip" if self.flip else self.effect.label()
        return f"{what} @ {self.location}"


def _effects(loc: Location, size: int) -> List[PauliOperator]:
    if loc.gate.kind in TWO_QUBIT:
        a, b = loc.gate.qubits
        return [
            _two(pa, a, size) * _two(pb, b, size)
            for pa, pb in _PAIR
        ]
    (q,) = loc.gate.qubits
    return [PauliOperator.single(k, q, size) for k in _SINGLE]


def _two(kind: str, qubit: int, size: int) -> PauliOperator:
    if kind == "I":
        return PauliOperator.identity(size)
    return PauliOperator.single(kind, qubit, size)


def rate_multiple(kind: LocationKind, gamma: float = 1.0) -> float:
    """Total failure probability of a location divided by p."""
    if kind in (LocationKind.MEAS_X, LocationKind.MEAS_Z):
        return 2.0 / 3.0
    if kind is LocationKind.IDLE:
        return gamma
    return 1.0


def fault_set(loc: Location, size: int, gamma: float = 1.0) -> List[Tuple[FaultEvent, float]]:
    """
    All faults of one location with their probabilities as multiples of p.

    Args:
        loc (Location): The location
        size (int): Register size of the circuit
        gamma (float): Idle ratio

    Returns:
        List[Tuple[FaultEvent, float]]: 3 events (prep, single, idle),
            15 events (CNOT, SWAP) or 1 flip (measurement)
    """
    if loc.kind in (LocationKind.MEAS_X, LocationKind.MEAS_Z):
        return [(FaultEvent(loc, flip=True), 2.0 / 3.0)]
    effects = _effects(loc, size)
    share = rate_multiple(loc.kind, gamma) / len(effects)
    return [(FaultEvent(loc, effect), share) for effect in effects]


def enumerate_single_faults(c: Circuit) -> List[FaultEvent]:
    """Every (location, effect) pair of c once, in canonical location order."""
    return [event for loc in c.locations for event, _ in fault_set(loc, c.num_qubits)]


class _SamplingTable:
    """Per-circuit arrays for vectorized sampling."""

    def __init__(self, c: Circuit) -> None:
        self.locations = c.locations
        self.multiples = np.array([rate_multiple(loc.kind, 1.0) for loc in c.locations])
        self.is_idle = np.array([loc.kind is LocationKind.IDLE for loc in c.locations])
        self.size = c.num_qubits
        self.effects: Dict[int, List[PauliOperator]] = {}
        self._rates: Dict[Tuple[float, float], np.ndarray] = {}

    def rates(self, params: NoiseParams) -> np.ndarray:
        key = (params.p, params.gamma)
        if key not in self._rates:
            self._rates[key] = np.where(self.is_idle, params.idle_rate, self.multiples * params.p)
        return self._rates[key]

    def effect(self, index: int, choice: int) -> PauliOperator:
        if index not in self.effects:
            self.effects[index] = _effects(self.locations[index], self.size)
        return self.effects[index][choice]


# Keyed by id; an entry leaves with its circuit.
_TABLES: Dict[int, _SamplingTable] = {}


def _table(c: Circuit) -> _SamplingTable:
    table = _TABLES.get(id(c))
    if table is None:
        table = _SamplingTable(c)
        _TABLES[id(c)] = table
        weakref.finalize(c, _TABLES.pop, id(c), None)
    return table


def sample_faults(c: Circuit, params: NoiseParams, rng: np.random.Generator) -> List[FaultEvent]:
    """
    Draw independent faults for every location of c.

    Args:
        c (Circuit): The circuit
        params (NoiseParams): Noise strength
        rng (np.random.Generator): Stream owned by the caller

    Returns:
        List[FaultEvent]: Faults in circuit order
    """
    if params.p == 0.0:
        return []
    table = _table(c)
    rates = table.rates(params)
    hits = np.flatnonzero(rng.random(len(rates)) < rates)
    events = []
    for index in hits:
        loc = table.locations[index]
        if loc.kind in (LocationKind.MEAS_X, LocationKind.MEAS_Z):
            events.append(FaultEvent(loc, flip=True))
        else:
            count = 15 if loc.gate.kind in TWO_QUBIT else 3
            events.append(FaultEvent(loc, table.effect(int(index), int(rng.integers(count)))))
    return events


class FaultSource(Protocol):
    """Supplies the faults of one circuit execution, identified by a slot name."""

    def faults_for(self, slot: str, circuit: Circuit) -> Sequence[FaultEvent]:
        ...


class NoFaults:
    """Noiseless execution."""

    def faults_for(self, slot: str, circuit: Circuit) -> Sequence[FaultEvent]:
        return ()


class SampledFaults:
    """Independent depolarizing faults drawn from a caller-owned Generator."""

    def __init__(self, params: NoiseParams, rng: np.random.Generator) -> None:
        self.params = params
        self.rng = rng
        self.count = 0

    def faults_for(self, slot: str, circuit: Circuit) -> Sequence[FaultEvent]:
        events = sample_faults(circuit, self.params, self.rng)
        self.count += len(events)
        return events


class InjectedFault:
    """One fault in the execution named ``slot``; every other execution is noiseless."""

    def __init__(self, slot: str, fault: FaultEvent) -> None:
        self.slot = slot
        self.fault = fault

    def faults_for(self, slot: str, circuit: Circuit) -> Sequence[FaultEvent]:
        return (self.fault,) if slot == self.slot else ()
