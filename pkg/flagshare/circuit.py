"""
Gate-level circuit IR with explicit timesteps and qubit roles.

Circuits are immutable. Every builder lists its gates in left-to-right order
and hands them to one packer, which puts preparations in the first step,
places each gate in the earliest step after the previous gate on any of its
qubits, puts every measurement in one final step and then fills idle gates.

Key Features:
    - Gate, Qubit, Location and LocationCensus value types
    - Unflagged, flagged, shared-flag and parallel unflagged extraction builders
    - Mutual-flag parts where ancillas of opposite type flag each other
    - The two-ancilla [[4,2,2]] circuit with SWAP gates
    - Location census and a line-per-timestep text format

Note:
    Idle gates are placed only in steps holding a two-qubit gate, on every
    qubit that is live there and not otherwise used. Data qubits are always
    live; an ancilla or flag is live between its preparation and measurement.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .codes import CssCode
from .errors import CircuitError, ScheduleConflictError
from .pauli import PauliOperator

# Initialize logger
logger = logging.getLogger(__name__)


class GateKind(str, Enum):
    PREP_Z = "PZ"
    PREP_X = "PX"
    CNOT = "CX"
    SWAP = "SWAP"
    MEAS_Z = "MZ"
    MEAS_X = "MX"
    IDLE = "I"


PREPARATIONS = (GateKind.PREP_Z, GateKind.PREP_X)
MEASUREMENTS = (GateKind.MEAS_Z, GateKind.MEAS_X)
TWO_QUBIT = (GateKind.CNOT, GateKind.SWAP)


class Role(str, Enum):
    DATA = "data"
    ANCILLA = "ancilla"
    FLAG = "flag"


class LocationKind(str, Enum):
    PREP = "prep"
    MEAS_X = "meas_x"
    MEAS_Z = "meas_z"
    CNOT = "cnot"
    SWAP = "swap"
    IDLE = "idle"
    SINGLE = "single"


_LOCATION_OF_GATE = {
    GateKind.PREP_Z: LocationKind.PREP,
    GateKind.PREP_X: LocationKind.PREP,
    GateKind.CNOT: LocationKind.CNOT,
    GateKind.SWAP: LocationKind.SWAP,
    GateKind.MEAS_Z: LocationKind.MEAS_Z,
    GateKind.MEAS_X: LocationKind.MEAS_X,
    GateKind.IDLE: LocationKind.IDLE,
}


@dataclass(frozen=True)
class Gate:
    """
    One gate. ``tag`` names what a measurement reports (a generator name or a flag name).

    Attributes:
        kind (GateKind): Gate type
        qubits (Tuple[int, ...]): Control then target for CX
        tag (str): Outcome name, measurements only
    """

    kind: GateKind
    qubits: Tuple[int, ...]
    tag: str = ""

    def __post_init__(self) -> None:
        arity = 2 if self.kind in TWO_QUBIT else 1
        if len(self.qubits) != arity or len(set(self.qubits)) != arity:
            raise CircuitError(f"{self.kind.value} needs {arity} distinct qubits, got {self.qubits}")

    def text(self) -> str:
        parts = [self.kind.value] + [str(q) for q in self.qubits]
        if self.tag:
            parts.append(self.tag)
        return " ".join(parts)


@dataclass(frozen=True)
class Qubit:
    index: int
    role: Role
    label: str


@dataclass(frozen=True)
class Location:
    """A gate occurrence, addressed by (step, position within the step)."""

    step: int
    position: int
    gate: Gate

    @property
    def kind(self) -> LocationKind:
        return _LOCATION_OF_GATE[self.gate.kind]

    def __str__(self) -> str:
        return f"{self.step}.{self.position}:{self.gate.text()}"


@dataclass(frozen=True)
class LocationCensus:
    """Location counts by kind."""

    prep: int = 0
    meas_x: int = 0
    meas_z: int = 0
    cnot: int = 0
    idle: int = 0
    swap: int = 0
    single: int = 0

    @property
    def total(self) -> int:
        return (self.prep + self.meas_x + self.meas_z + self.cnot
                + self.idle + self.swap + self.single)

    def __add__(self, other: "LocationCensus") -> "LocationCensus":
        return LocationCensus(*(a + b for a, b in zip(self.as_tuple(), other.as_tuple())))

    def scaled(self, factor: int) -> "LocationCensus":
        return LocationCensus(*(a * factor for a in self.as_tuple()))

    def as_tuple(self) -> Tuple[int, ...]:
        return (self.prep, self.meas_x, self.meas_z, self.cnot, self.idle, self.swap, self.single)

    def as_dict(self) -> Dict[str, int]:
        return {
            "prep": self.prep, "meas_x": self.meas_x, "meas_z": self.meas_z,
            "cnot": self.cnot, "idle": self.idle, "swap": self.swap,
            "single": self.single, "total": self.total,
        }


@dataclass(frozen=True)
class Circuit:
    """
    Timestep-scheduled circuit.

    Data qubits are always indices 0..n_data-1 so circuits acting on the same
    code block share their data register.

    Attributes:
        name (str): Human-readable name
        qubits (Tuple[Qubit, ...]): Register, indexed by position
        steps (Tuple[Tuple[Gate, ...], ...]): Gates per timestep
        basis (str): "X" or "Z" for pure-type extraction, "mixed" or "" otherwise
        mutual_flags (bool): Every ancilla outcome also acts as a flag
    """

    name: str
    qubits: Tuple[Qubit, ...]
    steps: Tuple[Tuple[Gate, ...], ...]
    basis: str = ""
    mutual_flags: bool = False
    notes: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        for i, q in enumerate(self.qubits):
            if q.index != i:
                raise CircuitError(f"qubit at position {i} has index {q.index}")
        size = len(self.qubits)
        for s, step in enumerate(self.steps):
            used: set = set()
            for gate in step:
                for q in gate.qubits:
                    if not 0 <= q < size:
                        raise CircuitError(f"step {s}: qubit {q} outside register of {size}")
                    if q in used:
                        raise ScheduleConflictError(f"step {s}: qubit {q} used twice")
                    used.add(q)

    @property
    def num_qubits(self) -> int:
        return len(self.qubits)

    @cached_property
    def n_data(self) -> int:
        return sum(1 for q in self.qubits if q.role is Role.DATA)

    @property
    def depth(self) -> int:
        return len(self.steps)

    def qubits_with_role(self, role: Role) -> Tuple[int, ...]:
        return tuple(q.index for q in self.qubits if q.role is role)

    @cached_property
    def locations(self) -> Tuple[Location, ...]:
        """All gate locations in canonical (step, position) order."""
        return tuple(
            Location(s, p, gate)
            for s, step in enumerate(self.steps)
            for p, gate in enumerate(step)
        )

    @cached_property
    def program(self) -> Tuple[Tuple[Tuple[GateKind, int, int, str], ...], ...]:
        """Steps as (kind, first qubit, second qubit or -1, tag) tuples for the frame simulator."""
        return tuple(
            tuple((g.kind, g.qubits[0], g.qubits[1] if len(g.qubits) > 1 else -1, g.tag)
                  for g in step)
            for step in self.steps
        )

    @cached_property
    def measurements(self) -> Tuple[Location, ...]:
        return tuple(loc for loc in self.locations if loc.gate.kind in MEASUREMENTS)

    @cached_property
    def syndrome_tags(self) -> Tuple[str, ...]:
        """Outcome names of ancilla measurements, in circuit order."""
        return tuple(loc.gate.tag for loc in self.measurements
                     if self.qubits[loc.gate.qubits[0]].role is not Role.FLAG)

    @cached_property
    def flag_tags(self) -> Tuple[str, ...]:
        return tuple(loc.gate.tag for loc in self.measurements
                     if self.qubits[loc.gate.qubits[0]].role is Role.FLAG)

    def without_flags(self) -> "Circuit":
        """Drop every gate touching a flag qubit; the flag qubits stay in the register."""
        flags = set(self.qubits_with_role(Role.FLAG))
        steps = tuple(
            tuple(g for g in step if not flags.intersection(g.qubits)) for step in self.steps
        )
        return Circuit(f"{self.name}-noflag", self.qubits, steps, self.basis, self.mutual_flags)

    def to_text(self) -> str:
        """Header of role declarations, then one line per timestep."""
        lines = [
            f"circuit {self.name}",
            f"basis {self.basis or '-'}",
            f"mutual {int(self.mutual_flags)}",
        ]
        lines += [f"qubit {q.index} {q.role.value} {q.label}" for q in self.qubits]
        for step in self.steps:
            lines.append("step " + "; ".join(g.text() for g in step))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Circuit":
        """
        Parse the format written by to_text.

        Raises:
            CircuitError: On malformed lines
        """
        name, basis, mutual = "", "", False
        qubits: List[Qubit] = []
        steps: List[Tuple[Gate, ...]] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            keyword, _, rest = line.partition(" ")
            try:
                if keyword == "circuit":
                    name = rest.strip()
                elif keyword == "basis":
                    basis = "" if rest.strip() == "-" else rest.strip()
                elif keyword == "mutual":
                    mutual = bool(int(rest))
                elif keyword == "qubit":
                    index, role, label = rest.split()
                    qubits.append(Qubit(int(index), Role(role), label))
                elif keyword == "step":
                    steps.append(tuple(_parse_gate(g) for g in rest.split(";") if g.strip()))
                else:
                    raise ValueError(f"unknown keyword {keyword!r}")
            except (ValueError, CircuitError) as e:
                raise CircuitError(f"line {number}: {e}") from e
        return cls(name, tuple(qubits), tuple(steps), basis, mutual)


def _parse_gate(text: str) -> Gate:
    fields_ = text.split()
    kind = GateKind(fields_[0])
    arity = 2 if kind in TWO_QUBIT else 1
    qubits = tuple(int(f) for f in fields_[1:1 + arity])
    tag = fields_[1 + arity] if len(fields_) > 1 + arity else ""
    return Gate(kind, qubits, tag)


def census(c: Circuit) -> LocationCensus:
    """Count locations by kind."""
    counts = {kind: 0 for kind in LocationKind}
    for loc in c.locations:
        counts[loc.kind] += 1
    return LocationCensus(
        prep=counts[LocationKind.PREP],
        meas_x=counts[LocationKind.MEAS_X],
        meas_z=counts[LocationKind.MEAS_Z],
        cnot=counts[LocationKind.CNOT],
        idle=counts[LocationKind.IDLE],
        swap=counts[LocationKind.SWAP],
        single=counts[LocationKind.SINGLE],
    )


@dataclass(frozen=True)
class AncillaSpec:
    """Ancilla or flag qubit: its preparation, measurement and outcome name."""

    label: str
    role: Role
    prep: GateKind
    meas: GateKind
    tag: str


def data_qubits(n: int) -> Tuple[Qubit, ...]:
    return tuple(Qubit(i, Role.DATA, f"d{i + 1}") for i in range(n))


def pack(name: str, n: int, ancillas: Sequence[AncillaSpec],
         listing: Iterable[Tuple[GateKind, Tuple[int, ...]]],
         basis: str = "", mutual_flags: bool = False) -> Circuit:
    """
    Schedule a gate listing into timesteps.

    Args:
        name (str): Circuit name
        n (int): Number of data qubits (indices 0..n-1)
        ancillas (Sequence[AncillaSpec]): Ancillas and flags, indices n, n+1, ...
        listing (Iterable): (kind, qubits) of CNOT/SWAP gates in left-to-right order
        basis (str): Stabilizer type measured
        mutual_flags (bool): Mark ancilla outcomes as flags

    Returns:
        Circuit: Preparations, packed gates, measurements and idles
    """
    qubits = data_qubits(n) + tuple(
        Qubit(n + i, spec.role, spec.label) for i, spec in enumerate(ancillas)
    )
    size = len(qubits)
    last = [0] * size
    layers: Dict[int, List[Gate]] = {}
    for kind, targets in listing:
        gate = Gate(kind, tuple(targets))
        if kind not in TWO_QUBIT:
            raise CircuitError(f"only CX and SWAP may be listed, got {kind.value}")
        for q in gate.qubits:
            if not 0 <= q < size:
                raise CircuitError(f"{name}: qubit {q} outside register of {size}")
        step = max(last[q] for q in gate.qubits) + 1
        for q in gate.qubits:
            last[q] = step
        layers.setdefault(step, []).append(gate)
    depth = max(layers) if layers else 0
    steps: List[Tuple[Gate, ...]] = []
    if ancillas:
        steps.append(tuple(Gate(spec.prep, (n + i,)) for i, spec in enumerate(ancillas)))
    for s in range(1, depth + 1):
        gates = layers.get(s, [])
        busy = {q for g in gates for q in g.qubits}
        idles = [Gate(GateKind.IDLE, (q,)) for q in range(size) if q not in busy]
        steps.append(tuple(gates) + tuple(idles))
    if ancillas:
        steps.append(tuple(Gate(spec.meas, (n + i,), spec.tag) for i, spec in enumerate(ancillas)))
    circuit = Circuit(name, qubits, tuple(steps), basis, mutual_flags)
    logger.debug(f"Packed {name}: depth {circuit.depth}, {size} qubits")
    return circuit


def stabilizer_type(g: PauliOperator) -> str:
    """Return "X" or "Z" for a pure-type operator of weight >= 1."""
    if g.is_x_type:
        return "X"
    if g.is_z_type:
        return "Z"
    raise CircuitError(f"{g} is not a pure X or Z operator")


def _check_order(g: PauliOperator, order: Optional[Sequence[int]]) -> Tuple[int, ...]:
    support = g.support
    if order is None:
        return support
    order = tuple(order)
    if sorted(order) != list(support):
        raise ScheduleConflictError(f"order {order} is not a permutation of the support of {g}")
    return order


def _syndrome_ancilla(kind: str, tag: str) -> AncillaSpec:
    if kind == "X":
        return AncillaSpec(f"a_{tag}", Role.ANCILLA, GateKind.PREP_X, GateKind.MEAS_X, tag)
    return AncillaSpec(f"a_{tag}", Role.ANCILLA, GateKind.PREP_Z, GateKind.MEAS_Z, tag)


def _flag(kind: str, tag: str) -> AncillaSpec:
    # Flag basis is opposite to the ancilla basis it guards.
    if kind == "X":
        return AncillaSpec(tag, Role.FLAG, GateKind.PREP_Z, GateKind.MEAS_Z, tag)
    return AncillaSpec(tag, Role.FLAG, GateKind.PREP_X, GateKind.MEAS_X, tag)


def _data_cnot(kind: str, ancilla: int, data: int) -> Tuple[GateKind, Tuple[int, int]]:
    if kind == "X":
        return GateKind.CNOT, (ancilla, data)
    return GateKind.CNOT, (data, ancilla)


def _flag_cnot(kind: str, ancilla: int, flag: int) -> Tuple[GateKind, Tuple[int, int]]:
    if kind == "X":
        return GateKind.CNOT, (ancilla, flag)
    return GateKind.CNOT, (flag, ancilla)


def build_unflagged(g: PauliOperator, tag: str = "g", order: Optional[Sequence[int]] = None) -> Circuit:
    """
    Bare parity measurement of a pure-type stabilizer.

    Z-type: ancilla prepared in |0>, CNOTs data -> ancilla, Z measurement.
    X-type: ancilla prepared in |+>, CNOTs ancilla -> data, X measurement.

    Raises:
        CircuitError: If g is mixed-type or has weight below 2
    """
    kind = stabilizer_type(g) if not g.is_identity else ""
    if not kind or g.weight < 2:
        raise CircuitError(f"unflagged extraction needs a pure-type operator of weight >= 2, got {g}")
    order = _check_order(g, order)
    a = g.n
    listing = [_data_cnot(kind, a, q) for q in order]
    return pack(f"unflagged-{tag}", g.n, [_syndrome_ancilla(kind, tag)], listing, kind)


def build_flagged(g: PauliOperator, tag: str = "g", order: Optional[Sequence[int]] = None,
                  flag_tag: str = "f1") -> Circuit:
    """
    Standard flagged extraction: one flag coupled to the ancilla right after
    the first and right before the last data CNOT.

    Raises:
        CircuitError: If g is mixed-type or has weight below 3
    """
    kind = stabilizer_type(g)
    if g.weight < 3:
        raise CircuitError(
            f"{tag} has weight {g.weight}; a flag is only needed from weight 3, use build_unflagged"
        )
    return build_shared_flag([(tag, g, order)], name=f"flagged-{tag}", flag_tag=flag_tag)


def build_shared_flag(group: Sequence[Tuple[str, PauliOperator, Optional[Sequence[int]]]],
                      name: str = "", flag_tag: str = "f1") -> Circuit:
    """
    Several same-type stabilizers sharing one flag qubit.

    Each stabilizer gets its own ancilla. The listing is: the first data CNOT
    of every ancilla, the first flag couplings in sequence, the middle data
    CNOTs round-robin, the second flag couplings in sequence, and the last
    data CNOTs.

    Args:
        group: (tag, generator, data order or None) per stabilizer
        name (str): Circuit name
        flag_tag (str): Outcome name of the flag

    Raises:
        CircuitError: If the group is empty or mixes types, or a weight is below 2
        ScheduleConflictError: If an order is not a permutation of its support
    """
    if not group:
        raise CircuitError("shared-flag group is empty")
    kinds = {stabilizer_type(g) for _, g, _ in group}
    if len(kinds) != 1:
        raise CircuitError("shared-flag group mixes X-type and Z-type stabilizers")
    kind = kinds.pop()
    n = group[0][1].n
    orders = [_check_order(g, order) for _, g, order in group]
    if any(len(o) < 2 for o in orders):
        raise CircuitError("every stabilizer in a shared-flag group needs weight >= 2")
    ancillas = [_syndrome_ancilla(kind, tag) for tag, _, _ in group] + [_flag(kind, flag_tag)]
    flag = n + len(group)
    listing = [_data_cnot(kind, n + i, o[0]) for i, o in enumerate(orders)]
    listing += [_flag_cnot(kind, n + i, flag) for i in range(len(group))]
    longest = max(len(o) for o in orders)
    for position in range(1, longest - 1):
        listing += [_data_cnot(kind, n + i, o[position])
                    for i, o in enumerate(orders) if position < len(o) - 1]
    listing += [_flag_cnot(kind, n + i, flag) for i in range(len(group))]
    listing += [_data_cnot(kind, n + i, o[-1]) for i, o in enumerate(orders)]
    name = name or "shared-" + "-".join(tag for tag, _, _ in group)
    return pack(name, n, ancillas, listing, kind)


def build_parallel_unflagged(group: Sequence[Tuple[str, PauliOperator, Optional[Sequence[int]]]],
                             name: str = "") -> Circuit:
    """Same-type stabilizers measured concurrently without flags, one ancilla each, round-robin."""
    if not group:
        raise CircuitError("parallel group is empty")
    kinds = {stabilizer_type(g) for _, g, _ in group}
    if len(kinds) != 1:
        raise CircuitError("parallel unflagged group mixes X-type and Z-type stabilizers")
    kind = kinds.pop()
    n = group[0][1].n
    orders = [_check_order(g, order) for _, g, order in group]
    listing = []
    for position in range(max(len(o) for o in orders)):
        listing += [_data_cnot(kind, n + i, o[position])
                    for i, o in enumerate(orders) if position < len(o)]
    ancillas = [_syndrome_ancilla(kind, tag) for tag, _, _ in group]
    name = name or "parallel-" + "-".join(tag for tag, _, _ in group)
    return pack(name, n, ancillas, listing, kind)


def build_sequence(name: str, circuits: Sequence[Circuit]) -> Circuit:
    """
    Run circuits on one data register back to back, reusing a shared ancilla pool.

    Ancilla j of every circuit maps to pool qubit n + j.
    """
    if not circuits:
        raise CircuitError("nothing to sequence")
    n = circuits[0].n_data
    if any(c.n_data != n for c in circuits):
        raise CircuitError("circuits act on different data registers")
    pool = max(c.num_qubits for c in circuits) - n
    qubits = data_qubits(n) + tuple(Qubit(n + j, Role.ANCILLA, f"p{j + 1}") for j in range(pool))
    steps: List[Tuple[Gate, ...]] = []
    for c in circuits:
        steps.extend(c.steps)
    return Circuit(name, qubits, tuple(steps))


def place_side_by_side(name: str, blocks: Sequence[Circuit]) -> Tuple[Circuit, List[List[int]]]:
    """
    Juxtapose circuits of equal depth on disjoint registers.

    Returns:
        Tuple[Circuit, List[List[int]]]: Combined circuit and, per block, the
            new index of each of its qubits. Data qubits of all blocks come first.
    """
    depth = blocks[0].depth
    if any(b.depth != depth for b in blocks):
        raise CircuitError("side-by-side blocks differ in depth")
    maps: List[List[int]] = [[0] * b.num_qubits for b in blocks]
    qubits: List[Qubit] = []
    for role_pass in (True, False):
        for b, block in enumerate(blocks):
            for q in block.qubits:
                if (q.role is Role.DATA) == role_pass:
                    maps[b][q.index] = len(qubits)
                    qubits.append(Qubit(len(qubits), q.role, f"b{b + 1}.{q.label}"))
    steps = []
    for s in range(depth):
        steps.append(tuple(
            Gate(g.kind, tuple(maps[b][q] for q in g.qubits), g.tag)
            for b, block in enumerate(blocks) for g in block.steps[s]
        ))
    return Circuit(name, tuple(qubits), tuple(steps)), maps


def build_transversal_cnot(n: int) -> Circuit:
    """Bitwise CNOT from block 1 (qubits 0..n-1) to block 2 (qubits n..2n-1)."""
    qubits = tuple(Qubit(i, Role.DATA, f"b{1 + i // n}.d{i % n + 1}") for i in range(2 * n))
    step = tuple(Gate(GateKind.CNOT, (i, n + i)) for i in range(n))
    return Circuit(f"transversal-cnot-{n}", qubits, (step,))


def build_parallel_422() -> Circuit:
    """
    Two-ancilla parallel extraction of X1X2X3X4 and Z1Z2Z3Z4 with two SWAPs.

    Qubit 4 starts as the X-type ancilla and qubit 5 as the Z-type ancilla.
    The SWAPs sit after the first and after the third data CNOT of each
    ancilla, so the weight-2 hooks left by the middle CNOTs are raised on the
    other ancilla's outcome. The circuit is for error detection.
    """
    n, qa, qb = 4, 4, 5
    cx = GateKind.CNOT
    listing = [
        (cx, (qa, 0)), (cx, (2, qb)),
        (GateKind.SWAP, (qa, qb)),
        (cx, (qb, 2)), (cx, (0, qa)),
        (cx, (qb, 3)), (cx, (1, qa)),
        (GateKind.SWAP, (qa, qb)),
        (cx, (qa, 1)), (cx, (3, qb)),
    ]
    ancillas = [
        AncillaSpec("qa", Role.ANCILLA, GateKind.PREP_X, GateKind.MEAS_X, "g1"),
        AncillaSpec("qb", Role.ANCILLA, GateKind.PREP_Z, GateKind.MEAS_Z, "g2"),
    ]
    return pack("parallel-422", n, ancillas, listing, "mixed", mutual_flags=True)


@dataclass(frozen=True)
class MutualMember:
    """One ancilla of a mutual-flag part: outcome tag, generator and data order."""

    tag: str
    generator: PauliOperator
    order: Tuple[int, ...]


@dataclass(frozen=True)
class MutualSchedule:
    """
    Explicit schedule of a mutual-flag part.

    Attributes:
        members (Tuple[MutualMember, ...]): Ancillas, index i lives on qubit n + i
        events (Tuple[Tuple[int, int], ...]): Left-to-right listing. (i, q) with
            q >= 0 is member i's CNOT on data qubit q; (i, -1 - j) is the link
            CNOT from X-type member i to Z-type member j
    """

    members: Tuple[MutualMember, ...]
    events: Tuple[Tuple[int, int], ...]

    def links(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((i, -1 - code) for i, code in self.events if code < 0)


def build_mutual_part(schedule: MutualSchedule, name: str = "") -> Circuit:
    """
    Opposite-type stabilizers measured together; each ancilla flags the others.

    A link CNOT runs from an X-type ancilla (control) to a Z-type ancilla
    (target): it copies X errors of the first and Z errors of the second into
    the other's outcome.

    Raises:
        ScheduleConflictError: If data events do not match each member's order
            or a link does not join an X-type and a Z-type member
    """
    members = schedule.members
    if not members:
        raise CircuitError("mutual part has no members")
    n = members[0].generator.n
    kinds = [stabilizer_type(m.generator) for m in members]
    seen: List[List[int]] = [[] for _ in members]
    listing = []
    for i, code in schedule.events:
        if not 0 <= i < len(members):
            raise ScheduleConflictError(f"event names unknown member {i}")
        if code >= 0:
            seen[i].append(code)
            listing.append(_data_cnot(kinds[i], n + i, code))
            continue
        j = -1 - code
        if not 0 <= j < len(members) or kinds[i] != "X" or kinds[j] != "Z":
            raise ScheduleConflictError(f"link {i}->{j} must run from an X-type to a Z-type ancilla")
        listing.append((GateKind.CNOT, (n + i, n + j)))
    for m, got in zip(members, seen):
        _check_order(m.generator, m.order)
        if tuple(got) != m.order:
            raise ScheduleConflictError(f"events of {m.tag} do not follow its order {m.order}")
    ancillas = [_syndrome_ancilla(kind, m.tag) for kind, m in zip(kinds, members)]
    name = name or "mutual-" + "-".join(m.tag for m in members)
    return pack(name, n, ancillas, listing, "mixed", mutual_flags=True)


@dataclass(frozen=True, eq=False)
class Scheme:
    """
    One EC (or ED) block: the main gadgets run in order plus the unflagged
    follow-up extractions a decoder may call.

    Attributes:
        code (CssCode): The code the block protects
        name (str): Scheme id, e.g. "flag" or "parallel"
        gadgets (Tuple[Circuit, ...]): Main extraction circuits in measurement order
        followups (Mapping[str, Tuple[Circuit, ...]]): "X", "Z" and "complete"
            unflagged extractions, one circuit per generator
        detection (bool): The scheme is meant for error detection only
    """

    code: CssCode
    name: str
    gadgets: Tuple[Circuit, ...]
    followups: Mapping[str, Tuple[Circuit, ...]]
    detection: bool = False

    def __post_init__(self) -> None:
        for c in self.gadgets:
            if c.n_data != self.code.n:
                raise CircuitError(f"{c.name} acts on {c.n_data} data qubits, {self.code.name} has {self.code.n}")

    @property
    def pure_type(self) -> bool:
        """True when every gadget measures stabilizers of one type only."""
        return all(c.basis in ("X", "Z") for c in self.gadgets)

    def side(self, basis: str) -> Tuple[int, ...]:
        """Indices of the gadgets of one stabilizer type."""
        return tuple(i for i, c in enumerate(self.gadgets) if c.basis == basis)

    def generator_indices(self, basis: str) -> Tuple[int, ...]:
        """Code generator positions reported by a follow-up extraction of this basis."""
        if basis == "X":
            return self.code.x_indices
        if basis == "Z":
            return self.code.z_indices
        return tuple(range(len(self.code.generators)))

    def main_census(self) -> LocationCensus:
        total = LocationCensus()
        for c in self.gadgets:
            total = total + census(c)
        return total

    def followup_census(self, basis: str = "complete") -> LocationCensus:
        total = LocationCensus()
        for c in self.followups[basis]:
            total = total + census(c)
        return total
