"""
Exhaustive single-fault certification and circuit searches.

Every single fault of every main gadget is injected in turn, the committed
decoding procedure is run with noiseless follow-ups, and the final frame is
judged after an ideal round. The same enumeration builds the flag lookup
tables, counts flag-raising fault classes and drives the randomized searches
for shared-flag and mutual-flag schedules.

Key Features:
    - fault_table rows with CSV/JSON export
    - b_count and the flag budget check
    - flag_lookup with per-key consistency checking
    - certify for one EC/ED block and certify_exrec for the CNOT ex-Rec
    - algorithm2_search over data-CNOT orders of a shared-flag group
    - search_mutual_part over schedules of mixed-type mutual-flag parts

Dependencies:
    - numpy: Seeded Generators for the searches
"""

import csv
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .circuit import (Circuit, GateKind, MutualMember, MutualSchedule, Role, Scheme, build_flagged,
                      build_mutual_part, build_shared_flag, stabilizer_type)
from .codes import CssCode
from .decode import Action, DecoderConfig, LookupTables, Mode, Procedure, RecordingTables, decode
from .errors import BudgetViolation, CircuitError, SearchExhausted, UniquenessViolation
from .faults import FaultEvent, FaultSource, InjectedFault, NoFaults, enumerate_single_faults
from .pauli import PauliOperator, syndrome_of
from .propagate import check_deterministic, propagate
from .protocol import RoundDriver, judge, run_exrec, transversal_gate

# Initialize logger
logger = logging.getLogger(__name__)

DEFAULT_MAX_ITERS = 20000
FAULT_TABLE_COLUMNS = ("fault_id", "location", "effect", "residual", "m", "f", "m_prime")


def _bits(values: Sequence[int]) -> str:
    return "".join(str(b) for b in values)


@dataclass(frozen=True)
class FaultTableRow:
    """
    One single fault of a circuit and what it leaves behind.

    Attributes:
        fault_id (int): Position in enumeration order
        fault (FaultEvent): The fault
        residual (PauliOperator): Data error after the circuit
        m (Tuple[int, ...]): Ancilla outcomes
        f (Tuple[int, ...]): Flag outcomes
        m_prime (Tuple[int, ...]): Noiseless follow-up syndrome of the residual
    """

    fault_id: int
    fault: FaultEvent
    residual: PauliOperator
    m: Tuple[int, ...]
    f: Tuple[int, ...]
    m_prime: Tuple[int, ...]

    def as_dict(self) -> Dict[str, str]:
        return {
            "fault_id": str(self.fault_id),
            "location": str(self.fault.location),
            "effect": "flip" if self.fault.flip else self.fault.effect.label(),
            "residual": self.residual.label(),
            "m": _bits(self.m),
            "f": _bits(self.f),
            "m_prime": _bits(self.m_prime),
        }


def followup_generators(c: Circuit, code: CssCode) -> Tuple[PauliOperator, ...]:
    """Generators read by the follow-up that answers a flag of c."""
    if c.basis == "X":
        return code.z_gens
    if c.basis == "Z":
        return code.x_gens
    return code.generators


def fault_table(c: Circuit, code: CssCode,
                followup: Optional[Sequence[PauliOperator]] = None) -> List[FaultTableRow]:
    """
    Propagate every single fault of c from a clean codeword.

    Args:
        c (Circuit): The circuit
        code (CssCode): Code whose data register c acts on
        followup (Optional[Sequence[PauliOperator]]): Generators of the follow-up
            extraction; defaults to the opposite type for pure-type circuits and
            all generators otherwise

    Returns:
        List[FaultTableRow]: One row per fault in enumeration order
    """
    followup = tuple(followup) if followup is not None else followup_generators(c, code)
    rows = []
    for fault_id, fault in enumerate(enumerate_single_faults(c)):
        result = propagate(c, [fault])
        rows.append(FaultTableRow(
            fault_id, fault, result.residual, result.m, result.f,
            syndrome_of(result.residual, followup).bits,
        ))
    logger.debug(f"Fault table of {c.name}: {len(rows)} rows")
    return rows


def wire_fault_table(c: Circuit, code: CssCode,
                     followup: Optional[Sequence[PauliOperator]] = None) -> List[FaultTableRow]:
    """
    Single-qubit X and Z errors on each wire right after each CNOT: two wire
    positions per CNOT, the X rows first.
    """
    followup = tuple(followup) if followup is not None else followup_generators(c, code)
    positions = [
        (loc.step, q) for loc in c.locations
        if loc.gate.kind is GateKind.CNOT for q in loc.gate.qubits
    ]
    rows = []
    for kind in ("X", "Z"):
        for step, q in positions:
            fault = FaultEvent.after_step(step, PauliOperator.single(kind, q, c.num_qubits))
            result = propagate(c, [fault])
            rows.append(FaultTableRow(
                len(rows), fault, result.residual, result.m, result.f,
                syndrome_of(result.residual, followup).bits,
            ))
    return rows


def write_fault_table(rows: Sequence[FaultTableRow], path: str) -> None:
    """Write rows as CSV, or JSON when the path ends in .json."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    records = [row.as_dict() for row in rows]
    try:
        if target.suffix == ".json":
            with open(target, "w", encoding="utf-8") as f:
                json.dump(records, f, indent=2)
        else:
            with open(target, "w", encoding="utf-8", newline="") as f:
                writer = csv.DictWriter(f, fieldnames=FAULT_TABLE_COLUMNS)
                writer.writeheader()
                writer.writerows(records)
        logger.info(f"Fault table written to {target} ({len(records)} rows)")
    except OSError as e:
        logger.error(f"Error writing fault table {target}: {str(e)}")
        raise


def b_count(flagged: Circuit, code: Optional[CssCode] = None) -> int:
    """
    Number of distinct non-trivial data errors left by single faults that raise the flag.

    Only the hook-type part counts (X for an X-type circuit, Z for a Z-type
    one). With a code, errors are compared modulo its stabilizers.

    Raises:
        CircuitError: If the circuit has no flag qubit or is not pure-type
    """
    if not flagged.qubits_with_role(Role.FLAG):
        raise CircuitError(f"{flagged.name} has no flag qubit")
    if flagged.basis not in ("X", "Z"):
        raise CircuitError(f"{flagged.name} is not a pure-type extraction")
    classes = set()
    for fault in enumerate_single_faults(flagged):
        result = propagate(flagged, [fault])
        if not any(result.f):
            continue
        if flagged.basis == "X":
            mask = result.residual.x
            if code is not None:
                mask = code.x_span.reduce(mask)
        else:
            mask = result.residual.z
            if code is not None:
                mask = code.z_span.reduce(mask)
        if mask:
            classes.add(mask)
    return len(classes)


def budget_totals(group: Sequence[str], code: CssCode) -> Tuple[int, int]:
    """
    Flag budget of a same-type group of generators.

    Returns:
        Tuple[int, int]: (sum of b_count over standard flagged circuits,
            2 to the number of opposite-type generators)

    Raises:
        CircuitError: If the group mixes X-type and Z-type generators
    """
    generators = [code.generator(name) for name in group]
    kinds = {stabilizer_type(g) for g in generators}
    if len(kinds) != 1:
        raise CircuitError(f"group {', '.join(group)} mixes X-type and Z-type generators")
    kind = kinds.pop()
    total = sum(b_count(build_flagged(g, name), code) for name, g in zip(group, generators) if g.weight >= 3)
    budget = 2 ** (code.z if kind == "X" else code.x)
    return total, budget


def check_budget(group: Sequence[str], code: CssCode) -> bool:
    total, budget = budget_totals(group, code)
    logger.debug(f"Budget of {', '.join(group)}: {total} <= {budget}")
    return total <= budget


@dataclass(frozen=True)
class BadLocation:
    """A single fault the procedure does not tolerate."""

    slot: str
    fault: str
    final: str

    def as_dict(self) -> Dict[str, str]:
        return {"slot": self.slot, "fault": self.fault, "final": self.final}


@dataclass(frozen=True)
class Certificate:
    """
    Outcome of exhaustive single-fault certification.

    Attributes:
        subject (str): What was certified
        procedure (str): Decoding procedure
        mode (str): detect or correct
        bad_locations (Tuple[BadLocation, ...]): Empty on pass
        b_counts (Dict[str, int]): Flag-raising fault classes per flagged gadget
        uniqueness (Dict[str, bool]): Per flag key, whether all faults agree
        collisions (Tuple[Dict[str, Any], ...]): Conflicting faults per key
        faults_checked (int): Number of single faults and input errors run
    """

    subject: str
    procedure: str
    mode: str
    bad_locations: Tuple[BadLocation, ...] = ()
    b_counts: Dict[str, int] = field(default_factory=dict)
    uniqueness: Dict[str, bool] = field(default_factory=dict)
    collisions: Tuple[Dict[str, Any], ...] = ()
    faults_checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.bad_locations and all(self.uniqueness.values())

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subject": self.subject,
            "procedure": self.procedure,
            "mode": self.mode,
            "verdict": self.verdict,
            "faults_checked": self.faults_checked,
            "bad_locations": [b.as_dict() for b in self.bad_locations],
            "b_counts": dict(self.b_counts),
            "uniqueness": dict(self.uniqueness),
            "collisions": list(self.collisions),
        }

    def write(self, path: str) -> None:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2)
        logger.info(f"Certificate written to {target}")


def _input_errors(n: int) -> Iterator[PauliOperator]:
    for q in range(n):
        for kind in ("X", "Y", "Z"):
            yield PauliOperator.single(kind, q, n)


def _cases(scheme: Scheme, prefix: str = "") -> Iterator[Tuple[str, FaultSource, Optional[PauliOperator]]]:
    """(label, fault source, input frame) for every single main-gadget fault and weight-1 input."""
    for i, c in enumerate(scheme.gadgets):
        slot = f"{prefix}main{i}"
        for fault in enumerate_single_faults(c):
            yield f"{slot} {fault.describe()}", InjectedFault(slot, fault), None
    for e in _input_errors(scheme.code.n):
        yield f"input {e.label()}", NoFaults(), e


def _parities(procedure: Procedure) -> Tuple[int, ...]:
    return (0,) if procedure is Procedure.ALG1 else (0, 1)


def _record(scheme: Scheme, procedure: Procedure) -> Tuple[LookupTables, List[Dict[str, Any]], Dict[str, bool]]:
    code = scheme.code
    recorder = RecordingTables(code)
    for parity in _parities(procedure):
        config = DecoderConfig(Mode.CORRECT, procedure, recorder, parity)
        for label, source, frame in _cases(scheme):
            driver = RoundDriver(scheme, frame, source)
            recorder.attach(lambda d=driver: d.frame, label)
            decode(driver, config)
    entries = {}
    collisions: List[Dict[str, Any]] = []
    uniqueness: Dict[str, bool] = {}
    for key, records in recorder.records.items():
        flag_key, basis, bits = key
        name = f"{flag_key[0]}:{_bits(flag_key[1])}/{basis}:{_bits(bits)}"
        best = min((r[1] for r in records), key=lambda p: p.weight)
        clash = [(label, e.label()) for label, e in records if not code.equivalent(best, e)]
        uniqueness[name] = not clash
        if clash:
            collisions.append({"key": name, "correction": best.label(), "conflicting": clash})
        entries[key] = best
    return LookupTables(code, entries), collisions, uniqueness


def flag_lookup(scheme: Scheme, procedure: Procedure) -> LookupTables:
    """
    Build LOOKUP(f) for a scheme and procedure.

    Every single fault of the main gadgets and every weight-1 input error is
    decoded with tables that answer each flag key with the true (projected)
    residual. A key is kept when all residuals reaching it agree up to a
    stabilizer.

    Raises:
        UniquenessViolation: If two faults reach one key with inequivalent residuals
    """
    tables, collisions, _ = _record(scheme, procedure)
    if collisions:
        logger.warning(f"{scheme.code.name}/{scheme.name}/{procedure.value}: {len(collisions)} colliding flag keys")
        raise UniquenessViolation(f"{len(collisions)} flag keys with inequivalent residuals", collisions)
    logger.info(f"{scheme.code.name}/{scheme.name}/{procedure.value}: {len(tables)} flag table entries")
    return tables


def _gadget_b_counts(scheme: Scheme) -> Dict[str, int]:
    counts = {}
    for c in scheme.gadgets:
        if c.basis in ("X", "Z") and len(c.qubits_with_role(Role.FLAG)) == 1:
            counts[c.name] = b_count(c, scheme.code)
    return counts


def default_mode(scheme: Scheme, procedure: Procedure) -> Mode:
    return Mode.DETECT if procedure is Procedure.DETECT else Mode.CORRECT


def certify(scheme: Scheme, procedure: Procedure, mode: Optional[Mode] = None,
            tables: Optional[LookupTables] = None) -> Certificate:
    """
    Decide whether a scheme has bad locations under a decoding procedure.

    Args:
        scheme (Scheme): EC or ED block
        procedure (Procedure): Decoding procedure
        mode (Optional[Mode]): Defaults to detect for the detect procedure
        tables (Optional[LookupTables]): Built with flag_lookup when omitted

    Returns:
        Certificate: Failures are verdicts, never exceptions
    """
    mode = mode or default_mode(scheme, procedure)
    code = scheme.code
    collisions: List[Dict[str, Any]] = []
    uniqueness: Dict[str, bool] = {}
    if mode is Mode.CORRECT and tables is None:
        tables, collisions, uniqueness = _record(scheme, procedure)
    bad = []
    checked = 0
    parities = _parities(procedure) if mode is Mode.CORRECT else (0,)
    for parity in parities:
        config = DecoderConfig(mode, procedure, tables, parity)
        for label, source, frame in _cases(scheme):
            checked += 1
            driver = RoundDriver(scheme, frame, source)
            outcome = decode(driver, config)
            if outcome.action is Action.DISCARD:
                continue
            detected, failed, final = judge(code, driver.frame, mode)
            if failed and not detected:
                bad.append(BadLocation(f"parity{parity}", label, final.label()))
    certificate = Certificate(
        subject=f"{code.name}/{scheme.name}",
        procedure=procedure.value,
        mode=mode.value,
        bad_locations=tuple(bad),
        b_counts=_gadget_b_counts(scheme),
        uniqueness=uniqueness,
        collisions=tuple(collisions),
        faults_checked=checked,
    )
    level = logging.INFO if certificate.passed else logging.WARNING
    logger.log(level, f"Certified {certificate.subject} with {procedure.value}: {certificate.verdict}, "
                      f"{len(bad)} bad of {checked}")
    return certificate


def certify_exrec(scheme: Scheme, procedure: Procedure, mode: Optional[Mode] = None,
                  tables: Optional[LookupTables] = None) -> Certificate:
    """
    Single-fault certification of the transversal-CNOT ex-Rec: every fault of
    the four EC blocks' main gadgets and of the transversal CNOT.
    """
    mode = mode or default_mode(scheme, procedure)
    if mode is Mode.CORRECT and tables is None:
        tables = flag_lookup(scheme, procedure)
    config = DecoderConfig(mode, procedure, tables)
    cnot = transversal_gate(scheme.code.n)
    sources: List[Tuple[str, FaultSource]] = []
    for prefix in ("L1-", "L2-", "T1-", "T2-"):
        for i, c in enumerate(scheme.gadgets):
            slot = f"{prefix}main{i}"
            sources += [(f"{slot} {fault.describe()}", InjectedFault(slot, fault))
                        for fault in enumerate_single_faults(c)]
    sources += [(f"cnot {fault.describe()}", InjectedFault("cnot", fault))
                for fault in enumerate_single_faults(cnot)]
    bad = []
    for label, source in sources:
        result = run_exrec(scheme, config, source)
        if result.failed:
            bad.append(BadLocation("exrec", label, " | ".join(e.label() for e in result.final)))
    certificate = Certificate(
        subject=f"{scheme.code.name}/{scheme.name}/exrec",
        procedure=procedure.value,
        mode=mode.value,
        bad_locations=tuple(bad),
        b_counts=_gadget_b_counts(scheme),
        faults_checked=len(sources),
    )
    logger.info(f"Certified {certificate.subject}: {certificate.verdict}, {len(bad)} bad of {len(sources)}")
    return certificate


def ed_parallel_all(code: CssCode, kind: str, flag_tag: str = "f1") -> Circuit:
    """
    All generators of one type in a single shared-flag circuit, for error detection.

    Raises:
        CircuitError: If the code has no generator of that type
    """
    indices = code.x_indices if kind == "X" else code.z_indices
    if not indices:
        raise CircuitError(f"{code.name} has no {kind}-type generators")
    group = [(code.generator_names[i], code.generators[i], None) for i in indices]
    return build_shared_flag(group, name=f"ed-parallel-{kind}", flag_tag=flag_tag)


def hook_collisions(c: Circuit, code: CssCode) -> List[Dict[str, str]]:
    """
    Flag-raising faults whose hook-type errors share a follow-up syndrome but
    differ by more than a stabilizer. The identity class is included.
    """
    opposite = followup_generators(c, code)
    seen: Dict[Tuple[int, ...], Tuple[PauliOperator, str]] = {
        tuple([0] * len(opposite)): (PauliOperator.identity(code.n), "no error"),
    }
    collisions = []
    for fault in enumerate_single_faults(c):
        result = propagate(c, [fault])
        if not any(result.f):
            continue
        hook = result.residual.x_part() if c.basis == "X" else result.residual.z_part()
        key = syndrome_of(hook, opposite).bits
        if key not in seen:
            seen[key] = (hook, fault.describe())
            continue
        rep, origin = seen[key]
        if not code.equivalent(rep, hook):
            collisions.append({
                "syndrome": _bits(key),
                "first": f"{origin} -> {rep.label()}",
                "second": f"{fault.describe()} -> {hook.label()}",
            })
    return collisions


@dataclass(frozen=True)
class SearchResult:
    """
    Outcome of a successful schedule search.

    Attributes:
        circuit (Circuit): The circuit found
        orders (Tuple[Tuple[int, ...], ...]): Data-CNOT order per stabilizer
        iterations (int): Candidates tried before success
        certificate (Certificate): Per-gadget uniqueness and b_count
        seed (int): Seed of the search
    """

    circuit: Circuit
    orders: Tuple[Tuple[int, ...], ...]
    iterations: int
    certificate: Certificate
    seed: int = 0


def algorithm2_search(group: Sequence[str], code: CssCode, seed: int = 0,
                      max_iters: int = DEFAULT_MAX_ITERS, flag_tag: str = "f1") -> SearchResult:
    """
    Find data-CNOT orders that make a shared-flag group's flagged syndromes unique.

    Starts from support order. After each failed candidate one or two
    stabilizers of the group get a random transposition of their order.

    Args:
        group (Sequence[str]): Same-type generator names
        code (CssCode): The code
        seed (int): Seed of the numpy Generator
        max_iters (int): Candidates to try
        flag_tag (str): Outcome name of the shared flag

    Raises:
        BudgetViolation: If the group fails check_budget
        SearchExhausted: If no candidate succeeds; carries the best attempt
    """
    total, budget = budget_totals(group, code)
    if total > budget:
        raise BudgetViolation(f"group {', '.join(group)} needs {total} flag classes, budget is {budget}",
                              total, budget)
    rng = np.random.default_rng(seed)
    generators = [code.generator(name) for name in group]
    orders = [list(g.support) for g in generators]
    best: Optional[Tuple[Circuit, List[Dict[str, str]]]] = None
    name = f"shared-{'-'.join(group)}"
    for iteration in range(max_iters):
        circuit = build_shared_flag(
            [(tag, g, order) for tag, g, order in zip(group, generators, orders)],
            name=name, flag_tag=flag_tag,
        )
        collisions = hook_collisions(circuit, code)
        if not collisions:
            certificate = Certificate(
                subject=f"{code.name}/{name}", procedure="uniqueness", mode="correct",
                b_counts={circuit.name: b_count(circuit, code)},
                uniqueness={flag_tag: True},
                faults_checked=len(enumerate_single_faults(circuit)),
            )
            logger.info(f"Search over {', '.join(group)} succeeded after {iteration} perturbations")
            return SearchResult(circuit, tuple(tuple(o) for o in orders), iteration, certificate, seed)
        if best is None or len(collisions) < len(best[1]):
            best = (circuit, collisions)
        for member in rng.choice(len(orders), size=min(len(orders), int(rng.integers(1, 3))), replace=False):
            order = orders[int(member)]
            i, j = rng.choice(len(order), size=2, replace=False)
            order[i], order[j] = order[j], order[i]
    logger.warning(f"Search over {', '.join(group)} exhausted after {max_iters} candidates")
    raise SearchExhausted(f"no unique ordering for {', '.join(group)} in {max_iters} candidates",
                          best=best[0] if best else None,
                          collisions=best[1] if best else [], iterations=max_iters)


@dataclass(frozen=True)
class MutualSearchResult:
    circuit: Circuit
    schedule: MutualSchedule
    iterations: int
    seed: int


def _owners(event: Tuple[int, int]) -> Tuple[int, int]:
    return event[0], -1 - event[1]


def _random_schedule(members: Sequence[Tuple[str, PauliOperator]], rng: np.random.Generator) -> MutualSchedule:
    """Random orders, one link per spoke at a random slot, then a random merge of the chains."""
    kinds = [stabilizer_type(g) for _, g in members]
    mutual = []
    chains: List[List[Tuple[int, int]]] = []
    for i, (tag, g) in enumerate(members):
        order = tuple(int(q) for q in rng.permutation(g.support))
        mutual.append(MutualMember(tag, g, order))
        chains.append([(i, q) for q in order])
    for spoke in range(1, len(members)):
        x, z = (0, spoke) if kinds[0] == "X" else (spoke, 0)
        for owner in (0, spoke):
            chains[owner].insert(int(rng.integers(len(chains[owner]) + 1)), (x, -1 - z))
    events: List[Tuple[int, int]] = []
    heads = [0] * len(chains)
    while any(h < len(ch) for h, ch in zip(heads, chains)):
        ready = []
        for i, ch in enumerate(chains):
            if heads[i] >= len(ch):
                continue
            event = ch[heads[i]]
            if event[1] < 0:
                # a link waits until it heads both chains
                other = sum(_owners(event)) - i
                if heads[other] >= len(chains[other]) or chains[other][heads[other]] != event:
                    continue
            ready.append(i)
        i = ready[int(rng.integers(len(ready)))]
        event = chains[i][heads[i]]
        events.append(event)
        owners = _owners(event) if event[1] < 0 else (i,)
        for owner in owners:
            heads[owner] += 1
    return MutualSchedule(tuple(mutual), tuple(events))


def mutual_part_collisions(c: Circuit, code: CssCode) -> List[Dict[str, str]]:
    """
    Single faults and weight-1 inputs of a mutual-flag part that a complete
    follow-up could not tell apart, plus silent faults leaving more than a
    weight-1 error of either type.
    """
    cases: List[Tuple[str, List[FaultEvent], Optional[PauliOperator]]] = [
        (fault.describe(), [fault], None) for fault in enumerate_single_faults(c)
    ]
    cases += [(f"input {e.label()}", [], e) for e in _input_errors(code.n)]
    seen: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Tuple[PauliOperator, str]] = {}
    collisions = []
    for label, faults, frame in cases:
        result = propagate(c, faults, frame)
        residual = result.residual
        if not any(result.m):
            if not all(_weight_one_equivalent(part, code) for part in _css_parts(residual)):
                collisions.append({"silent": f"{label} -> {residual.label()}"})
            continue
        key = (result.m, code.syndrome(residual).bits)
        if key not in seen:
            seen[key] = (residual, label)
        elif not code.equivalent(seen[key][0], residual):
            collisions.append({"first": seen[key][1], "second": label})
    return collisions


def _css_parts(e: PauliOperator) -> Tuple[PauliOperator, PauliOperator]:
    return e.x_part(), e.z_part()


def _weight_one_equivalent(e: PauliOperator, code: CssCode) -> bool:
    if e.weight <= 1 or code.in_stabilizer_group(e):
        return True
    return any(code.equivalent(e, single) for single in _input_errors(code.n))


def search_mutual_part(code: CssCode, hub: str, spokes: Sequence[str], seed: int = 0,
                       max_iters: int = DEFAULT_MAX_ITERS, name: str = "") -> MutualSearchResult:
    """
    Randomized search for a deterministic, self-flagging schedule of one hub
    ancilla and spoke ancillas of the opposite type.

    Raises:
        CircuitError: If the spokes are not all of the type opposite to the hub
        SearchExhausted: If no candidate passes within max_iters
    """
    members = [(hub, code.generator(hub))] + [(s, code.generator(s)) for s in spokes]
    kinds = [stabilizer_type(g) for _, g in members]
    if any(k == kinds[0] for k in kinds[1:]):
        raise CircuitError(f"spokes of {hub} must have the opposite type")
    name = name or f"mutual-{hub}-{'-'.join(spokes)}"
    rng = np.random.default_rng(seed)
    rejected = {"random": 0, "collisions": 0}
    for iteration in range(max_iters):
        schedule = _random_schedule(members, rng)
        circuit = build_mutual_part(schedule, name)
        if check_deterministic(circuit, code):
            rejected["random"] += 1
            continue
        if mutual_part_collisions(circuit, code):
            rejected["collisions"] += 1
            continue
        logger.info(f"Mutual schedule for {name} found after {iteration + 1} candidates")
        return MutualSearchResult(circuit, schedule, iteration + 1, seed)
    logger.warning(f"Mutual schedule search for {name} exhausted: {rejected}")
    raise SearchExhausted(f"no mutual schedule for {name} in {max_iters} candidates", iterations=max_iters)
