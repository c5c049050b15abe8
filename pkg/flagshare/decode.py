"""
Decoding procedures for flagged syndrome extraction.

A decoder walks the main gadgets of a scheme through a round driver, reads
syndrome and flag bits, asks for unflagged follow-up extractions when a flag
or a syndrome fires, and applies a correction from the lookup tables.

Key Features:
    - alg1: one gadget at a time, first flag or syndrome wins
    - alg3: X side first, a raised flag only triggers the opposite-type
      extraction and ends the round
    - alg4 and alg4-complete: both sides always run, each with its own
      flag and syndrome branches
    - detect: post-selection on any non-zero bit
    - Lookup tables keyed by (gadget, flag pattern, follow-up bits)

Note:
    Gadgets built with mutual flags have no flag qubits; every ancilla outcome
    doubles as a flag, so the whole outcome pattern selects the table. alg3
    and alg4 run such gadgets before either side and answer the first one that
    fires with a complete extraction.
    A follow-up of Z-type generators corrects X errors and vice versa; a
    complete extraction corrects both.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

from .circuit import Circuit, Scheme
from .codes import CssCode
from .errors import CircuitError, ConfigError
from .pauli import PauliOperator, Syndrome
from .propagate import FrameResult

# Initialize logger
logger = logging.getLogger(__name__)

FlagKey = Tuple[int, Tuple[int, ...]]
OPPOSITE = {"X": "Z", "Z": "X"}


class Mode(str, Enum):
    DETECT = "detect"
    CORRECT = "correct"


class Procedure(str, Enum):
    ALG1 = "alg1"
    ALG3 = "alg3"
    ALG4 = "alg4"
    ALG4_COMPLETE = "alg4-complete"
    DETECT = "detect"


class Action(str, Enum):
    NO_OP = "no-op"
    CORRECTION = "correction"
    DISCARD = "discard"


def flag_pattern(c: Circuit, result: FrameResult) -> Tuple[int, ...]:
    """Bits that act as flags: all outcomes for a mutual-flag gadget, flag outcomes otherwise."""
    return result.m if c.mutual_flags else result.f


def project(e: PauliOperator, basis: str) -> PauliOperator:
    """Part of e a follow-up extraction of this basis can see and correct."""
    if basis == "Z":
        return e.x_part()
    if basis == "X":
        return e.z_part()
    return e


class LookupTables:
    """
    LOOKUP(0) and LOOKUP(f) for one scheme and procedure.

    Attributes:
        code (CssCode): The code
        entries (Dict): (flag key, follow-up basis, bits) -> correction
    """

    def __init__(self, code: CssCode,
                 entries: Optional[Mapping[Tuple[FlagKey, str, Tuple[int, ...]], PauliOperator]] = None) -> None:
        self.code = code
        self.entries: Dict[Tuple[FlagKey, str, Tuple[int, ...]], PauliOperator] = dict(entries or {})
        self.misses = 0

    def lookup0(self, basis: str, syndrome: Syndrome) -> PauliOperator:
        """Minimum-weight correction of the error type the follow-up basis detects."""
        code = self.code
        if basis == "Z":
            correction = code.decode_x_errors(syndrome.bits)
        elif basis == "X":
            correction = code.decode_z_errors(syndrome.bits)
        else:
            x_err = code.decode_x_errors([syndrome.bits[i] for i in code.z_indices])
            z_err = code.decode_z_errors([syndrome.bits[i] for i in code.x_indices])
            correction = None if x_err is None or z_err is None else x_err * z_err
        if correction is None:
            self.misses += 1
            logger.debug(f"LOOKUP(0) miss for {basis} syndrome {syndrome}, no correction")
            return PauliOperator.identity(code.n)
        return correction

    def lookup(self, key: FlagKey, basis: str, syndrome: Syndrome) -> PauliOperator:
        """LOOKUP(f); a key outside the certified set falls back to LOOKUP(0)."""
        correction = self.entries.get((key, basis, syndrome.bits))
        if correction is None:
            if syndrome.is_zero:
                return PauliOperator.identity(self.code.n)
            self.misses += 1
            logger.debug(f"LOOKUP{key} miss for {basis} syndrome {syndrome}, using LOOKUP(0)")
            return self.lookup0(basis, syndrome)
        return correction

    def __len__(self) -> int:
        return len(self.entries)

    def as_rows(self) -> List[Dict[str, str]]:
        """Flat rows for CSV or JSON export."""
        return [
            {
                "gadget": str(key[0]),
                "flags": "".join(str(b) for b in key[1]),
                "basis": basis,
                "syndrome": "".join(str(b) for b in bits),
                "correction": correction.label(),
            }
            for (key, basis, bits), correction in sorted(self.entries.items(), key=lambda item: str(item[0]))
        ]


class RecordingTables(LookupTables):
    """
    Tables that answer LOOKUP(f) with the true residual of the running frame
    and remember every answer, so flag_lookup can check that each key is
    consistent before freezing the table.
    """

    def __init__(self, code: CssCode) -> None:
        super().__init__(code)
        self.frame_of: Optional[Callable[[], PauliOperator]] = None
        self.label = ""
        self.records: Dict[Tuple[FlagKey, str, Tuple[int, ...]], List[Tuple[str, PauliOperator]]] = {}

    def attach(self, frame_of: Callable[[], PauliOperator], label: str) -> None:
        self.frame_of = frame_of
        self.label = label

    def lookup(self, key: FlagKey, basis: str, syndrome: Syndrome) -> PauliOperator:
        if self.frame_of is None:
            raise CircuitError("recording tables used without an attached driver")
        correction = project(self.frame_of(), basis)
        self.records.setdefault((key, basis, syndrome.bits), []).append((self.label, correction))
        return correction


@dataclass(frozen=True)
class DecoderConfig:
    """
    Attributes:
        mode (Mode): detect or correct
        procedure (Procedure): Decoding procedure
        tables (Optional[LookupTables]): Required in correct mode
        cycle_parity (int): 0 treats X-type gadgets first, 1 Z-type first
    """

    mode: Mode
    procedure: Procedure
    tables: Optional[LookupTables] = None
    cycle_parity: int = 0

    def __post_init__(self) -> None:
        if self.mode is Mode.DETECT and self.procedure is not Procedure.DETECT:
            raise ConfigError(f"detect mode uses the detect procedure, got {self.procedure.value}")
        if self.mode is Mode.CORRECT and self.procedure is Procedure.DETECT:
            raise ConfigError("the detect procedure needs detect mode")
        if self.mode is Mode.CORRECT and self.tables is None:
            raise ConfigError("correct mode needs lookup tables")

    def flipped(self) -> "DecoderConfig":
        return DecoderConfig(self.mode, self.procedure, self.tables, 1 - self.cycle_parity)


@dataclass(frozen=True)
class DecodeOutcome:
    """
    Result of one decoding round.

    Attributes:
        action (Action): no-op, correction or discard
        correction (PauliOperator): Product of all corrections applied
        extractions (Tuple[str, ...]): Follow-up bases run, in order
        trace (Tuple[Dict[str, Any], ...]): Branches taken with their bits
    """

    action: Action
    correction: PauliOperator
    extractions: Tuple[str, ...] = ()
    trace: Tuple[Dict[str, Any], ...] = field(default=(), compare=False)

    @property
    def followups_used(self) -> str:
        """none, X-only, Z-only or complete."""
        kinds = set(self.extractions)
        if not kinds:
            return "none"
        if "complete" in kinds or kinds == {"X", "Z"}:
            return "complete"
        return f"{kinds.pop()}-only"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "action": self.action.value,
            "correction": self.correction.label(),
            "followups_used": self.followups_used,
            "trace": list(self.trace),
        }


def _bits(values: Tuple[int, ...]) -> str:
    return "".join(str(b) for b in values)


class _Session:
    """Bookkeeping shared by the procedures for one round."""

    def __init__(self, driver: Any, config: DecoderConfig) -> None:
        self.driver = driver
        self.config = config
        self.scheme: Scheme = driver.scheme
        self.correction = PauliOperator.identity(self.scheme.code.n)
        self.extractions: List[str] = []
        self.trace: List[Dict[str, Any]] = []

    def measure(self, i: int) -> Tuple[FrameResult, Tuple[int, ...]]:
        result = self.driver.measure(i)
        pattern = flag_pattern(self.scheme.gadgets[i], result)
        self.trace.append({"gadget": i, "m": _bits(result.m), "f": _bits(result.f)})
        return result, pattern

    def flag_branch(self, key: FlagKey, basis: str) -> None:
        syndrome = self.driver.extract(basis)
        correction = self.config.tables.lookup(key, basis, syndrome)
        self._apply("flag", basis, syndrome, correction, key)

    def syndrome_branch(self, basis: str) -> None:
        syndrome = self.driver.extract(basis)
        correction = self.config.tables.lookup0(basis, syndrome)
        self._apply("syndrome", basis, syndrome, correction, None)

    def _apply(self, branch: str, basis: str, syndrome: Syndrome,
               correction: PauliOperator, key: Optional[FlagKey]) -> None:
        self.extractions.append(basis)
        self.driver.apply(correction)
        self.correction = self.correction * correction
        entry = {"branch": branch, "basis": basis, "m_prime": str(syndrome), "correction": correction.label()}
        if key is not None:
            entry["key"] = f"{key[0]}:{_bits(key[1])}"
        self.trace.append(entry)

    def outcome(self) -> DecodeOutcome:
        action = Action.NO_OP if self.correction.is_identity and not self.extractions else Action.CORRECTION
        return DecodeOutcome(action, self.correction, tuple(self.extractions), tuple(self.trace))


def decode_alg1(driver: Any, config: DecoderConfig) -> DecodeOutcome:
    """
    Measure the gadgets in order and stop at the first one that fires.

    A raised flag (flag priority when a syndrome bit fires too) triggers a
    complete unflagged extraction and LOOKUP(f); a syndrome bit triggers a
    complete extraction and LOOKUP(0). A clean pass is a no-op.
    """
    session = _Session(driver, config)
    for i in range(len(session.scheme.gadgets)):
        result, pattern = session.measure(i)
        if any(pattern):
            session.flag_branch((i, pattern), "complete")
            break
        if any(result.m):
            session.syndrome_branch("complete")
            break
    return session.outcome()


def _run_mixed(session: _Session) -> bool:
    """Mutual-flag gadgets in order; the first one that fires gets a complete extraction."""
    for i in session.scheme.side("mixed"):
        result, pattern = session.measure(i)
        if any(pattern):
            session.flag_branch((i, pattern), "complete")
            return True
    return False


def _run_side(session: _Session, basis: str) -> Tuple[Optional[FlagKey], bool]:
    flagged: Optional[FlagKey] = None
    fired = False
    for i in session.scheme.side(basis):
        result, pattern = session.measure(i)
        if flagged is None and any(pattern):
            flagged = (i, pattern)
        fired = fired or any(result.m)
    return flagged, fired


def _order(config: DecoderConfig) -> Tuple[str, str]:
    return ("X", "Z") if config.cycle_parity == 0 else ("Z", "X")


def decode_alg3(driver: Any, config: DecoderConfig) -> DecodeOutcome:
    """
    Treat one stabilizer type, then the other only if the first was quiet.

    First side flagged: opposite-type extraction and LOOKUP(f), stop.
    First side syndrome: complete extraction and LOOKUP(0), stop.
    Second side flagged: opposite-type extraction and LOOKUP(f).
    Second side syndrome: same-type extraction and LOOKUP(0).
    """
    session = _Session(driver, config)
    if _run_mixed(session):
        return session.outcome()
    first, second = _order(config)
    flagged, fired = _run_side(session, first)
    if flagged is not None:
        session.flag_branch(flagged, OPPOSITE[first])
        return session.outcome()
    if fired:
        session.syndrome_branch("complete")
        return session.outcome()
    flagged, fired = _run_side(session, second)
    if flagged is not None:
        session.flag_branch(flagged, OPPOSITE[second])
    elif fired:
        session.syndrome_branch(second)
    return session.outcome()


def decode_alg4(driver: Any, config: DecoderConfig, complete_variant: bool = False) -> DecodeOutcome:
    """
    Symmetric treatment: both sides always run, flag branch first, then the
    syndrome branch with a same-type re-extraction (complete extraction in
    the complete variant).
    """
    session = _Session(driver, config)
    if _run_mixed(session):
        return session.outcome()
    for basis in _order(config):
        flagged, fired = _run_side(session, basis)
        if flagged is not None:
            session.flag_branch(flagged, OPPOSITE[basis])
        elif fired:
            session.syndrome_branch("complete" if complete_variant else basis)
    return session.outcome()


def decode_detect(driver: Any) -> DecodeOutcome:
    """Run every gadget; discard on any non-zero syndrome or flag bit."""
    trace = []
    fired = False
    for i in range(len(driver.scheme.gadgets)):
        result = driver.measure(i)
        trace.append({"gadget": i, "m": _bits(result.m), "f": _bits(result.f)})
        fired = fired or result.any_fired
    action = Action.DISCARD if fired else Action.NO_OP
    return DecodeOutcome(action, PauliOperator.identity(driver.scheme.code.n), (), tuple(trace))


def decode(driver: Any, config: DecoderConfig) -> DecodeOutcome:
    """Dispatch on config.procedure."""
    procedure = config.procedure
    if procedure is Procedure.DETECT:
        return decode_detect(driver)
    if procedure is Procedure.ALG1:
        return decode_alg1(driver, config)
    if procedure is Procedure.ALG3:
        return decode_alg3(driver, config)
    return decode_alg4(driver, config, complete_variant=procedure is Procedure.ALG4_COMPLETE)
