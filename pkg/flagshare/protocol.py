"""
Running EC rounds on a tracked Pauli frame.

The round driver is the only thing a decoder talks to: it runs main gadgets
and follow-up extractions on demand, takes their faults from a fault source
and keeps the data frame up to date. Exhaustive certification and Monte Carlo
sampling differ only in the fault source they plug in.

Key Features:
    - RoundDriver with named fault slots per circuit execution
    - Noiseless ideal round used to judge the final state
    - Memory rounds and the ex-Rec CNOT (leading EC, transversal CNOT, trailing EC)
"""

import logging
import weakref
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .circuit import Circuit, Scheme, build_transversal_cnot
from .codes import CssCode, ResidualClass, classify_residual, min_weight_correction
from .decode import Action, DecodeOutcome, DecoderConfig, Mode, decode
from .faults import FaultSource, NoFaults
from .pauli import PauliOperator, Syndrome
from .propagate import FrameResult, propagate

# Initialize logger
logger = logging.getLogger(__name__)

# Fault-free results of circuits run on a clean frame, keyed by id and
# dropped when the circuit is collected.
_QUIET: Dict[int, FrameResult] = {}


def _quiet(circuit: Circuit) -> FrameResult:
    cached = _QUIET.get(id(circuit))
    if cached is None:
        cached = propagate(circuit)
        _QUIET[id(circuit)] = cached
        weakref.finalize(circuit, _QUIET.pop, id(circuit), None)
    return cached


class RoundDriver:
    """
    Executes one EC round's circuits on demand.

    Slots are named ``{prefix}main{i}`` for gadget i and
    ``{prefix}follow-{basis}{k}-{j}`` for circuit j of the k-th follow-up
    extraction of a basis, so a fault source can address any execution.

    Attributes:
        scheme (Scheme): Scheme being run
        frame (PauliOperator): Current data error
        source (FaultSource): Supplies faults per slot
        prefix (str): Slot prefix (block name in an ex-Rec)
        runs (List[str]): Slots executed, in order
    """

    def __init__(self, scheme: Scheme, frame: Optional[PauliOperator] = None,
                 source: Optional[FaultSource] = None, prefix: str = "") -> None:
        self.scheme = scheme
        self.frame = frame if frame is not None else PauliOperator.identity(scheme.code.n)
        self.source = source if source is not None else NoFaults()
        self.prefix = prefix
        self.runs: List[str] = []
        self._extractions: Dict[str, int] = {}

    def _run(self, slot: str, circuit: Circuit) -> FrameResult:
        faults = self.source.faults_for(slot, circuit)
        if not faults and self.frame.is_identity:
            result = _quiet(circuit)
        else:
            result = propagate(circuit, faults, self.frame)
        self.frame = result.residual
        self.runs.append(slot)
        return result

    def measure(self, i: int) -> FrameResult:
        return self._run(f"{self.prefix}main{i}", self.scheme.gadgets[i])

    def extract(self, basis: str) -> Syndrome:
        """Run the unflagged follow-up of one basis ("X", "Z" or "complete")."""
        k = self._extractions.get(basis, 0)
        self._extractions[basis] = k + 1
        outcomes: Dict[str, int] = {}
        for j, circuit in enumerate(self.scheme.followups[basis]):
            result = self._run(f"{self.prefix}follow-{basis}{k}-{j}", circuit)
            outcomes.update(result.outcomes)
        names = self.scheme.code.generator_names
        return Syndrome(tuple(outcomes[names[g]] for g in self.scheme.generator_indices(basis)))

    def apply(self, correction: PauliOperator) -> None:
        self.frame = self.frame * correction


def ideal_round(code: CssCode, frame: PauliOperator) -> Tuple[PauliOperator, Syndrome]:
    """
    Noiseless complete extraction followed by LOOKUP(0).

    A fault-free extraction reports exactly the syndrome of the frame, so the
    circuits are not run.

    Returns:
        Tuple[PauliOperator, Syndrome]: Corrected frame and the syndrome read
    """
    syndrome = code.syndrome(frame)
    if syndrome.is_zero:
        return frame, syndrome
    correction, _ = min_weight_correction(syndrome, code)
    return frame * correction, syndrome


@dataclass(frozen=True)
class RoundResult:
    """
    Final judgement of a round (or ex-Rec) followed by an ideal round.

    Attributes:
        discarded (bool): Detection fired somewhere
        failed (bool): Accepted and logically wrong
        final (Tuple[PauliOperator, ...]): Final frame per block
        outcomes (Tuple[DecodeOutcome, ...]): Decoder results in execution order
    """

    discarded: bool
    failed: bool
    final: Tuple[PauliOperator, ...]
    outcomes: Tuple[DecodeOutcome, ...] = ()


def judge(code: CssCode, frame: PauliOperator, mode: Mode) -> Tuple[bool, bool, PauliOperator]:
    """
    Apply the ideal round and classify.

    Returns:
        Tuple[bool, bool, PauliOperator]: (detected, failed, final frame). In
            detect mode a non-zero ideal syndrome counts as detected. In correct
            mode a residual still outside the code space after LOOKUP(0) fails.
    """
    if mode is Mode.DETECT:
        if not code.syndrome(frame).is_zero:
            return True, False, frame
        return False, classify_residual(frame, code) is ResidualClass.LOGICAL, frame
    final, _ = ideal_round(code, frame)
    verdict = classify_residual(final, code)
    return False, verdict in (ResidualClass.LOGICAL, ResidualClass.DETECTABLE), final


def run_memory_round(scheme: Scheme, config: DecoderConfig, frame: Optional[PauliOperator] = None,
                     source: Optional[FaultSource] = None, prefix: str = "") -> Tuple[DecodeOutcome, PauliOperator]:
    """One decoding round; returns the decoder outcome and the frame after correction."""
    driver = RoundDriver(scheme, frame, source, prefix)
    outcome = decode(driver, config)
    return outcome, driver.frame


def run_memory(scheme: Scheme, config: DecoderConfig, source: Optional[FaultSource] = None,
               rounds: int = 1, frame: Optional[PauliOperator] = None) -> RoundResult:
    """
    Noisy rounds on one block, alternating X-first and Z-first between rounds,
    then the ideal round.
    """
    outcomes = []
    for r in range(rounds):
        outcome, frame = run_memory_round(scheme, config, frame, source, prefix=f"r{r}-")
        outcomes.append(outcome)
        if outcome.action is Action.DISCARD:
            return RoundResult(True, False, (frame,), tuple(outcomes))
        config = config.flipped()
    detected, failed, final = judge(scheme.code, frame, config.mode)
    return RoundResult(detected, failed, (final,), tuple(outcomes))


def run_exrec(scheme: Scheme, config: DecoderConfig, source: Optional[FaultSource] = None) -> RoundResult:
    """
    The ex-Rec of a transversal CNOT: leading EC on both blocks, a noisy
    transversal CNOT from block 1 to block 2, trailing EC on both blocks and
    an ideal round per block.

    Slots are prefixed ``L1-``, ``L2-`` (leading), ``T1-``, ``T2-`` (trailing)
    and ``cnot`` for the transversal gate.
    """
    code = scheme.code
    n = code.n
    source = source if source is not None else NoFaults()
    frames = [PauliOperator.identity(n), PauliOperator.identity(n)]
    outcomes = []
    for b in range(2):
        outcome, frames[b] = run_memory_round(scheme, config, frames[b], source, prefix=f"L{b + 1}-")
        outcomes.append(outcome)
        if outcome.action is Action.DISCARD:
            return RoundResult(True, False, tuple(frames), tuple(outcomes))
    gate = transversal_gate(n)
    joint = frames[0].embed(2 * n, range(n)) * frames[1].embed(2 * n, range(n, 2 * n))
    joint = propagate(gate, source.faults_for("cnot", gate), joint).residual
    frames = [joint.restrict(range(n)), joint.restrict(range(n, 2 * n))]
    for b in range(2):
        outcome, frames[b] = run_memory_round(scheme, config, frames[b], source, prefix=f"T{b + 1}-")
        outcomes.append(outcome)
        if outcome.action is Action.DISCARD:
            return RoundResult(True, False, tuple(frames), tuple(outcomes))
    detected = failed = False
    finals = []
    for frame in frames:
        d, f, final = judge(code, frame, config.mode)
        detected, failed = detected or d, failed or f
        finals.append(final)
    return RoundResult(detected, failed and not detected, tuple(finals), tuple(outcomes))


@lru_cache(maxsize=None)
def transversal_gate(n: int) -> Circuit:
    return build_transversal_cnot(n)
