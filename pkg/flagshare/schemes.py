"""
Shipped syndrome-extraction schemes for the catalog codes.

Key Features:
    - flag: one standard flagged circuit per generator (weight-2 generators
      are measured unflagged)
    - parallel: shared-flag and mutual-flag parallel circuits per code
    - unflagged: bare extraction of every generator
    - ed-parallel: all generators of each type under one shared flag
    - Ex-Rec CNOT circuit and its location census
    - Certified-scheme registry consulted before simulations

Note:
    The rm1513 shared-flag orders are searched once per process with a fixed
    seed. The steane713 mutual schedules are shipped; `search` can look for
    others.
"""

import logging
from functools import lru_cache
from typing import Dict, List, Tuple

from .circuit import (Circuit, LocationCensus, MutualMember, MutualSchedule, Scheme, build_flagged,
                      build_mutual_part, build_parallel_422, build_parallel_unflagged, build_sequence,
                      build_shared_flag, build_unflagged, census, place_side_by_side)
from .codes import CssCode, catalog
from .decode import Procedure
from .errors import ConfigError
from .ftcheck import Certificate, algorithm2_search, certify, ed_parallel_all
from .protocol import transversal_gate

# Initialize logger
logger = logging.getLogger(__name__)

DEFAULT_SEED = 0
SCHEME_NAMES = ("flag", "parallel", "unflagged", "ed-parallel")

# Data orders of the shor913 shared-flag part, 0-based.
SHOR_PART_B = (("g7", (0, 2, 4, 3, 1, 5)), ("g8", (6, 8, 4, 7, 5, 3)))
# Support order would give the X4X5X6 and X7X8X9 hooks one syndrome.
FLAG_ORDERS = {"shor913": dict(SHOR_PART_B)}
RM_GROUPS = (("g1", "g6", "g10"), ("g2", "g5", "g8"), ("g3", "g7"), ("g4", "g9"), ("g11", "g12", "g13", "g14"))
STEANE_PARTS = (("g1", ("g2", "g3")), ("g4", ("g5", "g6")))

# Mutual-flag schedules of the steane713 parts: member data orders (0-based),
# then the listing. Each member list starts with the hub.
STEANE_ORDERS = (("g1", (0, 2, 6, 4)), ("g2", (5, 1, 2, 6)), ("g3", (5, 3, 4, 6)),
                 ("g4", (0, 2, 6, 4)), ("g5", (5, 1, 2, 6)), ("g6", (5, 3, 4, 6)))
_STEANE_BODY = ((1, 5), (2, 5), (0, 0), (1, 1), (2, 3), (1, 2), (2, 4),
                (0, 2), (0, 6), (1, 6), (2, 6), (0, 4))
STEANE_EVENTS = {
    "g1": ((0, -2), (0, -3)) + _STEANE_BODY,
    "g4": ((1, -1), (2, -1)) + _STEANE_BODY,
}

PROCEDURES: Dict[str, Tuple[Procedure, ...]] = {
    "flag": (Procedure.ALG1, Procedure.ALG3, Procedure.ALG4, Procedure.ALG4_COMPLETE, Procedure.DETECT),
    "parallel": (Procedure.ALG1, Procedure.ALG3, Procedure.ALG4, Procedure.ALG4_COMPLETE, Procedure.DETECT),
    "unflagged": (Procedure.ALG1, Procedure.DETECT),
    "ed-parallel": (Procedure.DETECT,),
}


def build_followups(code: CssCode) -> Dict[str, Tuple[Circuit, ...]]:
    """Unflagged extraction of every generator, grouped as X, Z and complete."""
    circuits = [build_unflagged(g, name) for name, g in zip(code.generator_names, code.generators)]
    return {
        "X": tuple(circuits[i] for i in code.x_indices),
        "Z": tuple(circuits[i] for i in code.z_indices),
        "complete": tuple(circuits),
    }


def _gadget(name: str, g, flag_tag: str, order=None) -> Circuit:
    if g.weight >= 3:
        return build_flagged(g, name, order=order, flag_tag=flag_tag)
    return build_unflagged(g, name)


def flag_scheme(code: CssCode) -> Scheme:
    orders = FLAG_ORDERS.get(code.name, {})
    gadgets = tuple(
        _gadget(name, g, f"f{i + 1}", orders.get(name))
        for i, (name, g) in enumerate(zip(code.generator_names, code.generators))
    )
    return Scheme(code, "flag", gadgets, build_followups(code), detection=code.d < 3)


def unflagged_scheme(code: CssCode) -> Scheme:
    gadgets = tuple(build_unflagged(g, name) for name, g in zip(code.generator_names, code.generators))
    return Scheme(code, "unflagged", gadgets, build_followups(code), detection=code.d < 3)


def ed_parallel_scheme(code: CssCode) -> Scheme:
    gadgets = (ed_parallel_all(code, "X", "f1"), ed_parallel_all(code, "Z", "f2"))
    return Scheme(code, "ed-parallel", gadgets, build_followups(code), detection=True)


def _shor_parallel(code: CssCode) -> Tuple[Circuit, ...]:
    pairs = [(code.generator_names[i], code.generators[i], None) for i in code.z_indices]
    part_a = build_parallel_unflagged(pairs, name="parallel-z-pairs")
    group = [(tag, code.generator(tag), order) for tag, order in SHOR_PART_B]
    part_b = build_shared_flag(group, name="shared-g7-g8", flag_tag="f1")
    return part_b, part_a


def _rm_parallel(code: CssCode, seed: int) -> Tuple[Circuit, ...]:
    gadgets: List[Circuit] = []
    for k, group in enumerate(RM_GROUPS, start=1):
        result = algorithm2_search(group, code, seed=seed, flag_tag=f"f{k}")
        gadgets.append(result.circuit)
    # X-type group first
    return (gadgets[-1],) + tuple(gadgets[:-1])


def steane_schedule(code: CssCode, hub: str) -> MutualSchedule:
    """The shipped mutual-flag schedule of the part around hub."""
    spokes = dict(STEANE_PARTS)[hub]
    orders = dict(STEANE_ORDERS)
    members = tuple(MutualMember(tag, code.generator(tag), orders[tag]) for tag in (hub,) + spokes)
    return MutualSchedule(members, STEANE_EVENTS[hub])


def _steane_parallel(code: CssCode) -> Tuple[Circuit, ...]:
    return tuple(build_mutual_part(steane_schedule(code, hub), name=f"mutual-{hub}") for hub, _ in STEANE_PARTS)


def parallel_scheme(code: CssCode, seed: int = DEFAULT_SEED) -> Scheme:
    """
    The parallel scheme of a catalog code.

    Raises:
        ConfigError: If no parallel construction exists for the code
    """
    if code.name == "422":
        return Scheme(code, "parallel", (build_parallel_422(),), build_followups(code), detection=True)
    if code.name == "shor913":
        gadgets = _shor_parallel(code)
    elif code.name == "rm1513":
        gadgets = _rm_parallel(code, seed)
    elif code.name == "steane713":
        gadgets = _steane_parallel(code)
    else:
        raise ConfigError(f"no parallel scheme for {code.name}")
    return Scheme(code, "parallel", gadgets, build_followups(code))


@lru_cache(maxsize=None)
def build_scheme(code_name: str, scheme_name: str, seed: int = DEFAULT_SEED) -> Scheme:
    """
    Build (once per process) a shipped scheme.

    Raises:
        UnknownCodeError: If the code is not in the catalog
        ConfigError: If the scheme name is unknown or unavailable for the code
    """
    code = catalog(code_name)
    logger.debug(f"Building scheme {code_name}/{scheme_name}")
    if scheme_name == "flag":
        return flag_scheme(code)
    if scheme_name == "parallel":
        return parallel_scheme(code, seed)
    if scheme_name == "unflagged":
        return unflagged_scheme(code)
    if scheme_name == "ed-parallel":
        return ed_parallel_scheme(code)
    raise ConfigError(f"unknown scheme {scheme_name!r}; choose one of {', '.join(SCHEME_NAMES)}")


def check_procedure(scheme: Scheme, procedure: Procedure) -> None:
    """
    Raises:
        ConfigError: If the procedure cannot run on the scheme
    """
    if procedure not in PROCEDURES[scheme.name]:
        raise ConfigError(f"{procedure.value} is not available for the {scheme.name} scheme")
    if scheme.detection and procedure is not Procedure.DETECT:
        raise ConfigError(f"{scheme.code.name}/{scheme.name} is an error-detection scheme; use --mode detect")


@lru_cache(maxsize=None)
def certified(code_name: str, scheme_name: str, procedure: Procedure, seed: int = DEFAULT_SEED) -> Certificate:
    """Certificate of a shipped scheme, computed once per process."""
    scheme = build_scheme(code_name, scheme_name, seed)
    check_procedure(scheme, procedure)
    return certify(scheme, procedure)


def build_exrec_cnot(scheme: Scheme) -> Circuit:
    """
    The ex-Rec CNOT as one circuit: both blocks' EC side by side, the
    transversal CNOT, then both blocks' EC again.
    """
    n = scheme.code.n
    block = build_sequence(f"{scheme.name}-ec", scheme.gadgets)
    ec, _ = place_side_by_side(f"{scheme.name}-ec-pair", [block, block])
    cnot = transversal_gate(n).steps[0]
    steps = ec.steps + (cnot,) + ec.steps
    return Circuit(f"exrec-{scheme.code.name}-{scheme.name}", ec.qubits, steps)


def exrec_census(scheme: Scheme, include_conditional_unflagged: bool = False) -> LocationCensus:
    """
    Locations of the ex-Rec CNOT.

    With include_conditional_unflagged, each of the four EC blocks also
    counts two complete unflagged extractions.
    """
    total = census(build_exrec_cnot(scheme))
    if include_conditional_unflagged:
        total = total + scheme.followup_census("complete").scaled(8)
    return total
