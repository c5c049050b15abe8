"""
CSS code model and the built-in code catalog.

This module holds the stabilizer codes the toolkit works with: their ordered
generator lists, logical operators found by exhaustive search, stabilizer-group
membership and the classification of residual data errors.

Key Features:
    - CssCode value type with generator names (g1, g2, ...) in catalog order
    - Catalog of the [[4,2,2]], [[7,1,3]], [[9,1,3]] and [[15,1,3]] codes
    - Logical operator discovery with distance verification
    - Residual classification (trivial / stabilizer-equivalent / logical)
    - Minimum-weight CSS decoding used as LOOKUP(0)
    - JSON code definitions for codes beyond the catalog

Dependencies:
    - galois (through flagshare.gf2): GF(2) row reduction for group membership

Note:
    Generator order is part of a code's identity. Syndrome bit positions,
    lookup keys and every exported table follow it.
"""

import json
import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property, lru_cache
from itertools import combinations
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import CodeDefinitionError, UnknownCodeError
from .gf2 import BinarySpan, rank
from .pauli import PauliOperator, Syndrome, syndrome_of

# Initialize logger
logger = logging.getLogger(__name__)

LOOKUP_MAX_WEIGHT = 2


class ResidualClass(str, Enum):
    """Verdict of classify_residual."""

    TRIVIAL = "trivial"
    STABILIZER = "stabilizer-equivalent"
    LOGICAL = "logical"
    DETECTABLE = "detectable"


def _parity(mask: int) -> int:
    return bin(mask).count("1") & 1


@dataclass(frozen=True)
class CssCode:
    """
    An [[n,k,d]] CSS code.

    Attributes:
        name (str): Catalog name
        n (int): Physical qubits
        k (int): Logical qubits
        d (int): Distance (verified by find_logicals)
        generators (Tuple[PauliOperator, ...]): Pure-type generators in catalog order
        generator_names (Tuple[str, ...]): Names of the generators, default g1..g(n-k)
        logical_x (Tuple[PauliOperator, ...]): X-type logical representatives
        logical_z (Tuple[PauliOperator, ...]): Z-type logical representatives,
            logical_z[j] anticommuting only with logical_x[j]
    """

    name: str
    n: int
    k: int
    d: int
    generators: Tuple[PauliOperator, ...]
    generator_names: Tuple[str, ...] = ()
    logical_x: Tuple[PauliOperator, ...] = field(default=(), compare=False)
    logical_z: Tuple[PauliOperator, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if not self.generator_names:
            object.__setattr__(self, "generator_names",
                               tuple(f"g{i + 1}" for i in range(len(self.generators))))
        if len(self.generator_names) != len(self.generators):
            raise CodeDefinitionError(f"{self.name}: generator names do not match generators")
        if len(set(self.generator_names)) != len(self.generator_names):
            raise CodeDefinitionError(f"{self.name}: duplicate generator names")
        for name, g in zip(self.generator_names, self.generators):
            if g.n != self.n:
                raise CodeDefinitionError(f"{self.name}: {name} acts on {g.n} qubits, expected {self.n}")
            if not (g.is_x_type or g.is_z_type):
                raise CodeDefinitionError(f"{self.name}: {name} = {g} is not a pure X or Z operator")
        for (na, a), (nb, b) in combinations(zip(self.generator_names, self.generators), 2):
            if not a.commutes(b):
                raise CodeDefinitionError(f"{self.name}: {na} and {nb} anticommute")
        x_masks = [g.x for g in self.x_gens]
        z_masks = [g.z for g in self.z_gens]
        if rank(x_masks, self.n) != len(x_masks) or rank(z_masks, self.n) != len(z_masks):
            raise CodeDefinitionError(f"{self.name}: generators are not independent")
        if len(self.generators) != self.n - self.k:
            raise CodeDefinitionError(
                f"{self.name}: {len(self.generators)} generators but n - k = {self.n - self.k}"
            )

    @property
    def x_indices(self) -> Tuple[int, ...]:
        return tuple(i for i, g in enumerate(self.generators) if g.is_x_type)

    @property
    def z_indices(self) -> Tuple[int, ...]:
        return tuple(i for i, g in enumerate(self.generators) if g.is_z_type)

    @property
    def x_gens(self) -> Tuple[PauliOperator, ...]:
        return tuple(self.generators[i] for i in self.x_indices)

    @property
    def z_gens(self) -> Tuple[PauliOperator, ...]:
        return tuple(self.generators[i] for i in self.z_indices)

    @property
    def x(self) -> int:
        """Number of X-type generators."""
        return len(self.x_indices)

    @property
    def z(self) -> int:
        """Number of Z-type generators."""
        return len(self.z_indices)

    @property
    def has_logicals(self) -> bool:
        return len(self.logical_x) == self.k and len(self.logical_z) == self.k

    def index_of(self, name: str) -> int:
        try:
            return self.generator_names.index(name)
        except ValueError:
            raise UnknownCodeError(f"{self.name} has no generator {name!r}") from None

    def generator(self, name: str) -> PauliOperator:
        return self.generators[self.index_of(name)]

    @cached_property
    def x_span(self) -> BinarySpan:
        return BinarySpan([g.x for g in self.x_gens], self.n)

    @cached_property
    def z_span(self) -> BinarySpan:
        return BinarySpan([g.z for g in self.z_gens], self.n)

    def syndrome(self, e: PauliOperator) -> Syndrome:
        return syndrome_of(e, self.generators)

    def in_stabilizer_group(self, e: PauliOperator) -> bool:
        """Phase-free membership in the stabilizer group."""
        return e.x in self.x_span and e.z in self.z_span

    def equivalent(self, a: PauliOperator, b: PauliOperator) -> bool:
        """True iff a and b differ by a stabilizer."""
        return self.in_stabilizer_group(a * b)

    @cached_property
    def _x_error_table(self) -> Dict[Tuple[int, ...], int]:
        return _min_weight_table(self.n, [g.z for g in self.z_gens], LOOKUP_MAX_WEIGHT)

    @cached_property
    def _z_error_table(self) -> Dict[Tuple[int, ...], int]:
        return _min_weight_table(self.n, [g.x for g in self.x_gens], LOOKUP_MAX_WEIGHT)

    def decode_x_errors(self, z_bits: Sequence[int]) -> Optional[PauliOperator]:
        """Minimum-weight X error for the Z-generator bits, or None beyond the table weight."""
        key = tuple(z_bits)
        if not any(key):
            return PauliOperator.identity(self.n)
        mask = self._x_error_table.get(key)
        return None if mask is None else PauliOperator(self.n, mask, 0)

    def decode_z_errors(self, x_bits: Sequence[int]) -> Optional[PauliOperator]:
        """Minimum-weight Z error for the X-generator bits, or None beyond the table weight."""
        key = tuple(x_bits)
        if not any(key):
            return PauliOperator.identity(self.n)
        mask = self._z_error_table.get(key)
        return None if mask is None else PauliOperator(self.n, 0, mask)


def _min_weight_table(n: int, checks: List[int], max_weight: int) -> Dict[Tuple[int, ...], int]:
    table: Dict[Tuple[int, ...], int] = {}
    for w in range(1, max_weight + 1):
        for qubits in combinations(range(n), w):
            mask = sum(1 << q for q in qubits)
            key = tuple(_parity(mask & c) for c in checks)
            table.setdefault(key, mask)
    return table


def min_weight_correction(syndrome: Syndrome, code: CssCode) -> Tuple[PauliOperator, bool]:
    """
    LOOKUP(0): decode each error type independently by minimum weight.

    Args:
        syndrome (Syndrome): Bits for all generators in code order
        code (CssCode): The code

    Returns:
        Tuple[PauliOperator, bool]: Correction and whether both parts were found.
            A part missing from the table contributes identity.
    """
    bits = syndrome.bits
    x_err = code.decode_x_errors([bits[i] for i in code.z_indices])
    z_err = code.decode_z_errors([bits[i] for i in code.x_indices])
    correction = PauliOperator.identity(code.n)
    for part in (x_err, z_err):
        if part is not None:
            correction = correction * part
    return correction, x_err is not None and z_err is not None


def classify_residual(e: PauliOperator, code: CssCode) -> ResidualClass:
    """
    Classify a data-qubit error against the code.

    Returns:
        ResidualClass: TRIVIAL for identity, DETECTABLE for a non-zero syndrome,
            STABILIZER inside the stabilizer group, LOGICAL otherwise
    """
    if e.is_identity:
        return ResidualClass.TRIVIAL
    if not code.syndrome(e).is_zero:
        return ResidualClass.DETECTABLE
    if code.in_stabilizer_group(e):
        return ResidualClass.STABILIZER
    return ResidualClass.LOGICAL


def _search_logicals(code: CssCode, kind: str) -> List[int]:
    """Independent pure-type logical masks in increasing weight, k of them."""
    checks = [g.z for g in code.z_gens] if kind == "X" else [g.x for g in code.x_gens]
    span = code.x_span if kind == "X" else code.z_span
    found: List[int] = []
    for w in range(1, code.n + 1):
        for qubits in combinations(range(code.n), w):
            mask = sum(1 << q for q in qubits)
            if any(_parity(mask & c) for c in checks) or mask in span:
                continue
            found.append(mask)
            span = span.extended(mask)
            if len(found) == code.k:
                return found
    raise CodeDefinitionError(f"{code.name}: found {len(found)} of {code.k} {kind} logical operators")


def find_logicals(code: CssCode) -> CssCode:
    """
    Fill logical representatives and verify the declared distance.

    X and Z logical candidates are enumerated by increasing weight, so the
    first candidate of each type has the minimum weight over its cosets and
    the distance is the smaller of the two. The two lists are then paired so
    that logical_x[j] anticommutes with logical_z[j] only.

    Raises:
        CodeDefinitionError: If k independent pairs do not exist or the
            distance differs from the declared one
    """
    logger.debug(f"Searching logical operators of {code.name}")
    xs = _search_logicals(code, "X")
    zs = _search_logicals(code, "Z")
    distance = min(bin(xs[0]).count("1"), bin(zs[0]).count("1"))
    for j in range(code.k):
        partner = next((i for i in range(j, code.k) if _parity(xs[j] & zs[i])), None)
        if partner is None:
            raise CodeDefinitionError(f"{code.name}: logical operators cannot be paired")
        zs[j], zs[partner] = zs[partner], zs[j]
        for i in range(j + 1, code.k):
            if _parity(xs[i] & zs[j]):
                xs[i] ^= xs[j]
            if _parity(zs[i] & xs[j]):
                zs[i] ^= zs[j]
    if code.d and code.d != distance:
        raise CodeDefinitionError(f"{code.name}: declared d = {code.d}, found {distance}")
    logger.info(f"{code.name}: [[{code.n},{code.k},{distance}]] logical operators found")
    return replace(
        code,
        d=distance,
        logical_x=tuple(PauliOperator(code.n, m, 0) for m in xs),
        logical_z=tuple(PauliOperator(code.n, 0, m) for m in zs),
    )


_CATALOG_DEFINITIONS: Dict[str, Tuple[int, int, int, Tuple[str, ...]]] = {
    "422": (4, 2, 2, ("X1 X2 X3 X4", "Z1 Z2 Z3 Z4")),
    "steane713": (7, 1, 3, (
        "X1 X3 X5 X7", "Z2 Z3 Z6 Z7", "Z4 Z5 Z6 Z7",
        "Z1 Z3 Z5 Z7", "X2 X3 X6 X7", "X4 X5 X6 X7",
    )),
    "shor913": (9, 1, 3, (
        "Z1 Z2", "Z2 Z3", "Z4 Z5", "Z5 Z6", "Z7 Z8", "Z8 Z9",
        "X1 X2 X3 X4 X5 X6", "X4 X5 X6 X7 X8 X9",
    )),
    "rm1513": (15, 1, 3, (
        "Z1 Z3 Z5 Z7 Z9 Z11 Z13 Z15",
        "Z2 Z3 Z6 Z7 Z10 Z11 Z14 Z15",
        "Z4 Z5 Z6 Z7 Z12 Z13 Z14 Z15",
        "Z8 Z9 Z10 Z11 Z12 Z13 Z14 Z15",
        "Z3 Z7 Z11 Z15",
        "Z5 Z7 Z13 Z15",
        "Z6 Z7 Z14 Z15",
        "Z10 Z11 Z14 Z15",
        "Z12 Z13 Z14 Z15",
        "Z9 Z11 Z13 Z15",
        "X1 X3 X5 X7 X9 X11 X13 X15",
        "X2 X3 X6 X7 X10 X11 X14 X15",
        "X4 X5 X6 X7 X12 X13 X14 X15",
        "X8 X9 X10 X11 X12 X13 X14 X15",
    )),
}

CATALOG_NAMES = tuple(_CATALOG_DEFINITIONS)


@lru_cache(maxsize=None)
def catalog(name: str) -> CssCode:
    """
    Return a catalog code with its logical operators.

    Args:
        name (str): One of 422, steane713, shor913, rm1513

    Raises:
        UnknownCodeError: If the name is not in the catalog
    """
    try:
        n, k, d, labels = _CATALOG_DEFINITIONS[name]
    except KeyError:
        raise UnknownCodeError(
            f"unknown code {name!r}; choose one of {', '.join(CATALOG_NAMES)}"
        ) from None
    generators = tuple(PauliOperator.from_label(label, n) for label in labels)
    return find_logicals(CssCode(name, n, k, d, generators))


def load_code(path: str) -> CssCode:
    """
    Load a code from a JSON definition.

    The file holds ``name``, ``n``, ``k``, ``d`` and ``generators`` (labels in
    index notation), optionally ``generator_names``.

    Raises:
        CodeDefinitionError: If keys are missing or the code is inconsistent
    """
    try:
        with open(Path(path), "r", encoding="utf-8") as f:
            data = json.load(f)
        n = int(data["n"])
        generators = tuple(PauliOperator.from_label(label, n) for label in data["generators"])
        code = CssCode(
            str(data["name"]), n, int(data["k"]), int(data.get("d", 0)),
            generators, tuple(data.get("generator_names", ())),
        )
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, CodeDefinitionError):
            raise
        logger.error(f"Invalid code definition in {path}: {str(e)}")
        raise CodeDefinitionError(f"invalid code definition in {path}: {e}") from e
    logger.info(f"Loaded code {code.name} from {path}")
    return find_logicals(code)
