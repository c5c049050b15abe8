"""
Binary-symplectic Pauli algebra.

A Pauli operator on n qubits is stored phase-free as two bit masks packed into
Python integers: bit i of ``x`` (``z``) is the X (Z) component on qubit i, so a
Y on qubit i sets both. Integers have arbitrary precision, so registers larger
than a machine word work unchanged.

Key Features:
    - Immutable PauliOperator values with product, weight and commutation
    - Syndrome computation against an ordered generator list
    - Text rendering and parsing in 1-based index notation ("X2 X4 X6", "Z1Z2")

Dependencies:
    - dataclasses: Frozen value types
    - re: Label parsing

Note:
    Qubit indices are 0-based in the API and 1-based in text labels.
"""

import logging
import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

from .errors import DimensionError

# Initialize logger
logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\s*([IXYZ])\s*(\d*)")


def _popcount(value: int) -> int:
    return bin(value).count("1")


@dataclass(frozen=True)
class PauliOperator:
    """
    Phase-free n-qubit Pauli operator.

    Attributes:
        n (int): Number of qubits
        x (int): X-component bit mask
        z (int): Z-component bit mask
    """

    n: int
    x: int = 0
    z: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DimensionError(f"Pauli operator needs n >= 1, got {self.n}")
        limit = 1 << self.n
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise DimensionError(f"bit mask exceeds {self.n} qubits")

    @classmethod
    def identity(cls, n: int) -> "PauliOperator":
        return cls(n)

    @classmethod
    def single(cls, kind: str, qubit: int, n: int) -> "PauliOperator":
        """Single-qubit X, Y or Z on 0-based ``qubit``."""
        return cls.from_support(kind, [qubit], n)

    @classmethod
    def from_support(cls, kind: str, qubits: Iterable[int], n: int) -> "PauliOperator":
        """
        Build a pure-type operator on the given 0-based qubits.

        Args:
            kind (str): One of "X", "Y", "Z"
            qubits (Iterable[int]): Support
            n (int): Register size

        Returns:
            PauliOperator: kind applied on every listed qubit

        Raises:
            DimensionError: If a qubit index is outside the register
        """
        mask = 0
        for q in qubits:
            if not 0 <= q < n:
                raise DimensionError(f"qubit {q} outside register of {n}")
            mask |= 1 << q
        kind = kind.upper()
        if kind not in ("X", "Y", "Z"):
            raise ValueError(f"unknown Pauli kind {kind!r}")
        return cls(n, mask if kind in "XY" else 0, mask if kind in "YZ" else 0)

    @classmethod
    def from_bits(cls, x_bits: Sequence[int], z_bits: Sequence[int]) -> "PauliOperator":
        if len(x_bits) != len(z_bits):
            raise DimensionError("x_bits and z_bits differ in length")
        x = sum(1 << i for i, b in enumerate(x_bits) if b)
        z = sum(1 << i for i, b in enumerate(z_bits) if b)
        return cls(len(x_bits), x, z)

    @classmethod
    def from_label(cls, text: str, n: int) -> "PauliOperator":
        """
        Parse index notation such as "X2 X4 X6", "Z1Z2" or "X1 Y2 Z3".

        A letter without an index is only accepted for "I". Repeated qubits
        multiply, so "X1 Z1" parses to Y on qubit 1.

        Raises:
            ValueError: If the text is not in index notation
            DimensionError: If an index is outside 1..n
        """
        x = z = 0
        pos = 0
        stripped = text.strip()
        while pos < len(stripped):
            match = _TOKEN.match(stripped, pos)
            if match is None or match.end() == pos:
                raise ValueError(f"cannot parse Pauli label {text!r}")
            kind, index = match.group(1), match.group(2)
            pos = match.end()
            if kind == "I":
                continue
            if not index:
                raise ValueError(f"missing qubit index after {kind} in {text!r}")
            q = int(index) - 1
            if not 0 <= q < n:
                raise DimensionError(f"index {q + 1} outside 1..{n} in {text!r}")
            if kind in "XY":
                x ^= 1 << q
            if kind in "YZ":
                z ^= 1 << q
        return cls(n, x, z)

    @property
    def x_bits(self) -> Tuple[int, ...]:
        return tuple((self.x >> i) & 1 for i in range(self.n))

    @property
    def z_bits(self) -> Tuple[int, ...]:
        return tuple((self.z >> i) & 1 for i in range(self.n))

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    @property
    def weight(self) -> int:
        return _popcount(self.x | self.z)

    @property
    def support(self) -> Tuple[int, ...]:
        mask = self.x | self.z
        return tuple(i for i in range(self.n) if (mask >> i) & 1)

    @property
    def is_x_type(self) -> bool:
        return self.z == 0 and self.x != 0

    @property
    def is_z_type(self) -> bool:
        return self.x == 0 and self.z != 0

    def x_part(self) -> "PauliOperator":
        return PauliOperator(self.n, self.x, 0)

    def z_part(self) -> "PauliOperator":
        return PauliOperator(self.n, 0, self.z)

    def commutes(self, other: "PauliOperator") -> bool:
        self._check_same(other)
        return _popcount((self.x & other.z) ^ (self.z & other.x)) % 2 == 0

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        self._check_same(other)
        return PauliOperator(self.n, self.x ^ other.x, self.z ^ other.z)

    def restrict(self, qubits: Sequence[int]) -> "PauliOperator":
        """Operator on ``len(qubits)`` qubits; position j takes qubit ``qubits[j]``."""
        x = z = 0
        for j, q in enumerate(qubits):
            x |= ((self.x >> q) & 1) << j
            z |= ((self.z >> q) & 1) << j
        return PauliOperator(len(qubits), x, z)

    def embed(self, n: int, qubits: Sequence[int]) -> "PauliOperator":
        """Inverse of restrict: place qubit j of self on ``qubits[j]`` of an n-qubit register."""
        if len(qubits) != self.n:
            raise DimensionError(f"need {self.n} target qubits, got {len(qubits)}")
        x = z = 0
        for j, q in enumerate(qubits):
            if not 0 <= q < n:
                raise DimensionError(f"qubit {q} outside register of {n}")
            x |= ((self.x >> j) & 1) << q
            z |= ((self.z >> j) & 1) << q
        return PauliOperator(n, x, z)

    def label(self, compact: bool = False) -> str:
        """Render in 1-based index notation; identity renders as "I"."""
        parts = []
        for i in range(self.n):
            xb, zb = (self.x >> i) & 1, (self.z >> i) & 1
            if xb or zb:
                parts.append(f"{'Y' if xb and zb else ('X' if xb else 'Z')}{i + 1}")
        if not parts:
            return "I"
        return ("" if compact else " ").join(parts)

    def __str__(self) -> str:
        return self.label()

    def _check_same(self, other: "PauliOperator") -> None:
        if self.n != other.n:
            raise DimensionError(f"register mismatch: {self.n} vs {other.n} qubits")


@dataclass(frozen=True)
class Syndrome:
    """
    Ordered syndrome bits, one per generator of the list they were computed against.

    Attributes:
        bits (Tuple[int, ...]): 0/1 values in generator order
    """

    bits: Tuple[int, ...]

    @classmethod
    def zeros(cls, length: int) -> "Syndrome":
        return cls((0,) * length)

    @classmethod
    def from_string(cls, text: str) -> "Syndrome":
        if any(c not in "01" for c in text):
            raise ValueError(f"syndrome string must be binary, got {text!r}")
        return cls(tuple(int(c) for c in text))

    @property
    def is_zero(self) -> bool:
        return not any(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __xor__(self, other: "Syndrome") -> "Syndrome":
        if len(self) != len(other):
            raise DimensionError("syndrome lengths differ")
        return Syndrome(tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    """True iff the symplectic inner product of p and q is even."""
    return p.commutes(q)


def multiply(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    """Group product modulo phase."""
    return p * q


def weight(p: PauliOperator) -> int:
    return p.weight


def syndrome_of(e: PauliOperator, generators: Sequence[PauliOperator]) -> Syndrome:
    """
    Syndrome of ``e``: bit i is 1 iff ``e`` anticommutes with ``generators[i]``.

    Raises:
        DimensionError: If any generator acts on a different register
    """
    return Syndrome(tuple(0 if e.commutes(g) else 1 for g in generators))
