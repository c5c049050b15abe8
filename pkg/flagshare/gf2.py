"""
GF(2) row spaces over bit masks.

``BinarySpan`` stores a reduced row-echelon basis of a set of binary vectors.
The reduction is done once with ``galois`` when the span is built; afterwards
membership tests and reductions are plain integer XORs, which is what the
per-trial paths need.

Dependencies:
    - galois: Row reduction over GF(2)
    - numpy: Dense matrix staging for galois
"""

import logging
from typing import Iterable, List, Sequence, Tuple

import galois
import numpy as np

# Initialize logger
logger = logging.getLogger(__name__)

GF2 = galois.GF(2)


def masks_to_matrix(masks: Sequence[int], width: int) -> galois.FieldArray:
    """Stack masks as rows of a GF(2) matrix; bit j of a mask is column j."""
    rows = np.zeros((max(len(masks), 1), width), dtype=np.int64)
    for i, mask in enumerate(masks):
        for j in range(width):
            rows[i, j] = (mask >> j) & 1
    return GF2(rows)


def rank(masks: Sequence[int], width: int) -> int:
    if not masks:
        return 0
    return int(np.linalg.matrix_rank(masks_to_matrix(masks, width)))


class BinarySpan:
    """
    Row space of binary vectors of fixed width.

    Attributes:
        width (int): Vector length
        basis (Tuple[Tuple[int, int], ...]): (pivot column, row mask) pairs of the RREF
    """

    def __init__(self, masks: Iterable[int], width: int) -> None:
        self.width = width
        masks = [m for m in masks if m]
        basis: List[Tuple[int, int]] = []
        if masks:
            reduced = masks_to_matrix(masks, width).row_reduce()
            for row in reduced.view(np.ndarray).astype(np.int64):
                mask = sum(1 << j for j, bit in enumerate(row) if bit)
                if mask:
                    pivot = (mask & -mask).bit_length() - 1
                    basis.append((pivot, mask))
        self.basis = tuple(basis)
        logger.debug(f"BinarySpan of width {width} with dimension {len(self.basis)}")

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def reduce(self, mask: int) -> int:
        """Canonical coset representative of ``mask`` modulo the span."""
        for pivot, row in self.basis:
            if (mask >> pivot) & 1:
                mask ^= row
        return mask

    def __contains__(self, mask: int) -> bool:
        return self.reduce(mask) == 0

    def extended(self, mask: int) -> "BinarySpan":
        return BinarySpan([row for _, row in self.basis] + [mask], self.width)
