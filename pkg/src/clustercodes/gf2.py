"""Linear algebra over GF(2) on int bit-vectors (bit i = coordinate i)."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import RankDeficient


def popcount(v: int) -> int:
    return bin(v).count("1")


def bits_of(v: int) -> list[int]:
    """Indices of the set bits of v, ascending."""
    out = []
    i = 0
    while v:
        if v & 1:
            out.append(i)
        v >>= 1
        i += 1
    return out


class XorBasis:
    """Incrementally built basis that remembers how each member was inserted.

    ``express(v)`` returns a bitmask over insertion indices whose vectors
    XOR to ``v``; that is all systematic encoding needs.
    """

    def __init__(self):
        self._pivots: dict[int, tuple[int, int]] = {}
        self.size = 0

    def _reduce(self, v: int) -> tuple[int, int]:
        combo = 0
        while v:
            top = v.bit_length() - 1
            hit = self._pivots.get(top)
            if hit is None:
                break
            v ^= hit[0]
            combo ^= hit[1]
        return v, combo

    def insert(self, v: int) -> bool:
        """Add v if it is independent of the current members."""
        rest, combo = self._reduce(v)
        if rest == 0:
            return False
        self._pivots[rest.bit_length() - 1] = (rest, combo ^ (1 << self.size))
        self.size += 1
        return True

    def contains(self, v: int) -> bool:
        return self._reduce(v)[0] == 0

    def express(self, v: int) -> int:
        rest, combo = self._reduce(v)
        if rest:
            raise RankDeficient("vector outside the span of the basis")
        return combo


def rank(vectors: Iterable[int]) -> int:
    basis = XorBasis()
    for v in vectors:
        basis.insert(v)
    return basis.size


def independent_rows(rows: Sequence[int]) -> list[int]:
    """The rows that extend the rank, in their original order."""
    basis = XorBasis()
    return [row for row in rows if basis.insert(row)]


def columns_to_rows(columns: Sequence[int], r: int) -> list[int]:
    rows = [0] * r
    for j, col in enumerate(columns):
        for i in bits_of(col):
            rows[i] |= 1 << j
    return rows


def rows_to_columns(rows: Sequence[int], n: int) -> list[int]:
    cols = [0] * n
    for i, row in enumerate(rows):
        for j in bits_of(row):
            cols[j] |= 1 << i
    return cols


def to_matrix(rows: Sequence[int], n: int) -> np.ndarray:
    m = np.zeros((len(rows), n), dtype=np.uint8)
    for i, row in enumerate(rows):
        for j in bits_of(row):
            m[i, j] = 1
    return m


def from_matrix(matrix: np.ndarray) -> list[int]:
    matrix = np.asarray(matrix) & 1
    weights = [1 << j for j in range(matrix.shape[1])]
    return [sum(w for w, bit in zip(weights, row) if bit) for row in matrix.tolist()]


def xor_all(values: Iterable[int]) -> int:
    acc = 0
    for v in values:
        acc ^= v
    return acc
