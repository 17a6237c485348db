"""GF(2) linear algebra: a sparse bit matrix plus two independent rank paths.

The production path is column-major Gaussian elimination on rows packed into
Python ints. The dense path re-reduces a numpy uint8 matrix and exists both
as a fallback below ~4096 columns and as an independent oracle the tests
compare against.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError


@dataclass
class SparseBitMatrix:
    """An n_rows x n_cols matrix over GF(2); row i is a bitset over columns."""

    n_rows: int
    n_cols: int
    rows: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.rows:
            self.rows = [0] * self.n_rows
        if len(self.rows) != self.n_rows:
            raise InputError("row list does not match n_rows")

    @classmethod
    def from_entries(cls, n_rows: int, n_cols: int, entries) -> "SparseBitMatrix":
        """Build from (row, col) pairs; duplicate pairs cancel (GF(2))."""
        rows = [0] * n_rows
        for r, c in entries:
            rows[r] ^= 1 << c
        return cls(n_rows, n_cols, rows)

    def entry_count(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def entries(self):
        for i, row in enumerate(self.rows):
            while row:
                low = row & -row
                yield i, low.bit_length() - 1
                row ^= low

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.rows)

    def transpose(self) -> "SparseBitMatrix":
        return SparseBitMatrix.from_entries(
            self.n_cols, self.n_rows, ((c, r) for r, c in self.entries()))

    def __matmul__(self, other: "SparseBitMatrix") -> "SparseBitMatrix":
        if self.n_cols != other.n_rows:
            raise InputError("shape mismatch in product")
        out = [0] * self.n_rows
        for i, row in enumerate(self.rows):
            acc = 0
            while row:
                low = row & -row
                acc ^= other.rows[low.bit_length() - 1]
                row ^= low
            out[i] = acc
        return SparseBitMatrix(self.n_rows, other.n_cols, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseBitMatrix):
            return NotImplemented
        return (self.n_rows, self.n_cols, self.rows) == (
            other.n_rows, other.n_cols, other.rows)

    def apply(self, vec: int) -> int:
        """Matrix times column vector; vec is a bitset over columns."""
        acc = 0
        for i, row in enumerate(self.rows):
            if (row & vec).bit_count() & 1:
                acc |= 1 << i
        return acc

    def rank(self) -> int:
        return bitset_rank(list(self.rows))

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.n_rows, self.n_cols), dtype=np.uint8)
        for r, c in self.entries():
            out[r, c] = 1
        return out


def bitset_rank(rows: list[int]) -> int:
    """Column-major elimination; destroys the given list."""
    pivots: list[int] = []
    rank = 0
    for row in rows:
        for p in pivots:
            low = p & -p
            if row & low:
                row ^= p
        if row:
            pivots.append(row)
            rank += 1
    return rank


def bitset_solve(rows: list[int], n_rows: int, target: int) -> int | None:
    """Solve sum_{j in S} column_j = target for the matrix whose columns are
    ``rows[j]`` (each a bitset over row indices). Returns the solution as a
    bitset over column indices, or None."""
    # Eliminate on (column, tag) pairs so the combination is recoverable.
    pivots: list[tuple[int, int]] = []  # (reduced column, tag bitset)
    for j, col in enumerate(rows):
        tag = 1 << j
        for pcol, ptag in pivots:
            low = pcol & -pcol
            if col & low:
                col ^= pcol
                tag ^= ptag
        if col:
            pivots.append((col, tag))
    residue, combo = target, 0
    for pcol, ptag in pivots:
        low = pcol & -pcol
        if residue & low:
            residue ^= pcol
            combo ^= ptag
    return combo if residue == 0 else None


def dense_rank(matrix: np.ndarray) -> int:
    """Independent dense-oracle rank over GF(2) via numpy row reduction."""
    a = (np.asarray(matrix) & 1).astype(np.uint8, copy=True)
    m, n = a.shape
    rank = 0
    for col in range(n):
        if rank >= m:
            break
        hit = np.nonzero(a[rank:, col])[0]
        if hit.size == 0:
            continue
        p = rank + int(hit[0])
        if p != rank:
            a[[rank, p]] = a[[p, rank]]
        others = np.nonzero(a[:, col])[0]
        others = others[others != rank]
        if others.size:
            a[others] ^= a[rank]
        rank += 1
    return rank


def random_bit_matrix(rng: np.random.Generator, n_rows: int, n_cols: int,
                      density: float = 0.5) -> np.ndarray:
    return (rng.random((n_rows, n_cols)) < density).astype(np.uint8)
