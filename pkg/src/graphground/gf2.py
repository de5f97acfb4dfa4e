"""Linear algebra over GF(2) on packed bit rows.

Rows are stored as Python integers; bit ``j`` of a row is the entry in column
``j``.  Python ints are arbitrary-width words, so a row XOR is a single
operation regardless of the column count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInputError

MAX_ROWS = 4096


def popcount(x: int) -> int:
    return bin(x).count("1")


def parity(x: int) -> int:
    return popcount(x) & 1


def mask(cols: int) -> int:
    """Integer with the lowest ``cols`` bits set."""
    return (1 << cols) - 1


@dataclass(frozen=True)
class BitMatrix:
    """Immutable ``rows x cols`` matrix over GF(2) stored as packed bit rows."""

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise InvalidInputError("matrix dimensions must be non-negative")
        if self.rows > MAX_ROWS:
            raise InvalidInputError(
                f"{self.rows} rows exceeds the configured maximum {MAX_ROWS}"
            )
        if len(self.data) != self.rows:
            raise InvalidInputError("row count does not match data length")
        m = mask(self.cols)
        for r in self.data:
            if r < 0 or r & ~m:
                raise InvalidInputError("row has bits set beyond the column count")

    @classmethod
    def from_rows(cls, rows: Iterable[int], cols: int) -> BitMatrix:
        data = tuple(int(r) for r in rows)
        return cls(len(data), cols, data)

    @classmethod
    def from_array(cls, array) -> BitMatrix:
        a = np.asarray(array, dtype=np.int64) % 2
        if a.ndim != 2:
            raise InvalidInputError("expected a 2-D array")
        rows, cols = a.shape
        data = tuple(sum(1 << int(j) for j in np.flatnonzero(row)) for row in a)
        return cls(rows, cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for i, r in enumerate(self.data):
            for j in range(self.cols):
                out[i, j] = (r >> j) & 1
        return out

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return (self.data[i] >> j) & 1

    def transpose(self) -> BitMatrix:
        out = [0] * self.cols
        for i, r in enumerate(self.data):
            while r:
                low = r & -r
                out[low.bit_length() - 1] |= 1 << i
                r ^= low
        return BitMatrix(self.cols, self.rows, tuple(out))

    @property
    def T(self) -> BitMatrix:
        return self.transpose()

    def matvec(self, v: int) -> int:
        """Product ``M v`` with ``v`` a packed column vector; result packed by row."""
        out = 0
        for i, r in enumerate(self.data):
            if parity(r & v):
                out |= 1 << i
        return out


def row_reduce_inplace(rows: list[int], cols: int) -> list[int]:
    """Reduce ``rows`` to reduced row-echelon form in place; return pivot columns.

    Nonzero rows end up first, in pivot order; zero rows trail.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for col in range(cols):
        bit = 1 << col
        for i in range(r, nrows):
            if rows[i] & bit:
                break
        else:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        p = rows[r]
        for i in range(nrows):
            if i != r and rows[i] & bit:
                rows[i] ^= p
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return pivots


def row_reduce(M: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Reduced row-echelon form of ``M`` and its pivot columns (``M`` unchanged)."""
    rows = list(M.data)
    pivots = row_reduce_inplace(rows, M.cols)
    return BitMatrix(M.rows, M.cols, tuple(rows)), pivots


def rank_of_rows(rows: Sequence[int]) -> int:
    """GF(2) rank of a sequence of packed rows."""
    return len(XorBasis(rows))


def rank2(M: BitMatrix) -> int:
    return rank_of_rows(M.data)


def nullspace2(M: BitMatrix) -> BitMatrix:
    """Basis (as rows) of ``{v : M v = 0}`` over GF(2)."""
    rows = list(M.data)
    pivots = row_reduce_inplace(rows, M.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(M.cols):
        if free in pivot_set:
            continue
        v = 1 << free
        for r, p in enumerate(pivots):
            if (rows[r] >> free) & 1:
                v |= 1 << p
        basis.append(v)
    return BitMatrix(len(basis), M.cols, tuple(basis))


def in_span(basis: BitMatrix, v: int, check: bool = False) -> bool:
    """True iff ``v`` is a GF(2) combination of the rows of ``basis``.

    ``check=True`` verifies the caller contract that the rows are independent.
    """
    if check and rank2(basis) != basis.rows:
        raise InvalidInputError("basis rows are not linearly independent")
    return XorBasis(basis.data).reduce(v) == 0


class XorBasis:
    """Incrementally grown GF(2) basis kept in echelon form by leading bit.

    Used wherever a span is built one vector at a time; ``add`` reports whether
    the vector enlarged the span.
    """

    def __init__(self, vectors: Iterable[int] = ()):
        self._pivots: dict[int, int] = {}
        self.vectors: list[int] = []
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self._pivots)

    def reduce(self, v: int) -> int:
        while v:
            top = v.bit_length() - 1
            p = self._pivots.get(top)
            if p is None:
                return v
            v ^= p
        return 0

    def add(self, v: int) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        self._pivots[r.bit_length() - 1] = r
        self.vectors.append(v)
        return True

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0


def left_nullspace(rows: Sequence[int], tags: Sequence[int] | None = None) -> list[int]:
    """Basis of row combinations that XOR to zero.

    Each row carries a tag (default ``1 << i``); a combination is reported as
    the XOR of the tags of the rows involved.  With default tags this is a
    basis of ``{c : c^T M = 0}``.
    """
    if tags is None:
        tags = [1 << i for i in range(len(rows))]
    pivots: dict[int, tuple[int, int]] = {}
    out = []
    for v, t in zip(rows, tags):
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = (v, t)
                break
            v ^= p[0]
            t ^= p[1]
        else:
            out.append(t)
    return out
