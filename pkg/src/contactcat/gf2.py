"""Dense linear algebra over the two-element field.

Rows are packed into Python integers (bit ``j`` of a row is column ``j``), so
row operations are single XORs. Pivot search is deterministic: leftmost
column first, topmost available row within that column.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Raised when operand shapes do not agree."""


@dataclass(frozen=True)
class BitVector:
    """Fixed-length vector of bits; ``bits`` is packed little-endian."""

    length: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.length < 0:
            raise DimensionError("negative length")
        if self.bits >> self.length:
            raise DimensionError("bits set beyond vector length")

    @classmethod
    def from_list(cls, entries: Sequence[int]) -> "BitVector":
        bits = 0
        for j, e in enumerate(entries):
            if e % 2:
                bits |= 1 << j
        return cls(len(entries), bits)

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length, 0)

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(j)
        return (self.bits >> j) & 1

    def __len__(self) -> int:
        return self.length

    def __add__(self, other: "BitVector") -> "BitVector":
        if other.length != self.length:
            raise DimensionError("length mismatch")
        return BitVector(self.length, self.bits ^ other.bits)

    def to_list(self) -> list[int]:
        return [(self.bits >> j) & 1 for j in range(self.length)]

    def support(self) -> list[int]:
        return [j for j in range(self.length) if (self.bits >> j) & 1]

    def is_zero(self) -> bool:
        return self.bits == 0


@dataclass(frozen=True)
class BitMatrix:
    """Immutable ``rows x cols`` matrix over GF(2) with bit-packed rows."""

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative shape")
        if len(self.data) != self.rows:
            raise DimensionError("row count does not match data")
        for r in self.data:
            if r < 0 or r >> self.cols:
                raise DimensionError("row has bits beyond column count")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, size: int) -> "BitMatrix":
        return cls(size, size, tuple(1 << i for i in range(size)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "BitMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        packed = []
        for row in rows:
            if len(row) != cols:
                raise DimensionError("ragged rows")
            packed.append(BitVector.from_list(row).bits)
        return cls(len(rows), cols, tuple(packed))

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int]]) -> "BitMatrix":
        """Build from the positions of the nonzero entries (repeats cancel)."""
        data = [0] * rows
        for i, j in entries:
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError((i, j))
            data[i] ^= 1 << j
        return cls(rows, cols, tuple(data))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return (self.data[i] >> j) & 1

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.data[i])

    def to_lists(self) -> list[list[int]]:
        return [BitVector(self.cols, r).to_list() for r in self.data]

    def nonzero(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.rows) for j in range(self.cols) if (self.data[i] >> j) & 1]

    def is_zero(self) -> bool:
        return not any(self.data)

    def transpose(self) -> "BitMatrix":
        out = [0] * self.cols
        for i, r in enumerate(self.data):
            j = 0
            while r:
                if r & 1:
                    out[j] |= 1 << i
                r >>= 1
                j += 1
        return BitMatrix(self.cols, self.rows, tuple(out))

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch")
        return BitMatrix(self.rows, self.cols, tuple(a ^ b for a, b in zip(self.data, other.data)))

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for r in self.data:
            acc = 0
            k = 0
            while r:
                if r & 1:
                    acc ^= other.data[k]
                r >>= 1
                k += 1
            out.append(acc)
        return BitMatrix(self.rows, other.cols, tuple(out))

    def apply(self, v: BitVector) -> BitVector:
        """Matrix-vector product ``self @ v``."""
        if v.length != self.cols:
            raise DimensionError("vector length does not match column count")
        bits = 0
        for i, r in enumerate(self.data):
            if bin(r & v.bits).count("1") & 1:
                bits |= 1 << i
        return BitVector(self.rows, bits)


def _echelon(data: Sequence[int], cols: int) -> tuple[list[int], list[int], list[int]]:
    """Reduced row echelon form.

    Returns the reduced rows, the pivot column of each pivot row, and the
    permutation recording which original row ended up in each position.
    """
    rows = list(data)
    order = list(range(len(rows)))
    pivots: list[int] = []
    top = 0
    for col in range(cols):
        mask = 1 << col
        found = next((i for i in range(top, len(rows)) if rows[i] & mask), None)
        if found is None:
            continue
        rows[top], rows[found] = rows[found], rows[top]
        order[top], order[found] = order[found], order[top]
        for i in range(len(rows)):
            if i != top and rows[i] & mask:
                rows[i] ^= rows[top]
        pivots.append(col)
        top += 1
        if top == len(rows):
            break
    return rows, pivots, order


def rank(m: BitMatrix) -> int:
    """Row rank over GF(2)."""
    return len(_echelon(m.data, m.cols)[1])


def solve(m: BitMatrix, b: BitVector) -> BitVector | None:
    """Return some ``x`` with ``m @ x == b``, or ``None`` if inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    if b.length != m.rows:
        raise DimensionError(f"right-hand side has length {b.length}, matrix has {m.rows} rows")
    augmented = [r | (((b.bits >> i) & 1) << m.cols) for i, r in enumerate(m.data)]
    rows, pivots, _ = _echelon(augmented, m.cols + 1)
    if m.cols in pivots:
        return None
    x = 0
    for r, col in zip(rows, pivots):
        if (r >> m.cols) & 1:
            x |= 1 << col
    return BitVector(m.cols, x)


def kernel_basis(m: BitMatrix) -> list[BitVector]:
    """Basis of the null space, one vector per free column (ascending)."""
    rows, pivots, _ = _echelon(m.data, m.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        x = 1 << free
        for r, col in zip(rows, pivots):
            if (r >> free) & 1:
                x |= 1 << col
        basis.append(BitVector(m.cols, x))
    return basis


def span_rank(vectors: Iterable[int], width: int) -> int:
    """Rank of a family of packed vectors of the given width."""
    return len(_echelon(list(vectors), width)[1])
