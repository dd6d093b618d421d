"""Linear algebra over the field with two elements.

Vectors are Python ints used as bitsets (bit ``i`` is coordinate ``i``), so
addition is ``^`` and elimination runs word-parallel inside the interpreter's
bignum XOR.  Matrices are stored column-packed: ``cols[c]`` is the image of the
``c``-th basis vector, a bitset over rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidComplex, InvalidInput


@dataclass(frozen=True)
class F2Matrix:
    rows: int
    cols: int
    columns: tuple[int, ...]

    def __post_init__(self):
        if len(self.columns) != self.cols:
            raise InvalidInput(f"expected {self.cols} columns, got {len(self.columns)}")
        limit = 1 << self.rows
        for c in self.columns:
            if c < 0 or c >= limit:
                raise InvalidInput("column has bits outside the row range")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "F2Matrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        cols = [0] * ncols
        for r, row in enumerate(rows):
            if len(row) != ncols:
                raise InvalidInput("ragged matrix")
            for c, x in enumerate(row):
                if x & 1:
                    cols[c] |= 1 << r
        return cls(nrows, ncols, tuple(cols))

    @classmethod
    def from_columns(cls, nrows: int, columns: Iterable[int]) -> "F2Matrix":
        cols = tuple(columns)
        return cls(nrows, len(cols), cols)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "F2Matrix":
        return cls(nrows, ncols, (0,) * ncols)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    def to_rows(self) -> list[list[int]]:
        return [[(c >> r) & 1 for c in self.columns] for r in range(self.rows)]

    def apply(self, x: int) -> int:
        """Image of the bitset ``x`` (over columns)."""
        out = 0
        c = 0
        while x:
            if x & 1:
                out ^= self.columns[c]
            x >>= 1
            c += 1
        return out

    def compose(self, other: "F2Matrix") -> "F2Matrix":
        """``self @ other``."""
        if other.rows != self.cols:
            raise InvalidInput(f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        return F2Matrix(self.rows, other.cols, tuple(self.apply(c) for c in other.columns))


class EchelonBasis:
    """Incrementally maintained reduced basis of a subspace of F2^n.

    Each stored vector is keyed by its highest set bit, and no two stored
    vectors share that pivot.  Insertion order fixes the result, so repeated
    runs on the same input are bit-for-bit identical.
    """

    __slots__ = ("_pivots",)

    def __init__(self, vectors: Iterable[int] = ()):
        self._pivots: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self._pivots)

    def reduce(self, v: int) -> int:
        pivots = self._pivots
        while v:
            p = v.bit_length() - 1
            w = pivots.get(p)
            if w is None:
                return v
            v ^= w
        return 0

    def add(self, v: int) -> bool:
        """Insert ``v``; return True iff it enlarged the span."""
        v = self.reduce(v)
        if not v:
            return False
        self._pivots[v.bit_length() - 1] = v
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0


def rank(m: F2Matrix) -> int:
    return len(EchelonBasis(m.columns))


def in_image(m: F2Matrix, v: int) -> bool:
    """True iff ``v`` (a bitset over the rows of ``m``) is in the column span."""
    if v < 0 or v >> m.rows:
        raise InvalidInput(f"vector does not fit in {m.rows} rows")
    basis = EchelonBasis(m.columns)
    return basis.contains(v)


def homology_dim(boundary_in: F2Matrix, boundary_out: F2Matrix) -> int:
    """dim ker(boundary_out) - rank(boundary_in) for ``C' -> C -> C''``."""
    if boundary_in.rows != boundary_out.cols:
        raise InvalidInput("boundary maps do not share a middle space")
    if any(boundary_out.apply(c) for c in boundary_in.columns):
        raise InvalidComplex("boundary_out o boundary_in is nonzero")
    kernel = boundary_out.cols - rank(boundary_out)
    return kernel - rank(boundary_in)


def bits(x: int) -> list[int]:
    """Indices of set bits of ``x`` in increasing order."""
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out
