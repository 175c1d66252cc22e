"""Doubly periodic binary arrays, CRT folding and shift sequences."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .errors import (
    ColumnNotAShift,
    DimensionMismatch,
    MultipleDotsInColumn,
    NotCoprime,
    SequenceDesignError,
)
from .sequences import BinarySequence, shift

BLANK = None


@dataclass(frozen=True, eq=False)
class BinaryArray:
    """u x v array over GF(2), stored row-major."""

    cells: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.array(self.cells, dtype=np.uint8)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise DimensionMismatch("an array needs shape (u, v) with u, v >= 1")
        if np.any(arr > 1):
            raise SequenceDesignError("array entries must be 0 or 1")
        arr.setflags(write=False)
        object.__setattr__(self, "cells", arr)

    @property
    def rows(self) -> int:
        return int(self.cells.shape[0])

    @property
    def cols(self) -> int:
        return int(self.cells.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def column(self, j: int) -> BinarySequence:
        return BinarySequence(self.cells[:, j])

    def bipolar(self) -> np.ndarray:
        return 1 - 2 * self.cells.astype(np.int64)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryArray):
            return NotImplemented
        return np.array_equal(self.cells, other.cells)

    def __hash__(self) -> int:
        return hash((self.shape, self.cells.tobytes()))

    def __xor__(self, other: BinaryArray) -> BinaryArray:
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")
        return BinaryArray(self.cells ^ other.cells)

    def to_text(self) -> str:
        return "\n".join("".join(map(str, row)) for row in self.cells.tolist()) + "\n"

    @classmethod
    def from_text(cls, text: str) -> BinaryArray:
        rows = [line.strip() for line in text.splitlines() if line.strip() and not line.startswith("#")]
        if not rows or len({len(r) for r in rows}) != 1:
            raise DimensionMismatch("array rows must be non-empty and equally long")
        return cls(np.array([[int(c) for c in r] for r in rows], dtype=np.uint8))

    def to_pbm(self) -> str:
        """Plain (P1) PBM; 1 is a black cell."""
        lines = ["P1", f"{self.cols} {self.rows}"]
        lines += [" ".join(map(str, row)) for row in self.cells.tolist()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_pbm(cls, text: str) -> BinaryArray:
        tokens = []
        for line in text.splitlines():
            line = line.split("#", 1)[0]
            tokens.extend(line.split())
        if not tokens or tokens[0] != "P1":
            raise SequenceDesignError("not a plain PBM (P1) image")
        w, h = int(tokens[1]), int(tokens[2])
        data = "".join(tokens[3:])
        if len(data) != w * h:
            raise DimensionMismatch(f"PBM declares {w}x{h} but holds {len(data)} pixels")
        return cls(np.array([int(c) for c in data], dtype=np.uint8).reshape(h, w))


@lru_cache(maxsize=64)
def _crt_index(u: int, v: int) -> np.ndarray:
    """index[i, j] = the k in [0, uv) with k = i (mod u) and k = j (mod v)."""
    if math.gcd(u, v) != 1:
        raise NotCoprime(f"gcd({u}, {v}) = {math.gcd(u, v)}")
    eu = v * pow(v, -1, u) if u > 1 else 0  # = 1 mod u, 0 mod v
    ev = u * pow(u, -1, v) if v > 1 else 0  # = 0 mod u, 1 mod v
    i = np.arange(u, dtype=np.int64)[:, None]
    j = np.arange(v, dtype=np.int64)[None, :]
    idx = (i * eu + j * ev) % (u * v)
    idx.setflags(write=False)
    return idx


def fold(s: BinarySequence, u: int, v: int) -> BinaryArray:
    """Write ``s`` down the diagonal of a u x v array (CRT placement)."""
    if u < 1 or v < 1 or u * v != len(s):
        raise DimensionMismatch(f"{u} x {v} does not match sequence length {len(s)}")
    return BinaryArray(s.bits[_crt_index(u, v)])


def fold_values(values: Sequence[int], u: int, v: int) -> np.ndarray:
    """Integer-valued fold; used to print fill orders."""
    values = np.asarray(values)
    if u * v != values.size:
        raise DimensionMismatch(f"{u} x {v} does not match length {values.size}")
    return values[_crt_index(u, v)]


def unfold(a: BinaryArray) -> BinarySequence:
    """Inverse of :func:`fold`."""
    idx = _crt_index(a.rows, a.cols)
    out = np.empty(a.rows * a.cols, dtype=np.uint8)
    out[idx.ravel()] = a.cells.ravel()
    return BinarySequence(out)


def array_shift(a: BinaryArray, h: int, v: int) -> BinaryArray:
    """Cell (i, j) of the result is a[(i + v) mod rows, (j + h) mod cols]."""
    return BinaryArray(np.roll(a.cells, (-(v % a.rows), -(h % a.cols)), axis=(0, 1)))


@dataclass(frozen=True)
class ShiftSequence:
    """Per-column cyclic shift of a base column; ``None`` marks a constant column.

    Also serves as a frequency-hop pattern: column = time slot, value =
    frequency, ``None`` = no transmission.
    """

    values: tuple[Optional[int], ...]
    row_modulus: int

    def __post_init__(self):
        vals = tuple(None if x is None else int(x) for x in self.values)
        if self.row_modulus < 1:
            raise SequenceDesignError("row modulus must be positive")
        for x in vals:
            if x is not None and not 0 <= x < self.row_modulus:
                raise SequenceDesignError(f"shift {x} outside Z_{self.row_modulus}")
        object.__setattr__(self, "values", vals)

    @property
    def n_cols(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, j):
        return self.values[j]

    @property
    def defined(self) -> int:
        return sum(x is not None for x in self.values)

    def offset(self, d: int) -> ShiftSequence:
        """Add ``d`` to every defined value (a vertical array shift)."""
        m = self.row_modulus
        return ShiftSequence(tuple(None if x is None else (x + d) % m for x in self.values), m)

    def translate(self, c: int) -> ShiftSequence:
        """Cyclic column translate: result[j] = self[j + c]."""
        n = self.n_cols
        return ShiftSequence(tuple(self.values[(j + c) % n] for j in range(n)), self.row_modulus)

    def to_csv(self) -> str:
        return ",".join("-" if x is None else str(x) for x in self.values)

    @classmethod
    def from_csv(cls, text: str, row_modulus: int) -> ShiftSequence:
        vals = []
        for tok in text.strip().split(","):
            tok = tok.strip()
            vals.append(None if tok in ("-", "") else int(tok))
        return cls(tuple(vals), row_modulus)

    def normalized(self, zero: int) -> ShiftSequence:
        """Display form with value ``zero`` relabelled as 0 (vertical offset)."""
        return self.offset(-zero)


def extract_shift_sequence(a: BinaryArray, base: BinarySequence) -> ShiftSequence:
    """Express every column as a shift of ``base`` or as a constant column.

    Raises:
        ColumnNotAShift: a column is neither constant nor a cyclic shift of base.
    """
    u = a.rows
    if len(base) != u:
        raise DimensionMismatch(f"base length {len(base)} != {u} rows")
    lookup: dict[bytes, int] = {}
    for tau in range(u - 1, -1, -1):
        lookup[np.roll(base.bits, -tau).tobytes()] = tau
    out: list[Optional[int]] = []
    for j in range(a.cols):
        col = np.ascontiguousarray(a.cells[:, j])
        if np.all(col == col[0]):
            out.append(BLANK)
            continue
        tau = lookup.get(col.tobytes())
        if tau is None:
            raise ColumnNotAShift(f"column {j} is not a cyclic shift of the base column")
        out.append(tau)
    return ShiftSequence(tuple(out), u)


def substitute_columns(shifts: ShiftSequence, column: BinarySequence, fill: int = 0) -> BinaryArray:
    """Build the array whose column j is shift(column, shifts[j]), or constant ``fill``."""
    if len(column) != shifts.row_modulus:
        raise DimensionMismatch(
            f"column length {len(column)} != row modulus {shifts.row_modulus}"
        )
    u = len(column)
    cells = np.empty((u, shifts.n_cols), dtype=np.uint8)
    rows = np.arange(u, dtype=np.int64)
    for j, tau in enumerate(shifts.values):
        if tau is None:
            cells[:, j] = fill & 1
        else:
            cells[:, j] = column.bits[(rows + tau) % u]
    return BinaryArray(cells)


@dataclass(frozen=True)
class DotGrid:
    """R x C grid with a set of marked (row, col) cells."""

    R: int
    C: int
    dots: frozenset

    def __post_init__(self):
        dots = frozenset((int(r), int(c)) for r, c in self.dots)
        for r, c in dots:
            if not (0 <= r < self.R and 0 <= c < self.C):
                raise SequenceDesignError(f"dot {(r, c)} outside {self.R}x{self.C}")
        object.__setattr__(self, "dots", dots)

    @classmethod
    def from_shift_sequence(cls, s: ShiftSequence) -> DotGrid:
        dots = {(x, j) for j, x in enumerate(s.values) if x is not None}
        return cls(s.row_modulus, s.n_cols, frozenset(dots))

    def dots_per_row(self) -> list[int]:
        counts = [0] * self.R
        for r, _ in self.dots:
            counts[r] += 1
        return counts

    def dots_per_col(self) -> list[int]:
        counts = [0] * self.C
        for _, c in self.dots:
            counts[c] += 1
        return counts

    def to_array(self) -> BinaryArray:
        cells = np.zeros((self.R, self.C), dtype=np.uint8)
        for r, c in self.dots:
            cells[r, c] = 1
        return BinaryArray(cells)


def rotate_ccw(grid: DotGrid) -> DotGrid:
    """Quarter turn anticlockwise: R x C -> C x R, dot (r, c) -> (C-1-c, r)."""
    return DotGrid(grid.C, grid.R, frozenset((grid.C - 1 - c, r) for r, c in grid.dots))


def to_shift_sequence(grid: DotGrid) -> ShiftSequence:
    """Column j -> row of its dot, or BLANK for an empty column."""
    values: list[Optional[int]] = [BLANK] * grid.C
    for r, c in sorted(grid.dots):
        if values[c] is not None:
            raise MultipleDotsInColumn(f"column {c} holds more than one dot")
        values[c] = r
    return ShiftSequence(tuple(values), grid.R)
