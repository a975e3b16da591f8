"""Exact sparse matrices over Q (and GF(2)) with column reduction.

Columns are stored as ``{row: Fraction}`` dicts. Reductions work on
integer-scaled copies of the columns: scaling a column by a nonzero rational
changes neither the column space pivots nor the kernel dimension.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

import numpy as np

FIELDS = ("q", "f2")


class SparseRationalMatrix:
    """rows x cols matrix, stored by column; explicit zeros are never kept."""

    __slots__ = ("rows", "cols", "columns")

    def __init__(self, rows: int, cols: int, columns: Sequence[Mapping[int, object]] | None = None):
        self.rows = int(rows)
        self.cols = int(cols)
        if columns is None:
            columns = [{} for _ in range(self.cols)]
        if len(columns) != self.cols:
            raise ValueError("one column dict per column required")
        cleaned = []
        for col in columns:
            c = {}
            for r, v in col.items():
                if not 0 <= r < self.rows:
                    raise IndexError(f"row {r} out of range for {self.rows} rows")
                v = Fraction(v)
                if v:
                    c[int(r)] = v
            cleaned.append(c)
        self.columns = cleaned

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Mapping[tuple[int, int], object]):
        columns = [{} for _ in range(cols)]
        for (r, c), v in entries.items():
            if not 0 <= c < cols:
                raise IndexError(f"column {c} out of range for {cols} columns")
            columns[c][r] = v
        return cls(rows, cols, columns)

    @classmethod
    def from_dense(cls, a) -> "SparseRationalMatrix":
        a = [[Fraction(x) for x in row] for row in a]
        rows = len(a)
        cols = len(a[0]) if rows else 0
        return cls.from_entries(rows, cols, {(i, j): a[i][j] for i in range(rows) for j in range(cols)})

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> dict[tuple[int, int], Fraction]:
        return {(r, c): v for c, col in enumerate(self.columns) for r, v in col.items()}

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def is_zero(self) -> bool:
        return all(not c for c in self.columns)

    def to_fractions(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for c, col in enumerate(self.columns):
            for r, v in col.items():
                out[r][c] = v
        return out

    def toarray(self, dtype=np.float64) -> np.ndarray:
        a = np.zeros((self.rows, self.cols), dtype=dtype)
        for c, col in enumerate(self.columns):
            for r, v in col.items():
                a[r, c] = float(v)
        return a

    def transpose(self) -> "SparseRationalMatrix":
        cols = [{} for _ in range(self.rows)]
        for c, col in enumerate(self.columns):
            for r, v in col.items():
                cols[r][c] = v
        return SparseRationalMatrix(self.cols, self.rows, cols)

    @property
    def T(self) -> "SparseRationalMatrix":
        return self.transpose()

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "SparseRationalMatrix":
        rmap = {r: i for i, r in enumerate(rows)}
        new = []
        for c in cols:
            new.append({rmap[r]: v for r, v in self.columns[c].items() if r in rmap})
        return SparseRationalMatrix(len(rows), len(cols), new)

    def __matmul__(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for col in other.columns:
            acc: dict[int, Fraction] = {}
            for k, w in col.items():
                for r, v in self.columns[k].items():
                    acc[r] = acc.get(r, 0) + v * w
            out.append({r: v for r, v in acc.items() if v})
        return SparseRationalMatrix(self.rows, other.cols, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseRationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.columns == other.columns

    def __repr__(self) -> str:
        return f"SparseRationalMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


def _integer_column(col: Mapping[int, Fraction]) -> dict[int, int]:
    den = 1
    for v in col.values():
        den = lcm(den, Fraction(v).denominator)
    return {r: int(Fraction(v) * den) for r, v in col.items()}


def _normalize(col: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in col.values():
        g = gcd(g, v)
        if g == 1:
            return col
    if g > 1:
        return {r: v // g for r, v in col.items()}
    return col


def reduce_columns(columns: Iterable[Mapping[int, object]], field: str = "q", track: bool = False):
    """Standard left-to-right column reduction by lowest (largest) row index.

    Returns ``(lows, kernel)``: ``lows[j]`` is the pivot row of reduced column j
    or -1 if it reduced to zero. With ``track`` over Q, ``kernel`` is a list of
    ``(j, v)`` pairs, one per zero column j, where ``v`` ({col: int}) is a
    kernel vector of the input matrix; the vectors form a basis of the kernel.
    """
    if field == "f2":
        return _reduce_f2(columns, track)
    if field != "q":
        raise ValueError(f"unknown field {field!r}; expected one of {FIELDS}")
    pivot_of: dict[int, int] = {}
    reduced: list[dict[int, int]] = []
    ops: list[dict[int, int]] = []
    lows: list[int] = []
    kernel = []
    for j, col in enumerate(columns):
        c = _integer_column(col)
        v = {j: 1} if track else None
        while c:
            low = max(c)
            k = pivot_of.get(low)
            if k is None:
                break
            ck = reduced[k]
            a, b = ck[low], c[low]
            # c <- a*c - b*ck kills the pivot entry without leaving Z
            new = {r: a * x for r, x in c.items()}
            for r, x in ck.items():
                y = new.get(r, 0) - b * x
                if y:
                    new[r] = y
                else:
                    new.pop(r, None)
            if track:
                nv = {r: a * x for r, x in v.items()}
                for r, x in ops[k].items():
                    y = nv.get(r, 0) - b * x
                    if y:
                        nv[r] = y
                    else:
                        nv.pop(r, None)
                g = 0
                for x in list(new.values()) + list(nv.values()):
                    g = gcd(g, x)
                if g > 1:
                    new = {r: x // g for r, x in new.items()}
                    nv = {r: x // g for r, x in nv.items()}
                v = nv
                c = new
            else:
                c = _normalize(new)
        reduced.append(c)
        if track:
            ops.append(v)
        if c:
            low = max(c)
            pivot_of[low] = j
            lows.append(low)
        else:
            lows.append(-1)
            if track:
                kernel.append((j, v))
    return lows, kernel


def _reduce_f2(columns, track):
    pivot_of: dict[int, int] = {}
    reduced: list[int] = []
    ops: list[int] = []
    lows: list[int] = []
    kernel = []
    for j, col in enumerate(columns):
        c = 0
        for r, x in col.items():
            if Fraction(x).denominator % 2 == 0:
                raise ValueError("entry not defined over GF(2)")
            if Fraction(x).numerator % 2:
                c ^= 1 << r
        v = 1 << j
        while c:
            low = c.bit_length() - 1
            k = pivot_of.get(low)
            if k is None:
                break
            c ^= reduced[k]
            v ^= ops[k]
        reduced.append(c)
        ops.append(v)
        if c:
            low = c.bit_length() - 1
            pivot_of[low] = j
            lows.append(low)
        else:
            lows.append(-1)
            if track:
                kernel.append((j, {i: 1 for i in range(v.bit_length()) if v >> i & 1}))
    return lows, kernel


def rank(m: SparseRationalMatrix, field: str = "q") -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    # reduce along the shorter side
    cols = m.columns if m.cols <= m.rows else m.transpose().columns
    lows, _ = reduce_columns(cols, field)
    return sum(1 for x in lows if x >= 0)


def nullspace(m: SparseRationalMatrix) -> list[dict[int, int]]:
    """Basis of ker(m) over Q as integer vectors ``{col: coeff}``."""
    _, kernel = reduce_columns(m.columns, "q", track=True)
    return [v for _, v in kernel]
