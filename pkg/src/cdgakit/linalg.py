"""Exact linear algebra over Q.

Matrices are stored sparsely as ``{(row, col): Fraction}``.  Elimination
clears denominators row by row and runs the integer kernel from
:mod:`cdgakit.elimination`; row scaling changes neither the row space nor
the null space, so every result is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from . import elimination

Vector = tuple[Fraction, ...]


class ContainmentError(ValueError):
    """A subspace expected to lie inside another does not."""


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            v = Fraction(v)
            if v:
                clean[(i, j)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        nrows = len(data)
        ncols = cols if cols is not None else (len(data[0]) if nrows else 0)
        entries = {}
        for i, row in enumerate(data):
            if len(row) != ncols:
                raise ValueError("ragged dense matrix")
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = v
        return cls(nrows, ncols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RationalMatrix":
        entries = {}
        for j, col in enumerate(columns):
            for i, v in enumerate(col):
                if v:
                    entries[(i, j)] = v
        return cls(rows, len(columns), entries)

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def __eq__(self, other):
        return (
            isinstance(other, RationalMatrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def apply(self, vec: Sequence) -> list[Fraction]:
        out = [Fraction(0)] * self.rows
        for (i, j), v in self.entries.items():
            if vec[j]:
                out[i] += v * vec[j]
        return out


def _integer_rows(dense_rows: Iterable[Sequence], ncols: int) -> list[list[int]]:
    out = []
    for row in dense_rows:
        den = 1
        for v in row:
            if v:
                den = lcm(den, Fraction(v).denominator)
        irow = [int(Fraction(v) * den) for v in row]
        if any(irow):
            out.append(irow)
    return out


def _echelon_rows(dense_rows: Iterable[Sequence], ncols: int) -> tuple[list[Vector], list[int]]:
    """Reduced row echelon form (pivots equal to 1) of the given rows."""
    irows, pivots = elimination.echelon(_integer_rows(dense_rows, ncols), ncols)
    out = []
    for row, c in zip(irows, pivots):
        p = row[c]
        out.append(tuple(Fraction(v, p) for v in row))
    return out, pivots


@dataclass(frozen=True)
class RREF:
    matrix: RationalMatrix
    rank: int
    pivots: tuple[int, ...]


def rref(m: RationalMatrix) -> RREF:
    rows, pivots = _echelon_rows(m.to_dense(), m.cols)
    dense = list(rows) + [(Fraction(0),) * m.cols] * (m.rows - len(rows))
    return RREF(RationalMatrix.from_dense(dense, m.cols), len(rows), tuple(pivots))


def rank(m: RationalMatrix) -> int:
    if not m.entries:
        return 0
    return rref(m).rank


@dataclass(frozen=True)
class SubspaceBasis:
    """Subspace of Q^ambient held in reduced row echelon form."""

    ambient: int
    vectors: tuple[Vector, ...] = ()
    pivots: tuple[int, ...] = ()

    @classmethod
    def span(cls, ambient: int, vectors: Iterable[Sequence]) -> "SubspaceBasis":
        vecs = [tuple(Fraction(v) for v in vec) for vec in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient}")
        rows, pivots = _echelon_rows(vecs, ambient)
        return cls(ambient, tuple(rows), tuple(pivots))

    @classmethod
    def full(cls, ambient: int) -> "SubspaceBasis":
        return cls.span(ambient, [[1 if i == j else 0 for j in range(ambient)] for i in range(ambient)])

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def reduce(self, vec: Sequence) -> list[Fraction]:
        """Remainder of ``vec`` after clearing every pivot coordinate."""
        out = [Fraction(v) for v in vec]
        for row, c in zip(self.vectors, self.pivots):
            f = out[c]
            if f:
                for j, v in enumerate(row):
                    if v:
                        out[j] -= f * v
        return out

    def contains(self, vec: Sequence) -> bool:
        return not any(self.reduce(vec))

    def coordinates(self, vec: Sequence) -> list[Fraction] | None:
        """Coefficients of ``vec`` in this echelon basis, or None if outside."""
        if not self.contains(vec):
            return None
        return [Fraction(vec[c]) for c in self.pivots]

    def extend(self, vectors: Iterable[Sequence]) -> "SubspaceBasis":
        return SubspaceBasis.span(self.ambient, list(self.vectors) + [tuple(v) for v in vectors])


def kernel_basis(m: RationalMatrix) -> SubspaceBasis:
    """Null space of ``m``; one vector per free column, in column order."""
    result = rref(m)
    dense = result.matrix.to_dense()
    pivots = result.pivots
    pivot_set = set(pivots)
    vectors = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            if dense[r][f]:
                v[c] = -dense[r][f]
        vectors.append(v)
    return SubspaceBasis.span(m.cols, vectors)


def image_basis(m: RationalMatrix) -> SubspaceBasis:
    """Column space of ``m`` as a subspace of Q^rows."""
    return SubspaceBasis.span(m.rows, m.transpose().to_dense())


def quotient_dim(big: SubspaceBasis, sub: SubspaceBasis) -> int:
    if big.ambient != sub.ambient:
        raise ValueError("subspaces live in different ambient spaces")
    for v in sub.vectors:
        if not big.contains(v):
            raise ContainmentError("sub is not contained in big")
    return big.dim - sub.dim


def solve(columns: Sequence[Sequence], target: Sequence) -> list[Fraction] | None:
    """Some ``x`` with ``sum(x[j] * columns[j]) == target``, or None.

    Free variables are set to zero, so the answer is unique whenever the
    columns are independent.
    """
    n = len(target)
    k = len(columns)
    aug = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    rows, pivots = _echelon_rows(aug, k + 1)
    if pivots and pivots[-1] == k:
        return None
    x = [Fraction(0)] * k
    for row, c in zip(rows, pivots):
        x[c] = row[k]
    return x
