"""Small dense matrices over exact scalars, plus the exact helpers built on them.

Entries are GaussianRational or MultiPoly; the two mix freely. Matrices are
immutable after construction.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .poly import MultiPoly
from .scalars import GaussianRational

_SCALARS = (int, Fraction, GaussianRational, MultiPoly)


class NotNilpotentError(ValueError):
    pass


def _coerce_entry(value):
    if isinstance(value, (GaussianRational, MultiPoly)):
        return value
    return GaussianRational.coerce(value)


class DenseMatrix:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        data = tuple(tuple(_coerce_entry(e) for e in row) for row in data)
        if not data or not data[0]:
            raise ValueError("matrices must have at least one row and column")
        if any(len(row) != len(data[0]) for row in data):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", len(data[0]))
        object.__setattr__(self, "data", data)

    def __setattr__(self, name, value):
        raise AttributeError("DenseMatrix is immutable")

    @classmethod
    def zeros(cls, rows, cols=None):
        cols = rows if cols is None else cols
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, size):
        return cls([[1 if i == j else 0 for j in range(size)] for i in range(size)])

    @property
    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, key):
        i, j = key
        return self.data[i][j]

    def __add__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch in matrix addition")
        return DenseMatrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.data, other.data)
            ]
        )

    def __sub__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return DenseMatrix([[-e for e in row] for row in self.data])

    def __mul__(self, other):
        if isinstance(other, DenseMatrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch in matrix product")
            cols = list(zip(*other.data))
            return DenseMatrix(
                [
                    [_dot(row, col) for col in cols]
                    for row in self.data
                ]
            )
        if isinstance(other, _SCALARS):
            return DenseMatrix([[e * other for e in row] for row in self.data])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, _SCALARS):
            return DenseMatrix([[other * e for e in row] for row in self.data])
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            a == b for r1, r2 in zip(self.data, other.data) for a, b in zip(r1, r2)
        )

    __hash__ = None

    @property
    def is_zero(self):
        return all(not e for row in self.data for e in row)

    def transpose(self):
        return DenseMatrix(list(zip(*self.data)))

    def conjugate_transpose(self):
        return DenseMatrix([[e.conj() for e in row] for row in zip(*self.data)])

    def apply(self, vector):
        """Matrix times a column vector given as a sequence; returns a tuple."""
        if len(vector) != self.cols:
            raise ValueError("dimension mismatch in matrix-vector product")
        return tuple(_dot(row, vector) for row in self.data)

    def subs(self, assignments):
        return DenseMatrix(
            [
                [e.subs(assignments) if isinstance(e, MultiPoly) else e for e in row]
                for row in self.data
            ]
        )

    def __str__(self):
        rendered = [[str(e) for e in row] for row in self.data]
        width = max(len(s) for row in rendered for s in row)
        return "\n".join(
            "[" + "  ".join(s.rjust(width) for s in row) + "]" for row in rendered
        )

    def __repr__(self):
        return f"DenseMatrix({self.rows}x{self.cols})"


def _dot(row, col):
    acc = None
    for a, b in zip(row, col):
        p = a * b
        acc = p if acc is None else acc + p
    return acc


def commutator(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    """[a, b] = a b - b a for square matrices of equal size."""
    if not (a.is_square and b.is_square and a.rows == b.rows):
        raise ValueError("dimension mismatch in commutator")
    return a * b - b * a


def exp_nilpotent(m: DenseMatrix) -> DenseMatrix:
    """Exact exponential of a nilpotent matrix.

    Sums m**k / k! while the powers are nonzero and raises
    NotNilpotentError if m**rows is not exactly zero, so no truncation can
    ever happen silently.
    """
    if not m.is_square:
        raise ValueError("exp_nilpotent needs a square matrix")
    acc = DenseMatrix.identity(m.rows)
    power = acc
    for k in range(1, m.rows + 1):
        power = power * m
        if power.is_zero:
            return acc
        if k == m.rows:
            raise NotNilpotentError("matrix is not nilpotent")
        acc = acc + power * Fraction(1, factorial(k))
    return acc


def exact_ldl(matrix):
    """Exact LDL pivots of a symmetric matrix of Fractions.

    Uses symmetric pivoting on the diagonal. Returns (pivots, completed):
    completed is False when a nonzero remainder has an all-zero diagonal,
    which already rules out positive definiteness. Pivots are reported in
    elimination order; the verdict helpers below interpret them.
    """
    a = [list(map(Fraction, row)) for row in matrix]
    size = len(a)
    if any(len(row) != size for row in a):
        raise ValueError("matrix must be square")
    for i in range(size):
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix must be symmetric")
    remaining = list(range(size))
    pivots = []
    while remaining:
        pivot_idx = next((i for i in remaining if a[i][i] != 0), None)
        if pivot_idx is None:
            if all(a[i][j] == 0 for i in remaining for j in remaining):
                pivots.extend(Fraction(0) for _ in remaining)
                return pivots, True
            return pivots, False
        remaining.remove(pivot_idx)
        p = a[pivot_idx][pivot_idx]
        pivots.append(p)
        factors = {i: a[i][pivot_idx] / p for i in remaining}
        for i in remaining:
            f = factors[i]
            if f == 0:
                continue
            for j in remaining:
                a[i][j] -= f * a[pivot_idx][j]
    return pivots, True


def is_positive_definite(matrix) -> tuple:
    """Exact positive-definiteness verdict and pivot list for Fractions."""
    pivots, completed = exact_ldl(matrix)
    verdict = completed and len(pivots) == len(matrix) and all(p > 0 for p in pivots)
    return verdict, pivots
