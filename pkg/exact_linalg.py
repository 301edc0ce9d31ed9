"""
Exact rational linear algebra.

Scalars are fractions.Fraction; matrices are small dense immutable grids.
Every elimination pivots on the first nonzero entry (column by column, top row
first), so results are reproducible bit for bit.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from sasaki_errors import NotSymmetric

Scalar = Fraction
Vector = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_scalar(value) -> Fraction:
    """Coerce int, Fraction or "num/den" text to an exact scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"Cannot use {type(value).__name__} as an exact scalar")


def format_scalar(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# --- vectors -----------------------------------------------------------------

def vector(values: Iterable) -> Vector:
    return tuple(to_scalar(v) for v in values)


def unit(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), ZERO)


def is_zero(v: Iterable[Fraction]) -> bool:
    return all(a == 0 for a in v)


# --- matrices ----------------------------------------------------------------

class Matrix:
    """Immutable dense matrix of Fractions. m[i, j] is row i, column j."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: Iterable[Iterable], cols: int | None = None):
        data = tuple(tuple(to_scalar(x) for x in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != cols:
                raise ValueError(f"Ragged matrix: expected {cols} columns, got {len(row)}")
        self.rows = len(data)
        self.cols = cols
        self._data = data

    # constructors
    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls([[ZERO] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def diagonal(cls, entries: Sequence) -> "Matrix":
        n = len(entries)
        return cls([[to_scalar(entries[i]) if i == j else ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls([[columns[j][i] for j in range(len(columns))] for i in range(rows)], len(columns))

    @classmethod
    def outer(cls, v: Sequence, w: Sequence) -> "Matrix":
        """v ⊗ w, i.e. the endomorphism x -> w(x) v."""
        return cls([[to_scalar(a) * to_scalar(b) for b in w] for a in v], len(w))

    # access
    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    @property
    def T(self) -> "Matrix":
        return Matrix([[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)], self.rows)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self._data[i][j] == self._data[j][i] for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def trace(self) -> Fraction:
        return sum((self._data[i][i] for i in range(min(self.rows, self.cols))), ZERO)

    # arithmetic
    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], self.cols)

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self._data], self.cols)

    def __mul__(self, c) -> "Matrix":
        c = to_scalar(c)
        return Matrix([[c * a for a in r] for r in self._data], self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"Shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
            ocols = other.columns()
            return Matrix([[dot(r, c) for c in ocols] for r in self._data], other.cols)
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError(f"Vector of length {len(v)} does not fit {self.rows}x{self.cols}")
        return tuple(dot(r, v) for r in self._data)

    def apply(self, v: Sequence[Fraction]) -> Vector:
        return self @ v

    def _same_shape(self, other: "Matrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(f"Shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.cols == other.cols and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self._data)
        return f"Matrix({self.rows}x{self.cols}: {body})"


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


def block_diagonal(*blocks: Matrix) -> Matrix:
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    out = [[ZERO] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r0 + i][c0 + j] = b[i, j]
        r0 += b.rows
        c0 += b.cols
    return Matrix(out, m)


# --- elimination -------------------------------------------------------------

def row_reduce(m: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = m.to_lists()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        i = next((k for k in range(r, m.rows) if a[k][c] != 0), None)
        if i is None:
            continue
        a[r], a[i] = a[i], a[r]
        p = a[r][c]
        if p != 1:
            a[r] = [x / p for x in a[r]]
        for k in range(m.rows):
            if k != r and a[k][c] != 0:
                f = a[k][c]
                a[k] = [x - f * y for x, y in zip(a[k], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Matrix) -> int:
    return len(row_reduce(m)[1])


def kernel(m: Matrix) -> list[Vector]:
    """Basis of {v : m v = 0}, one vector per free column in increasing order."""
    a, pivots = row_reduce(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -a[r][f]
        basis.append(tuple(v))
    return basis


def solve(m: Matrix, b: Sequence) -> tuple[Vector, list[Vector]] | None:
    """Particular solution of m x = b plus a kernel basis, or None if inconsistent."""
    b = vector(b)
    if len(b) != m.rows:
        raise ValueError(f"Right-hand side has length {len(b)}, matrix has {m.rows} rows")
    aug = Matrix([list(m.row(i)) + [b[i]] for i in range(m.rows)], m.cols + 1)
    a, pivots = row_reduce(aug)
    if m.cols in pivots:
        return None
    x = [ZERO] * m.cols
    for r, p in enumerate(pivots):
        x[p] = a[r][m.cols]
    return tuple(x), kernel(m)


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise ValueError("Only square matrices can be inverted")
    n = m.rows
    aug = Matrix([list(m.row(i)) + list(unit(n, i)) for i in range(n)], 2 * n)
    a, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("Matrix is singular")
    return Matrix([row[n:] for row in a], n)


def determinant(m: Matrix) -> Fraction:
    if not m.is_square():
        raise ValueError("Determinant needs a square matrix")
    a = m.to_lists()
    n = m.rows
    det = ONE
    for c in range(n):
        i = next((k for k in range(c, n) if a[k][c] != 0), None)
        if i is None:
            return ZERO
        if i != c:
            a[c], a[i] = a[i], a[c]
            det = -det
        det *= a[c][c]
        for k in range(c + 1, n):
            if a[k][c] != 0:
                f = a[k][c] / a[c][c]
                a[k] = [x - f * y for x, y in zip(a[k], a[c])]
    return det


# --- subspaces ---------------------------------------------------------------


def independent_subset(vectors: Sequence[Sequence[Fraction]], n: int) -> list[Vector]:
    """First maximal linearly independent subfamily, in the given order."""
    if not vectors:
        return []
    _, pivots = row_reduce(Matrix.from_columns(vectors, n))
    return [tuple(vectors[p]) for p in pivots]


def coordinates(v: Sequence[Fraction], basis: Sequence[Sequence[Fraction]]) -> Vector | None:
    """Coefficients of v in the (independent) basis, or None if v is outside the span."""
    n = len(v)
    if not basis:
        return () if is_zero(v) else None
    res = solve(Matrix.from_columns(basis, n), v)
    return None if res is None else res[0]


def in_span(v: Sequence[Fraction], basis: Sequence[Sequence[Fraction]]) -> bool:
    return coordinates(v, basis) is not None


def contains(big: Sequence[Sequence[Fraction]], small: Sequence[Sequence[Fraction]]) -> bool:
    return all(in_span(v, big) for v in small)


def extend_to_basis(partial: Sequence[Sequence[Fraction]], n: int) -> list[Vector]:
    """partial followed by the standard vectors needed to reach dimension n."""
    return independent_subset(list(partial) + [unit(n, i) for i in range(n)], n)


# --- signatures --------------------------------------------------------------

class Signature(NamedTuple):
    plus: int
    minus: int
    zero: int

    @property
    def nondegenerate(self) -> bool:
        return self.zero == 0


def congruence_signature(g: Matrix) -> Signature:
    """Sylvester inertia of a symmetric matrix by symmetric Gaussian congruence."""
    if not g.is_symmetric():
        raise NotSymmetric("Metric matrix is not symmetric")
    n = g.rows
    a = g.to_lists()
    active = list(range(n))
    plus = minus = 0
    while active:
        p = next((i for i in active if a[i][i] != 0), None)
        if p is None:
            pair = next(((i, j) for i in active for j in active if i < j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # e_i += e_j makes the (i, i) entry 2 a[i][j]
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            p = i
        d = a[p][p]
        if d > 0:
            plus += 1
        else:
            minus += 1
        active.remove(p)
        pivot_row = list(a[p])
        for i in active:
            if pivot_row[i]:
                f = pivot_row[i] / d
                for j in active:
                    a[i][j] -= f * pivot_row[j]
    return Signature(plus, minus, n - plus - minus)
