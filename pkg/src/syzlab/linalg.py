"""Dense exact linear algebra over the scalar field.

Entries are ints, Fractions or Cyclotomics; any mix works because the
scalars coerce through their operators. Forward elimination is fraction
free (Bareiss one-step formula) with the pivot row chosen by smallest
coefficient bit-size, then a final normalization pass produces the reduced
row echelon form, which is canonical.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .cyclo import bit_size
from .errors import InvalidInput


class Matrix:
    """Immutable dense matrix, row-major."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data):
        self.rows = rows
        self.cols = cols
        self.data = tuple(tuple(r) for r in data)
        if len(self.data) != rows or any(len(r) != cols for r in self.data):
            raise InvalidInput("matrix shape does not match data")

    @staticmethod
    def from_rows(rows: Iterable[Iterable]) -> "Matrix":
        data = [list(r) for r in rows]
        if not data:
            return Matrix(0, 0, [])
        return Matrix(len(data), len(data[0]), data)

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(
            n, n, [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def zeros(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, [[Fraction(0)] * cols for _ in range(rows)])

    def at(self, i: int, j: int):
        return self.data[i][j]

    def row(self, i: int):
        return self.data[i]

    def column(self, j: int):
        return tuple(r[j] for r in self.data)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, list(zip(*self.data)) if self.data else [[] for _ in range(self.cols)])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise InvalidInput("matmul dimension mismatch")
        bt = other.transpose().data
        out = []
        for r in self.data:
            out.append([sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in bt])
        return Matrix(self.rows, other.cols, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InvalidInput("add dimension mismatch")
        return Matrix(
            self.rows,
            self.cols,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
        )

    def scale(self, c) -> "Matrix":
        return Matrix(self.rows, self.cols, [[c * x for x in r] for r in self.data])

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise InvalidInput("hstack row mismatch")
        return Matrix(
            self.rows,
            self.cols + other.cols,
            [list(a) + list(b) for a, b in zip(self.data, other.data)],
        )

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise InvalidInput("vstack column mismatch")
        return Matrix(self.rows + other.rows, self.cols, list(self.data) + list(other.data))

    def is_zero(self) -> bool:
        return all(not x for r in self.data for x in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(
            a == b for r1, r2 in zip(self.data, other.data) for a, b in zip(r1, r2)
        )

    __hash__ = None

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"


def rref(m: Matrix):
    """Reduced row echelon form.

    Returns (R, pivot_columns, rank). R is canonical: it depends only on the
    row space, so the bit-size pivoting below affects cost, never results.
    """
    rows = [list(r) for r in m.data]
    nrows, ncols = m.rows, m.cols
    pivots = []
    r = 0
    prev = Fraction(1)
    for c in range(ncols):
        if r >= nrows:
            break
        best = None
        best_size = None
        for i in range(r, nrows):
            x = rows[i][c]
            if x:
                s = bit_size(x)
                if best is None or s < best_size:
                    best, best_size = i, s
        if best is None:
            continue
        if best != r:
            rows[r], rows[best] = rows[best], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            x = rows[i][c]
            if x:
                ri, rr = rows[i], rows[r]
                rows[i] = [(piv * a - x * b) / prev for a, b in zip(ri, rr)]
            else:
                ri = rows[i]
                rows[i] = [(piv * a) / prev for a in ri]
        prev = piv
        pivots.append(c)
        r += 1
    # normalization: unit pivots, eliminate above
    for t in range(len(pivots) - 1, -1, -1):
        c = pivots[t]
        piv = rows[t][c]
        rows[t] = [x / piv for x in rows[t]]
        for i in range(t):
            x = rows[i][c]
            if x:
                rows[i] = [a - x * b for a, b in zip(rows[i], rows[t])]
    for t in range(len(pivots), nrows):
        rows[t] = [Fraction(0)] * ncols
    return Matrix(nrows, ncols, rows), tuple(pivots), len(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[2]


def image_dim(m: Matrix) -> int:
    """Dimension of the column space."""
    return rref(m)[2]


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form the canonical basis of the null space."""
    red, pivots, rk = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    cols = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for t, p in enumerate(pivots):
            v[p] = -red.at(t, f)
        cols.append(v)
    assert m.cols == rk + len(free), "rank-nullity violated"
    return Matrix(m.cols, len(free), [list(row) for row in zip(*cols)] if cols else [[] for _ in range(m.cols)])


def column_echelon_basis(m: Matrix) -> Matrix:
    """Canonical basis of the column space (reduced echelon by rows)."""
    red, _, rk = rref(m.transpose())
    return Matrix(rk, m.rows, red.data[:rk]).transpose()


def quotient_dim(ambient_basis: Matrix, sub_basis: Matrix) -> int:
    """dim(ambient / sub) for column-span bases; errors on non-containment."""
    ra = rank(ambient_basis)
    if sub_basis.cols == 0:
        return ra
    joined = ambient_basis.hstack(sub_basis)
    if rank(joined) > ra:
        raise InvalidInput("sub not contained in ambient")
    return ra - rank(sub_basis)


class Span:
    """Incremental sparse row space over ordered hashable keys.

    Vectors are dicts key -> scalar; the pivot of a vector is its largest
    key. Rows are kept normalized (pivot coefficient 1) and reduced against
    each other lazily (only below, which suffices for rank and membership).
    """

    __slots__ = ("rows",)

    def __init__(self):
        self.rows = {}

    def reduce(self, vec: dict) -> dict:
        v = {k: c for k, c in vec.items() if c}
        while v:
            p = max(v)
            row = self.rows.get(p)
            if row is None:
                return v
            c = v[p]
            for k, x in row.items():
                nv = v.get(k, 0) - c * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def add(self, vec: dict) -> bool:
        """Insert vec's residual; True when the span grew."""
        v = self.reduce(vec)
        if not v:
            return False
        p = max(v)
        c = v[p]
        self.rows[p] = {k: x / c for k, x in v.items()}
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    @property
    def dim(self) -> int:
        return len(self.rows)
