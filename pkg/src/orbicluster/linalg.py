"""Exact linear algebra over the rationals.

Small dense ``Matrix`` values for module maps, plus a sparse elimination
routine for the large, very sparse systems that Hom spaces produce.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["Matrix", "sparse_nullspace", "column_space_rank"]


class Matrix:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data=None):
        self.rows = rows
        self.cols = cols
        if data is None:
            data = [[Fraction(0)] * cols for _ in range(rows)]
        else:
            data = [[Fraction(v) for v in row] for row in data]
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError(f"data does not have shape {rows}x{cols}")
        self.data = data

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n):
        m = cls(n, n)
        for i in range(n):
            m.data[i][i] = Fraction(1)
        return m

    @classmethod
    def from_columns(cls, rows, columns):
        m = cls(rows, len(columns))
        for j, col in enumerate(columns):
            for i in range(rows):
                m.data[i][j] = Fraction(col[i])
        return m

    @property
    def shape(self):
        return (self.rows, self.cols)

    def copy(self):
        return Matrix(self.rows, self.cols, self.data)

    def column(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = Matrix(self.rows, other.cols)
        for i in range(self.rows):
            row = self.data[i]
            target = out.data[i]
            for k, a in enumerate(row):
                if a:
                    other_row = other.data[k]
                    for j in range(other.cols):
                        b = other_row[j]
                        if b:
                            target[j] += a * b
        return out

    def apply(self, vec):
        return [sum((a * b for a, b in zip(row, vec) if a and b), Fraction(0)) for row in self.data]

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        return Matrix(self.rows, self.cols,
                      [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return Matrix(self.rows, self.cols, [[c * a for a in row] for row in self.data])

    def transpose(self):
        return Matrix(self.cols, self.rows, [list(col) for col in zip(*self.data)] if self.rows else
                      [[] for _ in range(self.cols)])

    def is_zero(self):
        return all(not a for row in self.data for a in row)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {self.to_strings()})"

    def to_strings(self):
        return [[str(a) for a in row] for row in self.data]

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return Matrix(self.rows, self.cols + other.cols,
                      [r1 + r2 for r1, r2 in zip(self.data, other.data)])

    def vstack(self, other):
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        return Matrix(self.rows + other.rows, self.cols, self.data + other.data)

    def submatrix(self, rows, cols):
        return Matrix(len(rows), len(cols), [[self.data[i][j] for j in cols] for i in rows])

    def rref(self):
        """Reduced row echelon form and pivot columns."""
        a = [row[:] for row in self.data]
        pivots = []
        r = 0
        for c in range(self.cols):
            piv = next((i for i in range(r, self.rows) if a[i][c]), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            p = a[r][c]
            if p != 1:
                a[r] = [v / p for v in a[r]]
            for i in range(self.rows):
                if i != r and a[i][c]:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return Matrix(self.rows, self.cols, a), pivots

    def rank(self):
        if not self.rows or not self.cols:
            return 0
        return len(self.rref()[1])

    def nullspace(self):
        """Matrix whose columns are a basis of the kernel."""
        rref, pivots = self.rref()
        free = [j for j in range(self.cols) if j not in pivots]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for i, p in enumerate(pivots):
                v[p] = -rref.data[i][f]
            basis.append(v)
        return Matrix.from_columns(self.cols, basis)

    def column_basis(self):
        """Independent columns spanning the column space, as a matrix."""
        if not self.rows:
            return Matrix(0, 0)
        _, pivots = self.rref()
        return self.submatrix(range(self.rows), pivots)

    def solve(self, rhs):
        """Some X with self @ X == rhs; raises when inconsistent."""
        aug = self.hstack(rhs)
        rref, pivots = aug.rref()
        if any(p >= self.cols for p in pivots):
            raise ValueError("inconsistent linear system")
        x = Matrix(self.cols, rhs.cols)
        for i, p in enumerate(pivots):
            for j in range(rhs.cols):
                x.data[p][j] = rref.data[i][self.cols + j]
        return x

    def det(self):
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        a = [row[:] for row in self.data]
        n = self.rows
        det = Fraction(1)
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c]), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            det *= a[c][c]
            for i in range(c + 1, n):
                if a[i][c]:
                    f = a[i][c] / a[c][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return det


def block_diag(blocks):
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = Matrix(rows, cols)
    r = c = 0
    for b in blocks:
        for i in range(b.rows):
            out.data[r + i][c:c + b.cols] = b.data[i]
        r += b.rows
        c += b.cols
    return out


def column_space_rank(mats, rows):
    """Rank of the horizontal concatenation of matrices with ``rows`` rows."""
    total = Matrix(rows, 0)
    for m in mats:
        total = total.hstack(m)
    return total.rank()


def sparse_nullspace(equations, ncols):
    """Kernel basis of a sparse system given as a list of {column: value} rows."""
    pivot_rows = {}  # pivot column -> reduced row (dict), pivot entry 1
    for eq in equations:
        row = {c: Fraction(v) for c, v in eq.items() if v}
        # eliminate existing pivots
        changed = True
        while changed and row:
            changed = False
            for c in list(row):
                if c in pivot_rows and c in row:
                    f = row[c]
                    for cc, vv in pivot_rows[c].items():
                        nv = row.get(cc, 0) - f * vv
                        if nv:
                            row[cc] = nv
                        else:
                            row.pop(cc, None)
                    changed = True
        if not row:
            continue
        p = min(row)
        inv = 1 / row[p]
        row = {c: v * inv for c, v in row.items()}
        # keep rows fully reduced against the new pivot
        for c, prow in pivot_rows.items():
            if p in prow:
                f = prow[p]
                for cc, vv in row.items():
                    nv = prow.get(cc, 0) - f * vv
                    if nv:
                        prow[cc] = nv
                    else:
                        prow.pop(cc, None)
        pivot_rows[p] = row
    free = [j for j in range(ncols) if j not in pivot_rows]
    basis = []
    for f in free:
        v = {f: Fraction(1)}
        for p, prow in pivot_rows.items():
            if f in prow:
                v[p] = -prow[f]
        basis.append(v)
    return basis
