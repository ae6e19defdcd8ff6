"""Dense exact matrices over a prime field.

Vectors are columns and matrices act on the left. Entries are stored as
plain residues in [0, p) for speed; ``Matrix.element`` hands back a
``FieldElement`` when one is wanted.
"""

from __future__ import annotations

import json
import operator
import random
import struct
from dataclasses import dataclass
from typing import Iterable, Sequence

from .gf import FieldElement, FieldMismatchError, GF, PrimeField


class DimensionError(ValueError):
    pass


class SingularMatrixError(ArithmeticError):
    pass


Rows = tuple  # tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Matrix:
    field: PrimeField
    rows: int
    cols: int
    data: Rows

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(row) != self.cols for row in self.data):
            raise DimensionError(f"entries do not match shape {self.rows}x{self.cols}")

    # -- construction -------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], field: PrimeField | int, cols: int | None = None):
        if isinstance(field, int):
            field = GF(field)
        p = field.p
        data = tuple(tuple(int(x) % p for x in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(field, len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], field: PrimeField, rows: int | None = None):
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls.from_rows(zip(*columns), field, cols=len(columns)) if columns else cls.zeros(rows, 0, field)

    @classmethod
    def identity(cls, n: int, field: PrimeField):
        return cls(field, n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int, field: PrimeField):
        return cls(field, rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def permutation(cls, images: Sequence[int], field: PrimeField):
        """Matrix sending e_j to e_{images[j]} (0-based images)."""
        m = len(images)
        data = [[0] * m for _ in range(m)]
        for j, i in enumerate(images):
            data[i][j] = 1
        return cls(field, m, m, tuple(map(tuple, data)))

    @classmethod
    def block_diag(cls, *blocks: "Matrix"):
        field = blocks[0].field
        m = sum(b.rows for b in blocks)
        c = sum(b.cols for b in blocks)
        data = [[0] * c for _ in range(m)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b.data):
                data[r0 + i][c0:c0 + b.cols] = row
            r0 += b.rows
            c0 += b.cols
        return cls(field, m, c, tuple(map(tuple, data)))

    @classmethod
    def from_blocks(cls, grid: Sequence[Sequence["Matrix"]]):
        field = grid[0][0].field
        data = []
        for brow in grid:
            for i in range(brow[0].rows):
                data.append(tuple(x for b in brow for x in b.data[i]))
        return cls.from_rows(data, field, cols=sum(b.cols for b in grid[0]))

    # -- access -------------------------------------------------------

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def element(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.data[i][j], self.field)

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.data)

    def columns(self) -> list:
        return [tuple(col) for col in zip(*self.data)] if self.rows else [()] * self.cols

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return Matrix(self.field, r1 - r0, c1 - c0, tuple(row[c0:c1] for row in self.data[r0:r1]))

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows, tuple(map(tuple, zip(*self.data))) if self.rows and self.cols
                      else tuple((0,) * self.rows for _ in range(self.cols)))

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic ---------------------------------------------------

    def _same_field(self, other: "Matrix"):
        if other.field.p != self.field.p:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        p = self.p
        return Matrix(self.field, self.rows, self.cols,
                      tuple(tuple((a + b) % p for a, b in zip(ra, rb)) for ra, rb in zip(self.data, other.data)))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mul(self, other)

    def scale(self, c: int) -> "Matrix":
        p = self.p
        return Matrix(self.field, self.rows, self.cols, tuple(tuple(c * x % p for x in row) for row in self.data))

    def apply(self, v: Sequence[int]) -> tuple:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for {self.shape} matrix")
        p = self.p
        return tuple(sum(a * b for a, b in zip(row, v)) % p for row in self.data)

    def inverse(self) -> "Matrix":
        return inverse(self)

    def rank(self) -> int:
        return rref(self)[2]

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    def encode(self) -> bytes:
        """Canonical byte string: dimensions, then row-major residues."""
        flat = [x for row in self.data for x in row]
        return struct.pack(f"<HH{len(flat)}H", self.rows, self.cols, *flat)

    # -- serialization ------------------------------------------------

    def to_json(self) -> dict:
        return {"p": self.p, "rows": self.rows, "cols": self.cols, "entries": [list(row) for row in self.data]}

    @classmethod
    def from_json(cls, doc: dict | str) -> "Matrix":
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            p, rows, cols, entries = int(doc["p"]), int(doc["rows"]), int(doc["cols"]), doc["entries"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed matrix document: {exc}") from exc
        field = GF(p)
        if len(entries) != rows or any(len(row) != cols for row in entries):
            raise DimensionError("entries do not match declared rows/cols")
        for row in entries:
            for x in row:
                if not isinstance(x, int) or not 0 <= x < p:
                    raise ValueError(f"entry {x!r} is not a residue in [0, {p})")
        return cls(field, rows, cols, tuple(tuple(row) for row in entries))

    def pretty(self) -> str:
        width = len(str(self.p - 1))
        return "\n".join("[" + " ".join(str(x).rjust(width) for x in row) + "]" for row in self.data)

    def __repr__(self):
        return f"Matrix(GF({self.p}), {[list(r) for r in self.data]})"


def mul(a: Matrix, b: Matrix) -> Matrix:
    a._same_field(b)
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    p = a.p
    bt = list(zip(*b.data)) if b.rows else [()] * b.cols
    dot = operator.mul
    data = tuple(tuple(sum(map(dot, row, col)) % p for col in bt) for row in a.data)
    return Matrix(a.field, a.rows, b.cols, data)


def rref_rows(rows: list, ncols: int, p: int):
    """Row-reduce a list of int lists in place. Returns (pivots, rank)."""
    inv = GF(p).inv
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r, nrows):
            if rows[i][c]:
                break
        else:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        pr = rows[r]
        s = inv(pr[c])
        if s != 1:
            pr = rows[r] = [x * s % p for x in pr]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [(x - f * y) % p for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return pivots, r


def rref(m: Matrix):
    """Reduced row echelon form of m, with pivot columns and rank."""
    rows = [list(row) for row in m.data]
    pivots, rank = rref_rows(rows, m.cols, m.p)
    return Matrix(m.field, m.rows, m.cols, tuple(map(tuple, rows))), pivots, rank


def rank(m: Matrix) -> int:
    return rref(m)[2]


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise DimensionError(f"cannot invert non-square {m.shape} matrix")
    n = m.rows
    rows = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(m.data)]
    pivots, r = rref_rows(rows, n, m.p)
    if r < n:
        raise SingularMatrixError(f"matrix has rank {r} < {n}")
    return Matrix(m.field, n, n, tuple(tuple(row[n:]) for row in rows))


def left_kernel(m: Matrix) -> list:
    """Basis of {x : x^T m = 0}, as tuples of length m.rows."""
    n = m.rows
    rows = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(m.data)]
    _, r = rref_rows(rows, m.cols, m.p)
    # rows below the rank have zero left part; their right parts span the kernel
    return [tuple(row[m.cols:]) for row in rows[r:]]


def _check_square(g: Matrix):
    if not g.is_square():
        raise DimensionError(f"expected a square matrix, got {g.shape}")


def is_in_parabolic(g: Matrix, r: int) -> bool:
    """Block upper triangular with an r x r leading block (lower-left block zero)."""
    _check_square(g)
    m = g.rows
    if not 1 <= r < m:
        raise ValueError(f"need 1 <= r < {m}, got r={r}")
    return all(not any(row[:r]) for row in g.data[r:])


def is_in_shalika(g: Matrix, n: int | None = None) -> bool:
    """g = [[h, x], [0, h]] with h invertible."""
    _check_square(g)
    if g.rows % 2:
        raise DimensionError(f"Shalika subgroup lives in even dimension, got {g.rows}")
    if n is None:
        n = g.rows // 2
    if 2 * n != g.rows:
        raise DimensionError(f"matrix of size {g.rows} is not 2n for n={n}")
    top, bottom = g.data[:n], g.data[n:]
    if any(any(row[:n]) for row in bottom):
        return False
    if any(t[:n] != b[n:] for t, b in zip(top, bottom)):
        return False
    return g.block(0, n, 0, n).is_invertible()


# -- random group elements (explicit rng, no global state) ----------------

def random_matrix(rows: int, cols: int, field: PrimeField, rng: random.Random) -> Matrix:
    p = field.p
    return Matrix(field, rows, cols, tuple(tuple(rng.randrange(p) for _ in range(cols)) for _ in range(rows)))


def random_invertible(n: int, field: PrimeField, rng: random.Random) -> Matrix:
    while True:
        g = random_matrix(n, n, field, rng)
        if g.is_invertible():
            return g


def random_shalika(n: int, field: PrimeField, rng: random.Random) -> Matrix:
    h = random_invertible(n, field, rng)
    x = random_matrix(n, n, field, rng)
    return Matrix.from_blocks([[h, x], [Matrix.zeros(n, n, field), h]])


def random_parabolic(m: int, r: int, field: PrimeField, rng: random.Random) -> Matrix:
    g1 = random_invertible(r, field, rng)
    g2 = random_invertible(m - r, field, rng)
    x = random_matrix(r, m - r, field, rng)
    return Matrix.from_blocks([[g1, x], [Matrix.zeros(m - r, r, field), g2]])
