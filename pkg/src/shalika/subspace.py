"""Subspaces of F_p^m in canonical (RREF) form.

A ``Subspace`` stores the nonzero rows of the reduced row echelon form of
any spanning set, so equality of subspaces is equality of bases.

The quotient F_p^{2n} / <e_1..e_n> is modelled as F_p^n through the last
n coordinates; ``project_last`` is that quotient map.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .gf import FieldMismatchError, GF, PrimeField
from .linalg import DimensionError, Matrix, SingularMatrixError, left_kernel, rref_rows

Vector = tuple


class SubspaceError(ValueError):
    pass


@dataclass(frozen=True)
class Subspace:
    field: PrimeField
    ambient: int
    basis: tuple  # RREF rows, no zero rows

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def pivots(self) -> list:
        return [next(c for c, x in enumerate(row) if x) for row in self.basis]

    def basis_matrix(self) -> Matrix:
        return Matrix(self.field, self.dim, self.ambient, self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def reduce(self, v: Sequence[int]) -> Vector:
        """Normal form of v modulo this subspace: v minus its pivot-column part.

        The result vanishes on every pivot column, so its non-pivot entries
        are the coordinates of v + U in the complement spanned by the
        non-pivot standard vectors.
        """
        p = self.p
        out = [x % p for x in v]
        for row, c in zip(self.basis, self.pivots):
            f = out[c]
            if f:
                out = [(x - f * y) % p for x, y in zip(out, row)]
        return tuple(out)

    def coordinates(self, v: Sequence[int]) -> Vector:
        """Coordinates of v in the canonical basis; v must lie in the subspace."""
        if not self.contains(v):
            raise SubspaceError("vector is not in the subspace")
        return tuple(v[c] % self.p for c in self.pivots)

    def __le__(self, other: "Subspace") -> bool:
        _check_compatible(self, other)
        return all(other.contains(v) for v in self.basis)

    def to_json(self) -> dict:
        return {"p": self.p, "ambient": self.ambient, "basis": [list(v) for v in self.basis]}

    @classmethod
    def from_json(cls, doc: dict | str) -> "Subspace":
        if isinstance(doc, str):
            doc = json.loads(doc)
        field = GF(int(doc["p"]))
        ambient = int(doc["ambient"])
        basis = [tuple(v) for v in doc["basis"]]
        u = span(basis, ambient, field)
        if u.basis != tuple(basis):
            raise SubspaceError("basis is not in reduced row echelon form")
        return u

    def __repr__(self):
        return f"Subspace(GF({self.p}), ambient={self.ambient}, basis={[list(v) for v in self.basis]})"


def _check_compatible(u: Subspace, v: Subspace):
    if u.field.p != v.field.p:
        raise FieldMismatchError(f"{u.field} vs {v.field}")
    if u.ambient != v.ambient:
        raise DimensionError(f"ambient dimensions differ: {u.ambient} vs {v.ambient}")


def span(vectors: Iterable[Sequence[int]], ambient: int, field: PrimeField | int) -> Subspace:
    if isinstance(field, int):
        field = GF(field)
    p = field.p
    rows = []
    for v in vectors:
        if len(v) != ambient:
            raise DimensionError(f"vector of length {len(v)} in F^{ambient}")
        rows.append([x % p for x in v])
    _, r = rref_rows(rows, ambient, p)
    return Subspace(field, ambient, tuple(tuple(row) for row in rows[:r]))


def zero(ambient: int, field: PrimeField) -> Subspace:
    return Subspace(field, ambient, ())


def standard(indices: Iterable[int], ambient: int, field: PrimeField) -> Subspace:
    """span(e_i : i in indices), 0-based."""
    return span([unit(i, ambient) for i in indices], ambient, field)


def full(ambient: int, field: PrimeField) -> Subspace:
    return standard(range(ambient), ambient, field)


def unit(i: int, m: int) -> Vector:
    return tuple(int(j == i) for j in range(m))


def column_span(g: Matrix, r: int | None = None) -> Subspace:
    """Span of the first r columns of g (all columns by default)."""
    cols = g.columns()
    if r is not None:
        cols = cols[:r]
    return span(cols, g.rows, g.field)


def sum_(u: Subspace, v: Subspace) -> Subspace:
    _check_compatible(u, v)
    return span(u.basis + v.basis, u.ambient, u.field)


def intersect(u: Subspace, v: Subspace) -> Subspace:
    """U ∩ V from the left kernel of the stacked bases: x·A = y·B."""
    _check_compatible(u, v)
    if not u.dim or not v.dim:
        return zero(u.ambient, u.field)
    p = u.p
    stacked = Matrix(u.field, u.dim + v.dim, u.ambient, u.basis + tuple(tuple(-x % p for x in row) for row in v.basis))
    vecs = []
    for z in left_kernel(stacked):
        x = z[:u.dim]
        vecs.append(tuple(sum(c * row[j] for c, row in zip(x, u.basis)) % p for j in range(u.ambient)))
    return span(vecs, u.ambient, u.field)


def apply(g: Matrix, u: Subspace) -> Subspace:
    if g.field.p != u.p:
        raise FieldMismatchError(f"{g.field} vs {u.field}")
    if g.shape != (u.ambient, u.ambient):
        raise DimensionError(f"{g.shape} matrix cannot act on F^{u.ambient}")
    if not g.is_invertible():
        raise SingularMatrixError("apply needs an invertible matrix")
    return span([g.apply(v) for v in u.basis], u.ambient, u.field)


def project_last(u: Subspace, n: int) -> Subspace:
    """Image of U in F^n under (x_1..x_2n) -> (x_{n+1}..x_{2n})."""
    if u.ambient != 2 * n:
        raise DimensionError(f"ambient {u.ambient} is not 2n for n={n}")
    return span([v[n:] for v in u.basis], n, u.field)


def project_first(u: Subspace, n: int) -> Subspace:
    if u.ambient != 2 * n:
        raise DimensionError(f"ambient {u.ambient} is not 2n for n={n}")
    return span([v[:n] for v in u.basis], n, u.field)


def lift(u: Subspace, y: Sequence[int], n: int) -> Vector:
    """Some w in U whose last-n projection equals y.

    Deterministic: solves c·B_last = y by row reduction over the canonical
    basis B and takes the free coefficients to be zero.
    """
    if u.ambient != 2 * n or len(y) != n:
        raise DimensionError("lift needs U in F^{2n} and y in F^n")
    p = u.p
    d = u.dim
    # columns of the system: unknowns c_1..c_d, augmented by y
    system = [[u.basis[i][n + j] for i in range(d)] + [y[j] % p] for j in range(n)]
    pivots, r = rref_rows(system, d + 1, p)
    if d in pivots:
        raise SubspaceError("vector is not in the projection of U")
    c = [0] * d
    for row, col in zip(system, pivots):
        c[col] = row[d]
    return tuple(sum(ci * row[j] for ci, row in zip(c, u.basis)) % p for j in range(u.ambient))


def independent(vectors: Sequence[Sequence[int]], ambient: int, field: PrimeField) -> bool:
    return span(vectors, ambient, field).dim == len(vectors)


def extend_basis(partial: Sequence[Sequence[int]], target: Subspace) -> list:
    """Vectors completing ``partial`` to a basis of ``target``.

    Candidates are the canonical basis rows of target in order; each is kept
    if it raises the rank.
    """
    partial = [tuple(x % target.p for x in v) for v in partial]
    if not independent(partial, target.ambient, target.field):
        raise SubspaceError("partial set is linearly dependent")
    if not all(target.contains(v) for v in partial):
        raise SubspaceError("partial set is not contained in the target")
    added = []
    current = span(partial, target.ambient, target.field)
    for v in target.basis:
        if current.dim == target.dim:
            break
        if not current.contains(v):
            added.append(v)
            current = span(current.basis + (v,), target.ambient, target.field)
    return added


def grassmannian(m: int, r: int, field: PrimeField | int) -> Iterator[Subspace]:
    """Every r-dimensional subspace of F_p^m, each exactly once (RREF cells)."""
    if isinstance(field, int):
        field = GF(field)
    p = field.p
    for pivots in itertools.combinations(range(m), r):
        pivset = set(pivots)
        free = [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, m) if c not in pivset]
        for values in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * m for _ in range(r)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, c), x in zip(free, values):
                rows[i][c] = x
            yield Subspace(field, m, tuple(map(tuple, rows)))


def gaussian_binomial(m: int, r: int, q: int) -> int:
    if r < 0 or r > m:
        return 0
    num = den = 1
    for i in range(r):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den
