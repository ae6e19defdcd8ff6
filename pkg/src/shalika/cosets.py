"""(Shalika, maximal parabolic) double cosets of GL_2n(F_p).

Notation: V = F_p^{2n}, W0 = <e_1..e_n>, and j0 : W0 -> V/W0 sends e_i to
e_{n+i} + W0. With V/W0 modelled by the last n coordinates, j0 is the
identity between the first and last coordinate blocks. S is the stabilizer
of (W0, j0) and P_{r,2n-r} the stabilizer of <e_1..e_r>, so the double coset
of g is determined by the position of W = g<e_1..e_r> relative to (W0, j0).
Two integers capture that position:

    k = dim(W ∩ W0)
    l = dim(j0(W ∩ W0) ∩ (W + W0)/W0)
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .gf import GF, PrimeField
from .linalg import (
    DimensionError,
    Matrix,
    SingularMatrixError,
    inverse,
    is_in_parabolic,
    is_in_shalika,
)
from . import subspace as sp
from .subspace import Subspace


class LabelError(ValueError):
    pass


class DecompositionError(RuntimeError):
    """A decomposition failed its own post-check; indicates a bug."""


def _field(field: PrimeField | int) -> PrimeField:
    return GF(field) if isinstance(field, int) else field


def check_nr(n: int, r: int):
    if not (isinstance(n, int) and isinstance(r, int)) or n < 1 or not 1 <= r < 2 * n:
        raise LabelError(f"need n >= 1 and 1 <= r < 2n, got n={n}, r={r}")


def alpha_beta_gamma(n: int, r: int):
    return max(0, r - n), r // 2, min(r, n)


@dataclass(frozen=True, order=True)
class CosetLabel:
    k: int
    l: int
    n: int = dc_field(compare=True)
    r: int = dc_field(compare=True)

    def __post_init__(self):
        check_nr(self.n, self.r)
        a, _, g = alpha_beta_gamma(self.n, self.r)
        if not a <= self.k <= g:
            raise LabelError(f"k={self.k} outside [{a}, {g}] for n={self.n}, r={self.r}")
        if not a <= self.l <= min(self.k, self.r - self.k):
            raise LabelError(f"l={self.l} outside [{a}, {min(self.k, self.r - self.k)}] for k={self.k}")

    @property
    def alpha(self) -> int:
        return max(0, self.r - self.n)

    def as_tuple(self):
        return (self.k, self.l)

    def to_json(self) -> dict:
        return {"k": self.k, "l": self.l}

    @classmethod
    def _trusted(cls, k: int, l: int, n: int, r: int) -> "CosetLabel":
        # skips validation; callers guarantee the bounds
        lab = object.__new__(cls)
        object.__setattr__(lab, "k", k)
        object.__setattr__(lab, "l", l)
        object.__setattr__(lab, "n", n)
        object.__setattr__(lab, "r", r)
        return lab


def kl_bounds(n: int, r: int) -> list:
    """All labels (k, l) for (n, r), lexicographically ordered."""
    check_nr(n, r)
    a, _, g = alpha_beta_gamma(n, r)
    return [CosetLabel._trusted(k, l, n, r) for k in range(a, g + 1) for l in range(a, min(k, r - k) + 1)]


def count(n: int, r: int) -> int:
    """Closed-form number of double cosets."""
    check_nr(n, r)
    a, b, g = alpha_beta_gamma(n, r)
    num = (b - a + 1) * (b - a + 2) + (g - b) * (g - b + 1)
    assert num % 2 == 0
    return num // 2


# -- permutation matrices from block layouts ------------------------------

def assemble_permutation(row_sizes: Sequence[int], col_sizes: Sequence[int], placement: Sequence[int]) -> list:
    """0-based images of the block permutation matrix.

    Row block i carries an identity block in column block placement[i].
    Zero-size blocks contribute nothing.
    """
    row_off = [0]
    for s in row_sizes:
        row_off.append(row_off[-1] + s)
    col_off = [0]
    for s in col_sizes:
        col_off.append(col_off[-1] + s)
    m = row_off[-1]
    if col_off[-1] != m or sorted(placement) != list(range(len(col_sizes))):
        raise ValueError("inconsistent block layout")
    images = [None] * m
    for i, c in enumerate(placement):
        if row_sizes[i] != col_sizes[c]:
            raise ValueError(f"row block {i} and column block {c} differ in size")
        for t in range(row_sizes[i]):
            images[col_off[c] + t] = row_off[i] + t
    return images


def representative_images(label: CosetLabel) -> list:
    n, r, k, l = label.n, label.r, label.k, label.l
    rows = [k, n - k, l, k - l, r - k - l, n - r + l]
    cols = [k, l, r - k - l, n - k, k - l, n - r + l]
    return assemble_permutation(rows, cols, [0, 3, 1, 4, 2, 5])


def representative(label: CosetLabel, field: PrimeField | int = 2) -> Matrix:
    """The permutation matrix w_{k,l}."""
    return Matrix.permutation(representative_images(label), _field(field))


def model_subspace(label: CosetLabel, field: PrimeField | int = 2) -> Subspace:
    """W_{k,l} = <e_1..e_k, e_{n+1}..e_{n+l}, e_{n+k+1}..e_{n+r-l}> = w_{k,l}<e_1..e_r>."""
    n, r, k, l = label.n, label.r, label.k, label.l
    idx = list(range(k)) + list(range(n, n + l)) + list(range(n + k, n + r - l))
    return sp.standard(idx, 2 * n, _field(field))


def sigma_images(label: CosetLabel) -> list:
    n, r, k, l, a = label.n, label.r, label.k, label.l, label.alpha
    rows = [k, n - k, a, l - a, k - l, r - k - l, l - a, n - r + a]
    cols = [k, n - k, a, k - l, l - a, l - a, r - k - l, n - r + a]
    return assemble_permutation(rows, cols, [0, 1, 2, 5, 3, 6, 4, 7])


def sigma(label: CosetLabel, field: PrimeField | int = 2) -> Matrix:
    """sigma_{k,l} in GL_n x GL_n, with sigma_{k,l} w_{k,alpha} = w_{k,l}."""
    return Matrix.permutation(sigma_images(label), _field(field))


def is_in_j_k_alpha(g: Matrix, n: int, r: int, k: int) -> bool:
    """Membership in w_{k,a} P_{r,2n-r} w_{k,a}^{-1} ∩ P_{n,n}, a = max(0, r-n)."""
    check_nr(n, r)
    if g.shape != (2 * n, 2 * n):
        raise DimensionError(f"expected a {2 * n}x{2 * n} matrix, got {g.shape}")
    w = representative(CosetLabel(k, max(0, r - n), n, r), g.field)
    if not is_in_parabolic(g, n):
        return False
    # w is a permutation matrix, so w^{-1} = w^T
    return is_in_parabolic(w.T @ g @ w, r)


def j_k_alpha_mask(n: int, r: int, k: int) -> list:
    """Allowed-nonzero pattern of J_{k,alpha} as a 2n x 2n boolean grid."""
    a = max(0, r - n)
    sizes = [k, n - k, a, k - a, r - k - a, n - r + a]
    # rows blocks x column blocks; True = free entry
    star = [
        [1, 1, 1, 1, 1, 1],
        [0, 1, 0, 1, 0, 1],
        [0, 0, 1, 1, 1, 1],
        [0, 0, 0, 1, 0, 1],
        [0, 0, 1, 1, 1, 1],
        [0, 0, 0, 1, 0, 1],
    ]
    idx = [b for b, s in enumerate(sizes) for _ in range(s)]
    return [[bool(star[bi][bj]) for bj in idx] for bi in idx]


# -- classification -------------------------------------------------------

def _w0(n: int, field: PrimeField) -> Subspace:
    return sp.standard(range(n), 2 * n, field)


def invariants(W: Subspace, n: int):
    """(k, l) of a subspace W of F^{2n} relative to (W0, j0)."""
    if W.ambient != 2 * n:
        raise DimensionError(f"ambient {W.ambient} is not 2n for n={n}")
    K = sp.intersect(W, _w0(n, W.field))
    jK = sp.span([v[:n] for v in K.basis], n, W.field)
    return K.dim, sp.intersect(jK, sp.project_last(W, n)).dim


def classify_subspace(W: Subspace, n: int) -> CosetLabel:
    k, l = invariants(W, n)
    return CosetLabel(k, l, n, W.dim)


def _check_group_element(g: Matrix, n: int, r: int):
    check_nr(n, r)
    if g.shape != (2 * n, 2 * n):
        raise DimensionError(f"expected a {2 * n}x{2 * n} matrix, got {g.shape}")
    if not g.is_invertible():
        raise SingularMatrixError("matrix is not invertible")


def classify(g: Matrix, n: int, r: int) -> CosetLabel:
    """Label of the double coset S g P_{r,2n-r}."""
    _check_group_element(g, n, r)
    return classify_subspace(sp.column_span(g, r), n)


def classify_p(g: Matrix, n: int, r: int) -> int:
    """Label k of the coarser double coset P g P_{r,2n-r}."""
    _check_group_element(g, n, r)
    W = sp.column_span(g, r)
    return sp.intersect(W, _w0(n, g.field)).dim


# -- constructive side ----------------------------------------------------

def adapted_basis(W: Subspace, n: int) -> list:
    """Basis v_1..v_2n of F^{2n} adapted to W and (W0, j0).

    (a) v_1..v_n span W0 and v_{n+1}..v_2n project to a basis of F^n,
    (b) v_1..v_k, v_{n+1}..v_{n+l}, v_{n+k+1}..v_{n+r-l} is a basis of W,
    (c) v_{n+i} ≡ j0(v_i) mod W0.
    The matrix with these columns lies in S and maps W_{k,l} onto W.
    """
    return _adapted(W, n)[0]


def _adapted(W: Subspace, n: int):
    if W.ambient != 2 * n:
        raise DimensionError(f"ambient {W.ambient} is not 2n for n={n}")
    field = W.field
    r = W.dim
    W0 = _w0(n, field)
    K = sp.intersect(W, W0)
    k = K.dim
    jK = sp.span([v[:n] for v in K.basis], n, field)
    projW = sp.project_last(W, n)
    I = sp.intersect(jK, projW)
    l = I.dim
    zeros = (0,) * n

    v = [None] * (2 * n)
    # second-half vectors inside W: a basis of I, then a completion to proj(W)
    for i, y in enumerate(I.basis):
        v[n + i] = sp.lift(W, y, n)
    rest = sp.extend_basis(I.basis, projW)
    assert len(rest) == r - k - l
    for i, y in enumerate(rest):
        v[n + k + i] = sp.lift(W, y, n)

    # first half: pull back through j0, complete inside W ∩ W0, then inside W0
    for i in range(l):
        v[i] = tuple(v[n + i][n:]) + zeros
    for i, u in enumerate(sp.extend_basis(v[:l], K)):
        v[l + i] = u
    for i in range(r - k - l):
        v[k + i] = tuple(v[n + k + i][n:]) + zeros
    for i, u in enumerate(sp.extend_basis(v[:r - l], W0)):
        v[r - l + i] = u

    # remaining second-half slots: the plain lift of j0(v_i)
    for i in list(range(l, k)) + list(range(r - l, n)):
        v[n + i] = zeros + tuple(v[i][:n])
    return v, k, l


def check_adapted_basis(vectors: Sequence[Sequence[int]], W: Subspace, n: int) -> bool:
    """Predicates (a), (b), (c) for a candidate adapted basis."""
    field = W.field
    k, l = invariants(W, n)
    r = W.dim
    if len(vectors) != 2 * n:
        return False
    W0 = _w0(n, field)
    first = vectors[:n]
    if sp.span(first, 2 * n, field) != W0 or not sp.independent(first, 2 * n, field):
        return False
    if sp.span([u[n:] for u in vectors[n:]], n, field).dim != n:
        return False
    chosen = list(vectors[:k]) + list(vectors[n:n + l]) + list(vectors[n + k:n + r - l])
    if len(chosen) != r or not sp.independent(chosen, 2 * n, field) or sp.span(chosen, 2 * n, field) != W:
        return False
    return all(tuple(vectors[n + i][n:]) == tuple(vectors[i][:n]) for i in range(n))


@dataclass(frozen=True)
class Decomposition:
    s: Matrix
    w: Matrix
    p: Matrix
    label: CosetLabel

    def product(self) -> Matrix:
        return self.s @ self.w @ self.p

    def to_json(self) -> dict:
        return {"label": self.label.to_json(), "s": self.s.to_json(), "w": self.w.to_json(), "p": self.p.to_json()}


def decompose(g: Matrix, n: int, r: int) -> Decomposition:
    """Factor g = s · w_{k,l} · p with s in S and p in P_{r,2n-r}."""
    _check_group_element(g, n, r)
    W = sp.column_span(g, r)
    vectors, k, l = _adapted(W, n)
    label = CosetLabel(k, l, n, r)
    s = Matrix.from_columns(vectors, g.field)
    w = representative(label, g.field)
    p = w.T @ inverse(s) @ g
    d = Decomposition(s, w, p, label)
    if not is_in_shalika(s, n):
        raise DecompositionError("Shalika factor failed membership check")
    if not is_in_parabolic(p, r):
        raise DecompositionError("parabolic factor failed membership check")
    if d.product() != g:
        raise DecompositionError("s·w·p does not reproduce g")
    return d


# -- the homogeneous space X = {(W, j)} ------------------------------------

def _complement(W: Subspace) -> list:
    piv = set(W.pivots)
    return [c for c in range(W.ambient) if c not in piv]


def _quotient_coords(W: Subspace, u: Sequence[int]) -> tuple:
    """Coordinates of u + W in the basis {e_c + W : c non-pivot}."""
    red = W.reduce(u)
    return tuple(red[c] for c in _complement(W))


@dataclass(frozen=True)
class XPoint:
    """A pair (W, j): W of dimension n in F^{2n}, j : W -> V/W an isomorphism.

    ``j`` is the n x n matrix whose column i holds the coordinates of
    j(b_i), b_i the i-th canonical basis vector of W, in the basis
    {e_c + W : c a non-pivot column of W} of V/W. For W0 this basis is
    e_{n+1}+W0, ..., e_2n+W0 and j0 is the identity.
    """

    W: Subspace
    j: Matrix

    def __post_init__(self):
        n = self.j.rows
        if self.W.ambient != 2 * n or self.W.dim != n:
            raise DimensionError("W must be an n-dimensional subspace of F^{2n}")
        if self.j.field.p != self.W.p:
            raise ValueError("field mismatch between W and j")
        if not self.j.is_invertible():
            raise SingularMatrixError("j must be an isomorphism")

    @property
    def n(self) -> int:
        return self.j.rows

    def lifts(self) -> list:
        """Vectors u_i in V with u_i + W = j(b_i)."""
        comp = _complement(self.W)
        m = self.W.ambient
        out = []
        for i in range(self.n):
            u = [0] * m
            for t, c in enumerate(comp):
                u[c] = self.j[t, i]
            out.append(tuple(u))
        return out

    def frame(self) -> Matrix:
        """Columns b_1..b_n followed by the lifts of j(b_1)..j(b_n)."""
        return Matrix.from_columns(list(self.W.basis) + self.lifts(), self.W.field)


def base_point(n: int, field: PrimeField | int = 2) -> XPoint:
    field = _field(field)
    return XPoint(_w0(n, field), Matrix.identity(n, field))


def act_x(g: Matrix, x: XPoint) -> XPoint:
    """g·(W, j) = (g(W), ḡ ∘ j ∘ g^{-1})."""
    W2 = sp.apply(g, x.W)
    ginv = inverse(g)
    lifts = x.lifts()
    cols = []
    for b in W2.basis:
        c = x.W.coordinates(ginv.apply(b))
        u = [0] * W2.ambient
        for ci, li in zip(c, lifts):
            if ci:
                u = [(a + ci * y) % g.p for a, y in zip(u, li)]
        cols.append(_quotient_coords(W2, g.apply(u)))
    return XPoint(W2, Matrix.from_columns(cols, g.field, rows=x.n))


def transport_x(a: XPoint, b: XPoint) -> Matrix:
    """Some g in GL_2n with g·a = b."""
    if a.n != b.n or a.W.p != b.W.p:
        raise DimensionError("points live in different spaces")
    return b.frame() @ inverse(a.frame())
