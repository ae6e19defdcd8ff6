"""Brute-force double cosets of small GL_2n(F_p) by generator closure.

Nothing here uses the closed-form count, the representatives or the
classifier while building the partition; ``certify`` compares against them
afterwards.

Group elements are handled as integer codes: the m x m residues read
row-major as base-p digits, most significant first. A flat label array
indexed by code doubles as the visited set, so the largest supported case,
GL_4(F_3), needs a 3^16-entry array (about 86 MB as int16).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from typing import Iterator

import numpy as np

from . import cosets
from . import subspace as sp
from .gf import GF
from .linalg import Matrix

ALLOWED = {(2, 2), (2, 3), (2, 5), (4, 2), (4, 3)}
EXPENSIVE = {(4, 3)}
CHUNK = 1 << 18
# certify calls the exact classifier per element up to this group order
DIRECT_CLASSIFY_LIMIT = 50_000


class SizeLimitError(ValueError):
    pass


def check_size(dim: int, p: int, expensive: bool = False):
    if (dim, p) not in ALLOWED:
        raise SizeLimitError(f"(2n, p) = ({dim}, {p}) is outside the enumerable range {sorted(ALLOWED)}")
    if (dim, p) in EXPENSIVE and not expensive:
        raise SizeLimitError(f"(2n, p) = ({dim}, {p}) needs the expensive flag")


def gl_order(m: int, p: int) -> int:
    out = 1
    for i in range(m):
        out *= p ** m - p ** i
    return out


# -- codes ----------------------------------------------------------------

def _powers(m: int, p: int) -> np.ndarray:
    return p ** np.arange(m * m - 1, -1, -1, dtype=np.int64)


def encode(mats: np.ndarray, p: int) -> np.ndarray:
    m = mats.shape[-1]
    return mats.reshape(len(mats), m * m).astype(np.int64) @ _powers(m, p)


def decode(codes: np.ndarray, m: int, p: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    digits = (codes[:, None] // _powers(m, p)[None, :]) % p
    return digits.reshape(len(codes), m, m).astype(np.int32)


def code_of(g: Matrix) -> int:
    return int(encode(np.array([g.data], dtype=np.int64), g.p)[0])


def matrix_of(code: int, m: int, p: int) -> Matrix:
    return Matrix.from_rows(decode(np.array([code]), m, p)[0].tolist(), p)


def invertible_mask(m: int, p: int) -> np.ndarray:
    """Boolean array over all p^(m^2) codes, True on GL_m(F_p)."""
    total = p ** (m * m)
    mask = np.zeros(total, dtype=bool)
    for start in range(0, total, CHUNK):
        codes = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
        # |det| stays far below 2^53 for the allowed sizes, so float det is exact after rounding
        det = np.rint(np.linalg.det(decode(codes, m, p).astype(np.float64))).astype(np.int64)
        mask[start:start + len(codes)] = det % p != 0
    return mask


def enumerate_group(dim: int, p: int, expensive: bool = False) -> Iterator[Matrix]:
    """Every element of GL_dim(F_p) once, in code order. dim is 2n."""
    check_size(dim, p, expensive)
    for code in np.flatnonzero(invertible_mask(dim, p)):
        yield matrix_of(int(code), dim, p)


# -- generators -----------------------------------------------------------

def _elem(m: int, entries) -> np.ndarray:
    g = np.eye(m, dtype=np.int32)
    for (i, j), c in entries:
        g[i, j] = c
    return g


def shalika_generators(n: int, p: int, variant: str = "standard") -> list:
    """Generators of S: ΔGL_n diagonally, and the unipotent x-block.

    ``variant="alt"`` uses every nonzero coefficient and scaling, a
    different generating set of the same group.
    """
    m = 2 * n
    root = GF(p).primitive_root()
    coeffs = [1] if variant == "standard" else list(range(1, p))
    scalings = [root] if variant == "standard" else list(range(2, p))
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                for c in coeffs:
                    gens.append(_elem(m, [((i, j), c), ((n + i, n + j), c)]))
    for i in range(n):
        for a in scalings:
            if a != 1:
                gens.append(_elem(m, [((i, i), a), ((n + i, n + i), a)]))
    for i in range(n):
        for j in range(n):
            for c in coeffs:
                gens.append(_elem(m, [((i, n + j), c)]))
    return gens


def parabolic_generators(m: int, r: int, p: int, variant: str = "standard") -> list:
    """Generators of P_{r,m-r}: Levi transvections and scalings, radical elementaries."""
    root = GF(p).primitive_root()
    coeffs = [1] if variant == "standard" else list(range(1, p))
    scalings = [root] if variant == "standard" else list(range(2, p))
    gens = []
    blocks = [range(r), range(r, m)]
    for blk in blocks:
        for i in blk:
            for j in blk:
                if i != j:
                    for c in coeffs:
                        gens.append(_elem(m, [((i, j), c)]))
    for i in range(m):
        for a in scalings:
            if a != 1:
                gens.append(_elem(m, [((i, i), a)]))
    for i in range(r):
        for j in range(r, m):
            for c in coeffs:
                gens.append(_elem(m, [((i, j), c)]))
    return gens


# -- partition ------------------------------------------------------------

@dataclass
class CosetPartition:
    """Classes of the (S, P_{r,2n-r}) partition, as sorted arrays of element codes."""

    n: int
    p: int
    r: int
    classes: list
    group_order: int
    labels: np.ndarray = dc_field(repr=False)  # class index per code, -1 off the group

    @property
    def sizes(self) -> list:
        return [len(c) for c in self.classes]

    def class_of(self, g: Matrix) -> int:
        return int(self.labels[code_of(g)])

    def canonical(self) -> frozenset:
        return frozenset(frozenset(c.tolist()) for c in self.classes)


def _close(labels: np.ndarray, seed: int, idx: int, left: list, right: list, m: int, p: int) -> int:
    labels[seed] = idx
    frontier = np.array([seed], dtype=np.int64)
    size = 1
    while len(frontier):
        found = []
        for start in range(0, len(frontier), CHUNK):
            mats = decode(frontier[start:start + CHUNK], m, p)
            for g in left:
                found.append(_mark(labels, encode(np.matmul(g, mats) % p, p), idx))
            for h in right:
                found.append(_mark(labels, encode(np.matmul(mats, h) % p, p), idx))
        frontier = np.concatenate(found)
        size += len(frontier)
    return size


def _mark(labels: np.ndarray, codes: np.ndarray, idx: int) -> np.ndarray:
    codes = np.unique(codes[labels[codes] == -1])
    labels[codes] = idx
    return codes


def double_coset_partition(n: int, p: int, r: int, *, expensive: bool = False, variant: str = "standard",
                           mask: np.ndarray | None = None) -> CosetPartition:
    """Exact partition of GL_2n(F_p) into (S, P_{r,2n-r}) double cosets."""
    m = 2 * n
    check_size(m, p, expensive)
    cosets.check_nr(n, r)
    if mask is None:
        mask = invertible_mask(m, p)
    labels = np.full(p ** (m * m), -1, dtype=np.int16)
    left = shalika_generators(n, p, variant)
    right = parabolic_generators(m, r, p, variant)
    order = int(mask.sum())
    covered = 0
    idx = 0
    pos = 0
    while covered < order:
        # seed: smallest unvisited invertible code
        while True:
            window = np.flatnonzero(mask[pos:pos + CHUNK] & (labels[pos:pos + CHUNK] == -1))
            if len(window):
                seed = pos + int(window[0])
                break
            pos += CHUNK
        covered += _close(labels, seed, idx, left, right, m, p)
        idx += 1
    if np.any(labels[~mask] != -1):
        raise AssertionError("closure left the group")
    classes = [np.flatnonzero(labels == c) for c in range(idx)]
    return CosetPartition(n, p, r, classes, order, labels)


# -- certification ---------------------------------------------------------

def _batched_column_spans(mats: np.ndarray, r: int, p: int) -> np.ndarray:
    """Codes of the RREF of the span of the first r columns, for full-rank inputs."""
    inv = np.array([0] + [GF(p).inv(a) for a in range(1, p)], dtype=np.int64)
    A = np.ascontiguousarray(mats[:, :, :r].transpose(0, 2, 1)).astype(np.int64) % p  # N x r x m
    N, _, m = A.shape
    cur = np.zeros(N, dtype=np.int64)
    ar = np.arange(N)
    for c in range(m):
        rows_idx = np.arange(r)[None, :]
        cand = (A[:, :, c] != 0) & (rows_idx >= cur[:, None])
        has = cand.any(axis=1) & (cur < r)
        if not has.any():
            continue
        piv = np.where(has, np.argmax(cand, axis=1), 0)
        b = ar[has]
        pr, cr = piv[has], cur[has]
        tmp = A[b, pr].copy()
        A[b, pr] = A[b, cr]
        A[b, cr] = tmp
        A[b, cr] = (A[b, cr] * inv[A[b, cr, c]][:, None]) % p
        prow = A[b, cr]
        for i in range(r):
            sel = cr != i
            bb = b[sel]
            f = A[bb, i, c]
            A[bb, i] = (A[bb, i] - f[:, None] * prow[sel]) % p
        cur[has] += 1
    if np.any(cur != r):
        raise ValueError("input columns are not independent")
    weights = p ** np.arange(r * m - 1, -1, -1, dtype=np.int64)
    return A.reshape(N, r * m) @ weights


def _subspace_from_code(code: int, r: int, m: int, p: int) -> sp.Subspace:
    weights = p ** np.arange(r * m - 1, -1, -1, dtype=np.int64)
    digits = (code // weights) % p
    return sp.span(digits.reshape(r, m).tolist(), m, p)


def element_labels(part: CosetPartition, codes: np.ndarray, direct: bool) -> list:
    """classify() for each element code, as (k, l) tuples."""
    n, p, r = part.n, part.p, part.r
    m = 2 * n
    if direct:
        return [cosets.classify(matrix_of(int(c), m, p), n, r).as_tuple() for c in codes]
    out = np.empty((len(codes), 2), dtype=np.int64)
    cache = {}
    for start in range(0, len(codes), CHUNK):
        chunk = codes[start:start + CHUNK]
        wcodes = _batched_column_spans(decode(chunk, m, p), r, p)
        uniq, inv = np.unique(wcodes, return_inverse=True)
        lab = []
        for u in uniq.tolist():
            if u not in cache:
                cache[u] = cosets.classify_subspace(_subspace_from_code(u, r, m, p), n).as_tuple()
            lab.append(cache[u])
        out[start:start + len(chunk)] = np.array(lab, dtype=np.int64)[inv.reshape(-1)]
    return [tuple(x) for x in out.tolist()]


def shalika_elements(n: int, p: int) -> np.ndarray:
    """All of S as an N x 2n x 2n array."""
    hs = decode(np.flatnonzero(invertible_mask(n, p)), n, p)
    xs = decode(np.arange(p ** (n * n)), n, p)
    m = 2 * n
    out = np.zeros((len(hs), len(xs), m, m), dtype=np.int32)
    out[:, :, :n, :n] = hs[:, None]
    out[:, :, n:, n:] = hs[:, None]
    out[:, :, :n, n:] = xs[None, :]
    return out.reshape(-1, m, m)


def parabolic_order(m: int, r: int, p: int) -> int:
    return gl_order(r, p) * gl_order(m - r, p) * p ** (r * (m - r))


def certify(n: int, p: int, r: int, *, expensive: bool = False, partition: CosetPartition | None = None) -> dict:
    """Check the partition against count, representatives, classify and orbit-stabilizer."""
    t0 = time.perf_counter()
    m = 2 * n
    part = partition or double_coset_partition(n, p, r, expensive=expensive)
    t_part = time.perf_counter() - t0
    labels_expected = cosets.kl_bounds(n, r)
    report = {
        "n": n, "p": p, "r": r,
        "group_order": part.group_order,
        "expected_group_order": gl_order(m, p),
        "num_classes": len(part.classes),
        "expected_count": cosets.count(n, r),
        "classes": [],
        "assertions": {},
        "witnesses": [],
    }

    # (i)
    report["assertions"]["class_count"] = len(part.classes) == report["expected_count"]
    report["assertions"]["partition"] = (sum(part.sizes) == part.group_order == gl_order(m, p))

    # (ii)
    hits = [[] for _ in part.classes]
    for lab in labels_expected:
        w = cosets.representative(lab, p)
        hits[part.class_of(w)].append(lab)
    one_each = all(len(h) == 1 for h in hits)
    report["assertions"]["one_representative_each"] = one_each
    if not one_each:
        bad = next(i for i, h in enumerate(hits) if len(h) != 1)
        report["witnesses"].append({"assertion": "one_representative_each", "class": bad,
                                    "element": matrix_of(int(part.classes[bad][0]), m, p).to_json(),
                                    "representatives": [lab.to_json() for lab in hits[bad]]})

    # (iii)
    direct = part.group_order <= DIRECT_CLASSIFY_LIMIT
    class_labels = []
    constant = True
    for i, cls in enumerate(part.classes):
        labs = element_labels(part, cls, direct)
        distinct = set(labs)
        if len(distinct) != 1:
            constant = False
            odd = next(j for j, x in enumerate(labs) if x != labs[0])
            report["witnesses"].append({"assertion": "classify_constant", "class": i,
                                        "element": matrix_of(int(cls[odd]), m, p).to_json(),
                                        "labels": [list(labs[0]), list(labs[odd])]})
        class_labels.append(labs[0])
    distinct_across = len(set(class_labels)) == len(class_labels)
    report["assertions"]["classify_constant"] = constant
    report["assertions"]["classify_distinct"] = distinct_across

    # (iv) |S w P| = |S| |P| / |S ∩ w P w^{-1}|
    S = shalika_elements(n, p)
    order_S = len(S)
    order_P = parabolic_order(m, r, p)
    orbit_ok = True
    for i, cls in enumerate(part.classes):
        w_code = int(cls[0])
        rep = hits[i][0] if len(hits[i]) == 1 else None
        w = cosets.representative(rep, p) if rep is not None else matrix_of(w_code, m, p)
        wn = np.array(w.data, dtype=np.int64)
        winv = np.array(w.inverse().data, dtype=np.int64)
        conj = np.matmul(np.matmul(winv, S), wn) % p
        stab = int(np.count_nonzero(~conj[:, r:, :r].any(axis=(1, 2))))
        expected = order_S * order_P // stab
        ok = expected == len(cls)
        orbit_ok &= ok
        report["classes"].append({
            "size": len(cls),
            "label": {"k": class_labels[i][0], "l": class_labels[i][1]},
            "representative": w.to_json() if rep is not None else None,
            "representative_label": rep.to_json() if rep is not None else None,
            "stabilizer_order": stab,
            "orbit_stabilizer_size": expected,
        })
        if not ok:
            report["witnesses"].append({"assertion": "orbit_stabilizer", "class": i, "element": w.to_json(),
                                        "size": len(cls), "predicted": expected})
    report["assertions"]["orbit_stabilizer"] = orbit_ok
    report["shalika_order"] = order_S
    report["parabolic_order"] = order_P
    report["ok"] = all(report["assertions"].values())
    report["seconds"] = {"partition": round(t_part, 3), "total": round(time.perf_counter() - t0, 3)}
    return report
